#include <string>
#include <vector>

#include <CLI11.hpp>

#include "louvainsplit/commands.hpp"

namespace {

void addParamFlags(CLI::App& cmd, louvainsplit::LouvainParams& params, std::string& split) {
  cmd.add_option("--tolerance", params.tolerance,
                 "Per-iteration total delta-modularity convergence threshold")
      ->capture_default_str();
  cmd.add_option("--tolerance-drop", params.tolerance_drop,
                 "Divisor applied to the tolerance after each pass")
      ->capture_default_str();
  cmd.add_option("--agg-tolerance", params.aggregation_tolerance,
                 "Stop when communities/vertices exceeds this ratio after a pass")
      ->capture_default_str();
  cmd.add_option("--max-passes", params.max_passes, "Maximum number of passes")
      ->capture_default_str();
  cmd.add_option("--max-iterations", params.max_iterations,
                 "Maximum local-moving iterations per pass")
      ->capture_default_str();
  cmd.add_option("--split", split,
                 "Disconnected-community splitting: none, last-lp, last-lpp, last-bfs, "
                 "pass-lp, pass-lpp, pass-bfs")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  using namespace louvainsplit;

  CLI::App app{"Parallel Louvain community detection with splitting of "
               "internally-disconnected communities"};
  app.require_subcommand(1);

  // detect
  DetectOptions detect;
  std::string detect_format = "auto", detect_split = "none";
  CLI::App* cmd_detect = app.add_subcommand("detect", "Detect communities in a graph");
  cmd_detect->add_option("-i,--input", detect.input, "Input graph file")->required();
  cmd_detect->add_option("--format", detect_format, "Input format: mtx, edgelist, auto")
      ->check(CLI::IsMember({"auto", "mtx", "edgelist"}))
      ->capture_default_str();
  cmd_detect->add_option("--threads", detect.params.workers,
                         "Worker count (default: all hardware threads)");
  addParamFlags(*cmd_detect, detect.params, detect_split);
  cmd_detect->add_option("-o,--output", detect.output, "Write the membership to this file");
  cmd_detect->add_option("--report", detect.report_path, "Write a JSON report to this file");

  // check
  CheckOptions check;
  std::string check_format = "auto", check_split;
  CLI::App* cmd_check =
      app.add_subcommand("check", "Check a membership file for disconnected communities");
  cmd_check->add_option("-i,--input", check.input, "Input graph file")->required();
  cmd_check->add_option("--format", check_format, "Input format: mtx, edgelist, auto")
      ->check(CLI::IsMember({"auto", "mtx", "edgelist"}))
      ->capture_default_str();
  cmd_check->add_option("-m,--membership", check.membership,
                        "Membership file (one label per line)")
      ->required();
  cmd_check->add_option("--split", check_split, "Also split disconnected communities: lp, lpp, bfs")
      ->check(CLI::IsMember({"lp", "lpp", "bfs"}));
  cmd_check->add_option("-o,--output", check.output, "Write the split membership to this file");
  cmd_check->add_option("--threads", check.workers, "Worker count");

  // bench
  BenchOptions bench;
  std::string bench_format = "auto", bench_split = "pass-bfs";
  CLI::App* cmd_bench = app.add_subcommand("bench", "Benchmark detection across worker counts");
  cmd_bench->add_option("-i,--input", bench.input, "Input graph file")->required();
  cmd_bench->add_option("--format", bench_format, "Input format: mtx, edgelist, auto")
      ->check(CLI::IsMember({"auto", "mtx", "edgelist"}))
      ->capture_default_str();
  cmd_bench->add_option("--threads", bench.threads, "Comma-separated worker counts, e.g. 1,2,4")
      ->required()
      ->delimiter(',');
  cmd_bench->add_option("--repeat", bench.repeat, "Measured runs to average per worker count")
      ->capture_default_str();
  addParamFlags(*cmd_bench, bench.params, bench_split);
  cmd_bench->add_option("-o,--output", bench.output, "Write the CSV here instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_detect->parsed()) {
      detect.format = inputFormatFromString(detect_format);
      detect.params.split = splitConfigFromString(detect_split);
      return cmdDetect(detect);
    }
    if (cmd_check->parsed()) {
      check.format = inputFormatFromString(check_format);
      if (!check_split.empty()) check.split = splitTechniqueFromString(check_split);
      return cmdCheck(check);
    }
    bench.format = inputFormatFromString(bench_format);
    bench.params.split = splitConfigFromString(bench_split);
    return cmdBench(bench);
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  }
}
