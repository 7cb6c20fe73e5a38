#pragma once
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "louvainsplit/io.hpp"
#include "louvainsplit/louvain.hpp"
#include "louvainsplit/quality.hpp"
#include "louvainsplit/report.hpp"

namespace louvainsplit {

/// Input format selector; Auto picks by file extension (.mtx vs everything
/// else as edgelist only for common edgelist suffixes, defaulting to mtx).
enum class InputFormat { Auto, MatrixMarket, EdgeList };

inline InputFormat inputFormatFromString(const std::string& s) {
  if (s == "auto") return InputFormat::Auto;
  if (s == "mtx") return InputFormat::MatrixMarket;
  if (s == "edgelist") return InputFormat::EdgeList;
  throw std::invalid_argument("unknown format '" + s + "' (expected mtx or edgelist)");
}

namespace detail {

inline bool endsWith(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

/// Peeks at the first data line of an edgelist to decide whether a third
/// column of weights is present.
inline bool edgeListLooksWeighted(const std::string& path) {
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line)) {
    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    std::istringstream tokens(line);
    std::string tok;
    int count = 0;
    while (tokens >> tok) ++count;
    return count >= 3;
  }
  return false;
}

}  // namespace detail

inline Graph loadGraph(const std::string& path, InputFormat format) {
  if (format == InputFormat::Auto) {
    const bool edgelist = detail::endsWith(path, ".el") || detail::endsWith(path, ".edges") ||
                          detail::endsWith(path, ".edgelist") || detail::endsWith(path, ".txt");
    format = edgelist ? InputFormat::EdgeList : InputFormat::MatrixMarket;
  }
  if (format == InputFormat::MatrixMarket) return loadMatrixMarket(path);
  return loadEdgeList(path, detail::edgeListLooksWeighted(path));
}

struct DetectOptions {
  std::string input;
  InputFormat format = InputFormat::Auto;
  LouvainParams params;
  std::string output;       // membership file; empty = do not write
  std::string report_path;  // JSON report; empty = do not write
};

/// Runs detection on a graph file, writes the membership and JSON report,
/// and prints a one-line summary. Returns 0 on success.
inline int cmdDetect(const DetectOptions& opt, std::ostream& out = std::cout,
                     std::ostream& err = std::cerr) {
  try {
    Graph g = loadGraph(opt.input, opt.format);
    DetectionResult result = louvain(g, opt.params);
    if (!opt.output.empty()) writeMembership(opt.output, result.membership);
    if (!opt.report_path.empty()) {
      std::ofstream rf(opt.report_path);
      if (!rf) throw FormatError(opt.report_path + ": cannot open file for writing");
      rf << toJson(result.report).dump(2) << '\n';
    }
    const DetectionReport& r = result.report;
    char q[32];
    if (std::isnan(r.modularity)) std::snprintf(q, sizeof(q), "undefined");
    else std::snprintf(q, sizeof(q), "%.6f", r.modularity);
    out << opt.input << ": Q=" << q << " communities=" << r.num_communities
        << " passes=" << r.passes << " disconnected=" << r.disconnected_fraction
        << " time=" << r.total_runtime_s << "s workers=" << r.workers
        << " split=" << toString(r.params.split) << '\n';
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

struct CheckOptions {
  std::string input;
  InputFormat format = InputFormat::Auto;
  std::string membership;
  std::optional<SplitTechnique> split;  // also write a split membership
  std::string output;                   // split membership path (with split)
  int workers = 0;
};

/// Verifies an external membership file against a graph: reports which
/// communities are internally disconnected and, with a split technique,
/// writes the split membership. Returns 0 on success.
inline int cmdCheck(const CheckOptions& opt, std::ostream& out = std::cout,
                    std::ostream& err = std::cerr) {
  try {
    Graph g = loadGraph(opt.input, opt.format);
    Membership membership = readMembership(opt.membership);
    validateMembership(g, membership);
    std::vector<VertexId> sizes = communitySizes(g, membership, opt.workers);
    std::size_t num_communities = 0;
    for (VertexId s : sizes) num_communities += s > 0 ? 1 : 0;
    DisconnectedFlags flags = disconnectedCommunities(g, membership, opt.workers);

    constexpr std::size_t kMaxListed = 20;
    std::size_t flagged = 0;
    for (CommunityId c = 0; c < flags.flags.size(); ++c) {
      if (!flags.flags[c]) continue;
      if (flagged < kMaxListed)
        out << "community " << c << ": disconnected (" << sizes[c] << " vertices)\n";
      ++flagged;
    }
    if (flagged > kMaxListed) out << "... and " << (flagged - kMaxListed) << " more\n";
    const double fraction = disconnectedFraction(flags, num_communities);
    out << "communities=" << num_communities << " disconnected=" << flagged
        << " fraction=" << fraction << '\n';

    if (opt.split.has_value()) {
      Membership split = splitDisconnected(g, membership, *opt.split, opt.workers);
      auto [renumbered, count] = renumberCommunities(split);
      if (!opt.output.empty()) writeMembership(opt.output, renumbered);
      out << "split with " << toString(*opt.split) << ": communities=" << count << '\n';
    }
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

struct BenchOptions {
  std::string input;
  InputFormat format = InputFormat::Auto;
  LouvainParams params;       // workers field is ignored; threads drive it
  std::vector<int> threads;   // one detection per entry
  int repeat = 1;             // measured runs averaged per thread count
  std::string output;         // CSV path; empty = stdout
};

/**
 * Benchmarks detection across worker counts. Per thread count, runs one
 * discarded warm-up plus `repeat` measured runs and emits an averaged CSV
 * row of the total runtime, the four phase buckets, modularity, and the
 * disconnected fraction. Returns 0 on success.
 */
inline int cmdBench(const BenchOptions& opt, std::ostream& out = std::cout,
                    std::ostream& err = std::cerr) {
  try {
    if (opt.threads.empty()) throw std::invalid_argument("no thread counts given");
    for (int t : opt.threads)
      if (t < 1) throw std::invalid_argument("thread counts must be >= 1");
    if (opt.repeat < 1) throw std::invalid_argument("repeat must be >= 1");

    Graph g = loadGraph(opt.input, opt.format);
    std::ofstream file;
    if (!opt.output.empty()) {
      file.open(opt.output);
      if (!file) throw FormatError(opt.output + ": cannot open file for writing");
    }
    std::ostream& csv = opt.output.empty() ? out : file;
    csv << kBenchCsvHeader << '\n';

    for (int t : opt.threads) {
      LouvainParams params = opt.params;
      params.workers = t;
      louvain(g, params);  // warm-up, discarded
      double total = 0, moving = 0, splitting = 0, aggregation = 0, other = 0;
      double q = 0, disconnected = 0;
      for (int r = 0; r < opt.repeat; ++r) {
        DetectionResult result = louvain(g, params);
        PhaseTotals phases = phaseTotals(result.report);
        total += result.report.total_runtime_s;
        moving += phases.local_moving_s;
        splitting += phases.splitting_s;
        aggregation += phases.aggregation_s;
        other += phases.other_s;
        q += result.report.modularity;
        disconnected += result.report.disconnected_fraction;
      }
      const double k = opt.repeat;
      char row[256];
      std::snprintf(row, sizeof(row), "%d,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6g", t, total / k,
                    moving / k, splitting / k, aggregation / k, other / k, q / k,
                    disconnected / k);
      csv << row << '\n';
    }
    return 0;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace louvainsplit
