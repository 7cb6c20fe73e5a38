// Acceptance suite: one test per release criterion, each printing a
// [criterion N] PASS/FAIL line with the measured numbers. Run directly or
// through ctest (test_acceptance).
#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "louvainsplit/commands.hpp"
#include "louvainsplit/io.hpp"
#include "louvainsplit/louvain.hpp"
#include "louvainsplit/quality.hpp"
#include "louvainsplit/report.hpp"
#include "louvainsplit/split.hpp"
#include "testutil.hpp"

using namespace louvainsplit;

namespace {

struct CorpusEntry {
  std::string name;
  Graph graph;
};

// Desk-scale corpus: three small real networks plus synthetic random,
// planted-partition, and road-like graphs, the largest above one million
// edges.
const std::vector<CorpusEntry>& corpus() {
  static const std::vector<CorpusEntry> graphs = [] {
    std::vector<CorpusEntry> c;
    const std::string data = TEST_DATA_DIR;
    c.push_back({"karate", loadMatrixMarket(data + "/karate.mtx")});
    c.push_back({"davis", loadMatrixMarket(data + "/davis.mtx")});
    c.push_back({"lesmis", loadMatrixMarket(data + "/lesmis.mtx")});
    c.push_back({"grid60", testutil::makeGrid(60, 60)});
    c.push_back({"cliques40x8", testutil::makeRingOfCliques(40, 8)});
    c.push_back({"random500", testutil::makeRandomGraph(500, 8.0, 1001)});
    c.push_back({"planted1k", testutil::makePlantedPartition(1000, 20, 12.0, 3.0, 1002)});
    c.push_back({"random20k", testutil::makeRandomGraph(20000, 10.0, 1003)});
    c.push_back({"planted50k", testutil::makePlantedPartition(50000, 100, 14.0, 2.0, 1004)});
    c.push_back({"planted120k", testutil::makePlantedPartition(120000, 150, 15.0, 3.0, 1005)});
    return c;
  }();
  return graphs;
}

const Graph& scalingGraph() { return corpus().back().graph; }

double elapsedSince(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const std::vector<SplitConfig>& allSplitModes() {
  static const std::vector<SplitConfig> modes = {
      {SplitTechnique::Bfs, SplitMode::SplitPass}, {SplitTechnique::Lp, SplitMode::SplitPass},
      {SplitTechnique::Lpp, SplitMode::SplitPass}, {SplitTechnique::Bfs, SplitMode::SplitLast},
      {SplitTechnique::Lp, SplitMode::SplitLast},  {SplitTechnique::Lpp, SplitMode::SplitLast}};
  return modes;
}

class Acceptance : public ::testing::Test {
 protected:
  void describe(int id, std::string what) {
    id_ = id;
    what_ = std::move(what);
  }
  void note(const std::string& text) { notes_ += " " + text; }
  void TearDown() override {
    std::printf("[criterion %d] %s — %s%s\n", id_, HasFailure() ? "FAIL" : "PASS", what_.c_str(),
                notes_.c_str());
    std::fflush(stdout);
  }

 private:
  int id_ = 0;
  std::string what_;
  std::string notes_;
};

}  // namespace

TEST_F(Acceptance, C1_ZeroDisconnectionAcrossAllSplitModes) {
  describe(1, "all six split modes leave no internally-disconnected community");
  const auto t0 = std::chrono::steady_clock::now();
  int runs = 0;
  for (const CorpusEntry& entry : corpus()) {
    for (const SplitConfig& split : allSplitModes()) {
      LouvainParams params;
      params.split = split;
      params.workers = 4;
      DetectionResult result = louvain(entry.graph, params);
      ++runs;
      EXPECT_EQ(result.report.disconnected_fraction, 0.0)
          << entry.name << " " << toString(split);
      // Independent verifications: the shared-flag BFS detector and a
      // sequential union-find component checker.
      DisconnectedFlags flags = disconnectedCommunities(entry.graph, result.membership);
      for (std::uint8_t f : flags.flags)
        ASSERT_EQ(f, 0) << entry.name << " " << toString(split);
      for (bool f : testutil::disconnectedOracle(entry.graph, result.membership))
        ASSERT_FALSE(f) << entry.name << " " << toString(split);
    }
  }
  const double elapsed = elapsedSince(t0);
  EXPECT_LT(elapsed, 120.0);
  note("(" + std::to_string(runs) + " runs in " + std::to_string(elapsed) + "s)");
}

TEST_F(Acceptance, C2_QualityMathMatchesOracles) {
  describe(2, "modularity and delta-modularity match pairwise-definition oracles within 1e-9");
  const auto t0 = std::chrono::steady_clock::now();
  int graphs = 0, moves = 0;
  for (std::uint64_t seed = 1; seed <= 500; ++seed) {
    const VertexId n = 2 + static_cast<VertexId>(seed % 63);
    Graph g = testutil::makeRandomGraph(n, 5.0, seed, /*random_weights=*/true);
    Membership m = testutil::makeRandomMembership(n, std::max<VertexId>(1, n / 2), seed * 31 + 7);
    ++graphs;
    ASSERT_NEAR(modularity(g, m), testutil::pairwiseModularityOracle(g, m), 1e-9)
        << "seed " << seed;

    const Weight two_m = g.totalWeight();
    std::vector<Weight> k = vertexWeights(g);
    std::vector<Weight> sigma(n, 0.0);
    std::vector<std::uint8_t> present(n, 0);
    for (VertexId i = 0; i < n; ++i) {
      sigma[m[i]] += k[i];
      present[m[i]] = 1;
    }
    const double q_before = testutil::pairwiseModularityOracle(g, m);
    for (VertexId i = 0; i < n; ++i) {
      const CommunityId d = m[i];
      for (CommunityId c = 0; c < n; ++c) {
        if (!present[c] || c == d) continue;
        Weight k_to_c = 0.0, k_to_d = 0.0;
        g.forEachArc(i, [&](VertexId j, Weight w) {
          if (j == i) return;
          if (m[j] == c) k_to_c += w;
          if (m[j] == d) k_to_d += w;
        });
        const double predicted =
            deltaModularity(k_to_c, k_to_d, k[i], sigma[c], sigma[d], two_m / 2.0);
        Membership moved = m;
        moved[i] = c;
        const double actual = testutil::pairwiseModularityOracle(g, moved) - q_before;
        ++moves;
        ASSERT_NEAR(predicted, actual, 1e-9) << "seed " << seed << " move " << i << "->" << c;
      }
    }
  }
  const double elapsed = elapsedSince(t0);
  EXPECT_LT(elapsed, 60.0);
  note("(" + std::to_string(graphs) + " graphs, " + std::to_string(moves) + " moves in " +
       std::to_string(elapsed) + "s)");
}

TEST_F(Acceptance, C3_SplitTechniqueEquivalence) {
  describe(3, "LP = LPP = BFS = brute-force components on 1000 random instances");
  const auto t0 = std::chrono::steady_clock::now();
  for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
    const VertexId n = 2 + static_cast<VertexId>((seed * 13) % 129);
    Graph g = testutil::makeRandomGraph(n, 3.5, seed + 40000);
    Membership m =
        testutil::makeRandomMembership(n, std::max<VertexId>(1, n / 4), seed * 7 + 3);
    const Membership expected = testutil::componentsPerCommunityOracle(g, m);
    ASSERT_EQ(canonicalizePartition(splitDisconnectedLp(g, m, false)), expected)
        << "LP seed " << seed;
    ASSERT_EQ(canonicalizePartition(splitDisconnectedLp(g, m, true)), expected)
        << "LPP seed " << seed;
    ASSERT_EQ(canonicalizePartition(splitDisconnectedBfs(g, m)), expected)
        << "BFS seed " << seed;
  }
  const double elapsed = elapsedSince(t0);
  EXPECT_LT(elapsed, 60.0);
  note("(1000 instances in " + std::to_string(elapsed) + "s)");
}

TEST_F(Acceptance, C4_SplitPassModularityParity) {
  describe(4, "Q(SP-BFS) >= Q(SL-BFS) - 0.005 and |Q(SP-BFS) - Q(none)| <= 0.01 on >= 8/10");
  auto run = [](const Graph& g, const char* split) {
    LouvainParams params;
    params.split = splitConfigFromString(split);
    params.workers = 1;
    return louvain(g, params).report.modularity;
  };
  int satisfied = 0;
  std::string detail;
  for (const CorpusEntry& entry : corpus()) {
    const double q_sp = run(entry.graph, "pass-bfs");
    const double q_sl = run(entry.graph, "last-bfs");
    const double q_none = run(entry.graph, "none");
    const bool ok = q_sp >= q_sl - 0.005 && std::abs(q_sp - q_none) <= 0.01;
    satisfied += ok ? 1 : 0;
    if (!ok) {
      char buf[160];
      std::snprintf(buf, sizeof(buf), " [%s sp=%.4f sl=%.4f none=%.4f]", entry.name.c_str(),
                    q_sp, q_sl, q_none);
      detail += buf;
    }
  }
  EXPECT_GE(satisfied, 8) << detail;
  note("(" + std::to_string(satisfied) + "/10 graphs satisfied" + detail + ")");
}

TEST_F(Acceptance, C5_SplitPassRuntimeOverheadBound) {
  describe(5, "SP-BFS runtime <= 2.0x no-split on corpus graphs with >= 100k edges");
  auto timeConfig = [](const Graph& g, const char* split) {
    LouvainParams params;
    params.split = splitConfigFromString(split);
    params.workers = 1;
    double best = std::numeric_limits<double>::infinity();
    for (int rep = 0; rep < 2; ++rep)
      best = std::min(best, louvain(g, params).report.total_runtime_s);
    return best;
  };
  int measured = 0;
  for (const CorpusEntry& entry : corpus()) {
    if (entry.graph.numArcs() / 2 < 100000) continue;
    ++measured;
    const double t_sp = timeConfig(entry.graph, "pass-bfs");
    const double t_none = timeConfig(entry.graph, "none");
    EXPECT_LE(t_sp, 2.0 * t_none) << entry.name;
    char buf[120];
    std::snprintf(buf, sizeof(buf), "(%s %.2fx)", entry.name.c_str(), t_sp / t_none);
    note(buf);
  }
  ASSERT_GE(measured, 1);
}

TEST_F(Acceptance, C6_MonotonePerPassModularity) {
  describe(6, "per-pass modularity non-decreasing: exact at 1 worker, 1e-6 slack at 8");
  for (const CorpusEntry& entry : corpus()) {
    for (const char* split : {"none", "pass-bfs"}) {
      LouvainParams params;
      params.split = splitConfigFromString(split);
      params.workers = 1;
      DetectionReport report = louvain(entry.graph, params).report;
      for (std::size_t p = 1; p < report.pass_stats.size(); ++p)
        ASSERT_GE(report.pass_stats[p].modularity, report.pass_stats[p - 1].modularity)
            << entry.name << " " << split << " pass " << p << " (1 worker, exact)";
    }
    LouvainParams params;
    params.split = splitConfigFromString("pass-bfs");
    params.workers = 8;
    DetectionReport report = louvain(entry.graph, params).report;
    for (std::size_t p = 1; p < report.pass_stats.size(); ++p)
      ASSERT_GE(report.pass_stats[p].modularity, report.pass_stats[p - 1].modularity - 1e-6)
          << entry.name << " pass " << p << " (8 workers)";
  }
}

TEST_F(Acceptance, C7_AggregationInvariance) {
  describe(7, "aggregation preserves total weight and folded modularity within 1e-9");
  for (const CorpusEntry& entry : corpus()) {
    if (entry.graph.numArcs() / 2 > 200000) continue;  // manual pass loop on the smaller graphs
    for (int workers : {1, 4}) {
      const Graph* current = &entry.graph;
      Graph owned;
      Membership top(entry.graph.numVertices());
      std::iota(top.begin(), top.end(), 0);
      for (int pass = 0; pass < 10; ++pass) {
        const VertexId nv = current->numVertices();
        std::vector<Weight> k = vertexWeights(*current, workers);
        std::vector<Weight> sigma = k;
        Membership local(nv);
        std::iota(local.begin(), local.end(), 0);
        const int iterations = louvainMove(*current, local, k, sigma, 1e-2, 20, workers);
        auto [renumbered, count] = renumberCommunities(local);
        top = lookupDendrogram(top, renumbered);
        Graph super = louvainAggregate(*current, renumbered, workers);

        if (workers == 1) {
          ASSERT_EQ(super.totalWeight(), current->totalWeight())
              << entry.name << " pass " << pass << " (exact at 1 worker)";
        } else {
          ASSERT_NEAR(super.totalWeight(), current->totalWeight(),
                      1e-9 * current->totalWeight())
              << entry.name << " pass " << pass;
        }
        Membership singletons(super.numVertices());
        std::iota(singletons.begin(), singletons.end(), 0);
        ASSERT_NEAR(modularity(super, singletons), modularity(entry.graph, top), 1e-9)
            << entry.name << " pass " << pass;

        if (iterations <= 1 || count == nv) break;
        owned = std::move(super);
        current = &owned;
      }
    }
  }
}

TEST_F(Acceptance, C8_StrongScalingSmoke) {
  describe(8, "4-worker runtime <= 0.67x 1-worker on a >= 1M edge graph; CSV buckets sum to 5%");
  const Graph& g = scalingGraph();
  ASSERT_GE(g.numArcs() / 2, 1000000u);

  const std::string input = testing::TempDir() + "acceptance_scaling.el";
  writeEdgeList(input, g);
  BenchOptions bench;
  bench.input = input;
  bench.format = InputFormat::EdgeList;
  bench.threads = {1, 4};
  bench.repeat = 3;
  bench.params.split = splitConfigFromString("pass-bfs");
  std::ostringstream csv, err;
  ASSERT_EQ(cmdBench(bench, csv, err), 0) << err.str();

  std::istringstream lines(csv.str());
  std::string line;
  std::getline(lines, line);  // header
  double totals[2] = {0, 0};
  int row = 0;
  while (std::getline(lines, line) && row < 2) {
    double total, moving, splitting, aggregation, other, q, frac;
    int workers;
    ASSERT_EQ(std::sscanf(line.c_str(), "%d,%lf,%lf,%lf,%lf,%lf,%lf,%lf", &workers, &total,
                          &moving, &splitting, &aggregation, &other, &q, &frac),
              8)
        << line;
    const double bucket_sum = moving + splitting + aggregation + other;
    EXPECT_NEAR(bucket_sum, total, 0.05 * total) << line;
    EXPECT_GT(moving, 0.0);
    EXPECT_GT(splitting, 0.0);
    EXPECT_GT(aggregation, 0.0);
    EXPECT_GT(other, 0.0);
    totals[row++] = total;
  }
  ASSERT_EQ(row, 2);
  char buf[120];
  std::snprintf(buf, sizeof(buf), "(t1=%.2fs t4=%.2fs speedup=%.2fx, need >= 1.49x)", totals[0],
                totals[1], totals[0] / totals[1]);
  note(buf);
  EXPECT_LE(totals[1], 0.67 * totals[0])
      << "4-worker run must be at least 1.5x faster than 1-worker";
  std::remove(input.c_str());
}

TEST_F(Acceptance, C9_SingleWorkerDeterminism) {
  describe(9, "two 1-worker runs give byte-identical memberships and identical Q");
  for (const char* name : {"karate", "planted1k"}) {
    const CorpusEntry* entry = nullptr;
    for (const CorpusEntry& e : corpus())
      if (e.name == name) entry = &e;
    ASSERT_NE(entry, nullptr);

    const std::string input = testing::TempDir() + "acceptance_det_" + std::string(name) + ".el";
    writeEdgeList(input, entry->graph);
    std::string labels[2], reports[2];
    for (int run = 0; run < 2; ++run) {
      DetectOptions opt;
      opt.input = input;
      opt.format = InputFormat::EdgeList;
      opt.params.split = splitConfigFromString("pass-bfs");
      opt.params.workers = 1;
      opt.output = testing::TempDir() + "acceptance_det_" + std::to_string(run) + ".labels";
      opt.report_path = testing::TempDir() + "acceptance_det_" + std::to_string(run) + ".json";
      std::ostringstream out, err;
      ASSERT_EQ(cmdDetect(opt, out, err), 0) << err.str();
      std::ifstream lf(opt.output);
      std::stringstream ls;
      ls << lf.rdbuf();
      labels[run] = ls.str();
      std::ifstream rf(opt.report_path);
      std::stringstream rs;
      rs << rf.rdbuf();
      reports[run] = rs.str();
    }
    EXPECT_EQ(labels[0], labels[1]) << name << ": membership files differ";
    const double q0 =
        nlohmann::json::parse(reports[0]).at("modularity").get<double>();
    const double q1 =
        nlohmann::json::parse(reports[1]).at("modularity").get<double>();
    EXPECT_EQ(q0, q1) << name << ": modularity differs between runs";
    std::remove(input.c_str());
  }
}
