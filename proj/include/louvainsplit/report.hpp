#pragma once
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "louvainsplit/louvain.hpp"

namespace louvainsplit {

inline const char* toString(SplitTechnique t) {
  switch (t) {
    case SplitTechnique::Lp: return "lp";
    case SplitTechnique::Lpp: return "lpp";
    case SplitTechnique::Bfs: return "bfs";
  }
  return "?";
}

/// Split setting in the CLI's flag syntax: none, last-<tech>, pass-<tech>.
inline std::string toString(const SplitConfig& s) {
  switch (s.mode) {
    case SplitMode::None: return "none";
    case SplitMode::SplitLast: return std::string("last-") + toString(s.technique);
    case SplitMode::SplitPass: return std::string("pass-") + toString(s.technique);
  }
  return "?";
}

inline SplitTechnique splitTechniqueFromString(const std::string& s) {
  if (s == "lp") return SplitTechnique::Lp;
  if (s == "lpp") return SplitTechnique::Lpp;
  if (s == "bfs") return SplitTechnique::Bfs;
  throw std::invalid_argument("unknown split technique '" + s + "'");
}

inline SplitConfig splitConfigFromString(const std::string& s) {
  if (s == "none") return {SplitTechnique::Bfs, SplitMode::None};
  if (s.rfind("last-", 0) == 0)
    return {splitTechniqueFromString(s.substr(5)), SplitMode::SplitLast};
  if (s.rfind("pass-", 0) == 0)
    return {splitTechniqueFromString(s.substr(5)), SplitMode::SplitPass};
  throw std::invalid_argument("unknown split setting '" + s + "'");
}

inline nlohmann::json toJson(const DetectionReport& r) {
  nlohmann::json passes = nlohmann::json::array();
  for (const PassStats& p : r.pass_stats) {
    passes.push_back({{"pass", p.pass},
                      {"iterations", p.iterations},
                      {"local_moving_s", p.local_moving_s},
                      {"splitting_s", p.splitting_s},
                      {"aggregation_s", p.aggregation_s},
                      {"other_s", p.other_s},
                      {"num_communities", p.num_communities},
                      {"modularity", p.modularity}});
  }
  return {{"schema", 1},
          {"modularity", r.modularity},
          {"num_communities", r.num_communities},
          {"disconnected_fraction", r.disconnected_fraction},
          {"passes", r.passes},
          {"pass_stats", std::move(passes)},
          {"total_runtime_s", r.total_runtime_s},
          {"workers", r.workers},
          {"params",
           {{"tolerance", r.params.tolerance},
            {"tolerance_drop", r.params.tolerance_drop},
            {"aggregation_tolerance", r.params.aggregation_tolerance},
            {"max_passes", r.params.max_passes},
            {"max_iterations", r.params.max_iterations},
            {"split", toString(r.params.split)},
            {"workers", r.params.workers}}}};
}

inline DetectionReport reportFromJson(const nlohmann::json& j) {
  if (j.at("schema").get<int>() != 1) throw std::invalid_argument("unsupported report schema");
  DetectionReport r;
  // JSON has no NaN; an undefined modularity is serialized as null.
  r.modularity = j.at("modularity").is_null() ? std::numeric_limits<double>::quiet_NaN()
                                              : j.at("modularity").get<double>();
  r.num_communities = j.at("num_communities").get<std::size_t>();
  r.disconnected_fraction = j.at("disconnected_fraction").get<double>();
  r.passes = j.at("passes").get<int>();
  r.total_runtime_s = j.at("total_runtime_s").get<double>();
  r.workers = j.at("workers").get<int>();
  for (const nlohmann::json& jp : j.at("pass_stats")) {
    PassStats p;
    p.pass = jp.at("pass").get<int>();
    p.iterations = jp.at("iterations").get<int>();
    p.local_moving_s = jp.at("local_moving_s").get<double>();
    p.splitting_s = jp.at("splitting_s").get<double>();
    p.aggregation_s = jp.at("aggregation_s").get<double>();
    p.other_s = jp.at("other_s").get<double>();
    p.num_communities = jp.at("num_communities").get<std::size_t>();
    p.modularity = jp.at("modularity").is_null() ? std::numeric_limits<double>::quiet_NaN()
                                                 : jp.at("modularity").get<double>();
    r.pass_stats.push_back(p);
  }
  const nlohmann::json& jp = j.at("params");
  r.params.tolerance = jp.at("tolerance").get<double>();
  r.params.tolerance_drop = jp.at("tolerance_drop").get<double>();
  r.params.aggregation_tolerance = jp.at("aggregation_tolerance").get<double>();
  r.params.max_passes = jp.at("max_passes").get<int>();
  r.params.max_iterations = jp.at("max_iterations").get<int>();
  r.params.split = splitConfigFromString(jp.at("split").get<std::string>());
  r.params.workers = jp.at("workers").get<int>();
  return r;
}

/// Phase-time totals of a run, for the benchmark CSV.
struct PhaseTotals {
  double local_moving_s = 0.0;
  double splitting_s = 0.0;
  double aggregation_s = 0.0;
  double other_s = 0.0;
};

/// Splits a report's total runtime into the four phase buckets; other_s is
/// the residual, so the buckets always sum to the total.
inline PhaseTotals phaseTotals(const DetectionReport& r) {
  PhaseTotals t;
  for (const PassStats& p : r.pass_stats) {
    t.local_moving_s += p.local_moving_s;
    t.splitting_s += p.splitting_s;
    t.aggregation_s += p.aggregation_s;
  }
  t.other_s = r.total_runtime_s - t.local_moving_s - t.splitting_s - t.aggregation_s;
  if (t.other_s < 0.0) t.other_s = 0.0;
  return t;
}

inline constexpr const char* kBenchCsvHeader =
    "workers,total_s,local_moving_s,splitting_s,aggregation_s,other_s,modularity,"
    "disconnected_fraction";

}  // namespace louvainsplit
