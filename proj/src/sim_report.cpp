#include "tfft/sim/report.hpp"

namespace tfft::sim {

nlohmann::ordered_json counters_json(const CostLedger& ledger) {
  nlohmann::ordered_json j;
  for (auto name : kCounterNames) j[std::string(name)] = ledger.get(name);
  return j;
}

nlohmann::ordered_json weights_json(const CostWeights& weights) {
  nlohmann::ordered_json j;
  for (auto name : kCounterNames) j[std::string(name)] = weights.get(name);
  return j;
}

nlohmann::ordered_json to_json(const RunReport& report) {
  nlohmann::ordered_json j;
  j["variant"] = report.variant;
  j["n"] = report.n;
  j["counters"] = counters_json(report.counters);
  j["thcon_by_issuer"] = {{"unpack", report.counters.thcon_by_issuer[0]},
                          {"math", report.counters.thcon_by_issuer[1]},
                          {"pack", report.counters.thcon_by_issuer[2]}};
  j["weights"] = weights_json(report.weights);
  j["modeled_cost"] = report.modeled_cost;
  nlohmann::ordered_json correctness;
  correctness["checked"] = report.correctness.checked;
  if (report.correctness.max_rel_err) {
    correctness["max_rel_err"] = *report.correctness.max_rel_err;
  } else {
    correctness["max_rel_err"] = nullptr;
  }
  j["correctness"] = correctness;
  j["events"] = report.events;
  return j;
}

}  // namespace tfft::sim
