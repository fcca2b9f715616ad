#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"
#include "tfft/sim/ledger.hpp"

namespace tfft::sim {

struct Correctness {
  bool checked = false;
  // Largest relative L2 error over the oracles compared; empty when unchecked.
  std::optional<double> max_rel_err;
};

/// Outcome of one simulated run. Serialized field names are a stable
/// contract shared with the CLI and the shipped JSON schema.
struct RunReport {
  std::string variant;
  std::size_t n = 0;
  CostLedger counters;
  CostWeights weights;
  double modeled_cost = 0.0;
  Correctness correctness;
  std::uint64_t events = 0;

  void recompute_cost() { modeled_cost = counters.modeled_cost(weights); }
};

nlohmann::ordered_json counters_json(const CostLedger& ledger);
nlohmann::ordered_json weights_json(const CostWeights& weights);
nlohmann::ordered_json to_json(const RunReport& report);

}  // namespace tfft::sim
