#include <stdexcept>
#include <string>

#include "tfft/sim/ledger.hpp"

namespace tfft::sim {
namespace {

template <class Weights>
auto& weight_field(Weights& w, std::string_view name) {
  if (name == "mover_access_32") return w.mover_access_32;
  if (name == "dram_access_32") return w.dram_access_32;
  if (name == "thcon_access_32") return w.thcon_access_32;
  if (name == "thcon_access_128") return w.thcon_access_128;
  if (name == "tile_ops") return w.tile_ops;
  if (name == "noc_words") return w.noc_words;
  if (name == "batch_residency") return w.batch_residency;
  throw std::invalid_argument("unknown cost counter '" + std::string(name) + "'");
}

}  // namespace

void CostWeights::set(std::string_view name, double value) { weight_field(*this, name) = value; }

double CostWeights::get(std::string_view name) const { return weight_field(*this, name); }

double CostLedger::modeled_cost(const CostWeights& w) const noexcept {
  return static_cast<double>(mover_access_32) * w.mover_access_32 +
         static_cast<double>(dram_access_32) * w.dram_access_32 +
         static_cast<double>(thcon_access_32) * w.thcon_access_32 +
         static_cast<double>(thcon_access_128) * w.thcon_access_128 +
         static_cast<double>(tile_ops) * w.tile_ops + static_cast<double>(noc_words) * w.noc_words +
         static_cast<double>(batch_residency) * w.batch_residency;
}

std::uint64_t CostLedger::get(std::string_view name) const { return weight_field(*this, name); }

CostLedger& CostLedger::operator+=(const CostLedger& o) noexcept {
  mover_access_32 += o.mover_access_32;
  dram_access_32 += o.dram_access_32;
  thcon_access_32 += o.thcon_access_32;
  thcon_access_128 += o.thcon_access_128;
  tile_ops += o.tile_ops;
  noc_words += o.noc_words;
  batch_residency += o.batch_residency;
  for (std::size_t i = 0; i < thcon_by_issuer.size(); ++i) thcon_by_issuer[i] += o.thcon_by_issuer[i];
  return *this;
}

}  // namespace tfft::sim
