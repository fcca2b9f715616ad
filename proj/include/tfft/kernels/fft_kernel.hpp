#pragma once

// The simulated single-core FFT kernel family.
//
// Three agents share a core: an in-mover that gathers operand pages into
// circular buffers, a compute agent that runs the butterfly on the SFPU,
// and an out-mover that scatters result pages back. Steps are separated by
// a token the out-mover hands to the in-mover once a step is fully written.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "tfft/fft_core.hpp"
#include "tfft/kernels/variant.hpp"
#include "tfft/sim/core.hpp"
#include "tfft/sim/report.hpp"

namespace tfft::kernels {

struct KernelOptions {
  // Elements per CB page; 0 picks min(1024, n/2). Must divide n/2 and be
  // at most 1024 (one register segment).
  std::size_t page_elems = 0;
};

/// Where a run reads its input planes from and writes its output planes to.
/// Either side may be DRAM or SRAM; input and output may be the same refs.
struct KernelIo {
  sim::Ref in_re, in_im;
  sim::Ref out_re, out_im;
};

struct KernelRunInfo {
  std::uint64_t written_elements = 0;  // floats the out-mover stored, both planes
  std::size_t pages_per_step = 0;
  std::size_t page_elems = 0;
};

/// Runs one n-point transform on `core`, charging its ledger. All SRAM the
/// kernel allocates is released before returning.
KernelRunInfo run_fft_kernel_on_core(sim::Core& core, const KernelIo& io, std::size_t n, const KernelVariant& variant,
                                     const AblationFlags& flags = {}, const KernelOptions& options = {});

struct KernelResult {
  ComplexBuffer output;
  sim::RunReport report;
  std::vector<sim::TraceEvent> trace;
  KernelRunInfo info;
  std::uint64_t packed_elements = 0;
  std::size_t sram_high_water = 0;  // bytes
};

/// Standalone run on a fresh core. Input lives in DRAM when
/// flags.external_read is set, else in SRAM; likewise for the output.
/// Numerically valid runs are checked against fft_reference.
KernelResult run_fft_kernel(const ComplexBuffer& input, const KernelVariant& variant, const AblationFlags& flags = {},
                            const KernelOptions& options = {}, const sim::CoreConfig& config = {},
                            const sim::CostWeights& weights = {});

/// The ablation rows reported for the initial kernel, in table order.
const std::vector<AblationFlags>& ablation_rows();

std::vector<KernelResult> run_ablation(const ComplexBuffer& input, const KernelVariant& variant,
                                       std::span<const AblationFlags> rows, const sim::CostWeights& weights = {});

}  // namespace tfft::kernels
