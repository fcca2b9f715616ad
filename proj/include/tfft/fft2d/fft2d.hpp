#pragma once

// Row-column 2D FFT across a grid of simulated cores: local row FFTs, an
// all-to-all block transpose over the NoC, then local FFTs of the
// transposed rows.

#include <cstddef>
#include <vector>

#include "json.hpp"
#include "tfft/fft_core.hpp"
#include "tfft/kernels/variant.hpp"
#include "tfft/sim/grid.hpp"
#include "tfft/sim/report.hpp"

namespace tfft::fft2d {

/// Even split of `rows` row-major rows over `num_cores` cores.
class Distribution2D {
 public:
  /// Throws InvalidDimension for zero extents or rows % num_cores != 0.
  Distribution2D(std::size_t rows, std::size_t cols, std::size_t num_cores);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t num_cores() const noexcept { return num_cores_; }
  std::size_t rows_per_core() const noexcept { return rows_ / num_cores_; }
  std::size_t owner_of_row(std::size_t row) const noexcept { return row / rows_per_core(); }

  bool operator==(const Distribution2D&) const = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::size_t num_cores_;
};

/// Per-core SRAM blocks holding a distributed matrix. Core i's block is
/// rows_per_core rows of dist.cols() elements, row-major.
struct DistributedMatrix {
  Distribution2D dist;
  std::vector<sim::Ref> re;  // one per core
  std::vector<sim::Ref> im;
};

/// Uncounted host load of a rows x cols row-major matrix onto the grid.
/// Throws InvalidDimension if the input or grid size disagrees with `dist`.
DistributedMatrix distribute_rows(const ComplexBuffer& input, const Distribution2D& dist, sim::CoreGrid& grid);

/// Replaces `m` with its transpose, distributed by rows again: core j ends
/// up owning original columns [j * cols/P, (j+1) * cols/P) as local rows.
/// Every element crosses noc_exchange once, self-blocks included. The new
/// blocks are staged before the old ones are freed.
void global_transpose(sim::CoreGrid& grid, DistributedMatrix& m);

/// Uncounted host read-back of the matrix as currently distributed.
ComplexBuffer gather(const sim::CoreGrid& grid, const DistributedMatrix& m);

struct Fft2dResult {
  ComplexBuffer output;  // natural (row, col) order
  sim::RunReport report;  // counters summed over all cores
  Distribution2D dist;
  std::vector<sim::CostLedger> per_core;
  double noc_cost_share = 0.0;  // weighted noc_words / modeled_cost
};

/// Unverified: report.correctness is left unchecked.
Fft2dResult run_fft2d(const ComplexBuffer& input, const Distribution2D& dist, const kernels::KernelVariant& variant,
                      const sim::CostWeights& weights = {}, sim::CoreConfig config = {});

/// Run report plus rows, cols, num_cores, rows_per_core, noc_cost_share.
nlohmann::ordered_json to_json(const Fft2dResult& result);

}  // namespace tfft::fft2d
