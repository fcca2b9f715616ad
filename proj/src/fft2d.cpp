#include <algorithm>
#include <string>

#include "tfft/error.hpp"
#include "tfft/fft2d/fft2d.hpp"
#include "tfft/kernels/fft_kernel.hpp"

namespace tfft::fft2d {

namespace {

std::string dims_text(std::size_t rows, std::size_t cols) { return std::to_string(rows) + "x" + std::to_string(cols); }

void check_grid(const sim::CoreGrid& grid, const Distribution2D& dist) {
  if (grid.size() != dist.num_cores()) {
    throw InvalidDimension("grid has " + std::to_string(grid.size()) + " cores, distribution expects " +
                           std::to_string(dist.num_cores()));
  }
}

// FFT of every local row, in place.
void row_pass(sim::CoreGrid& grid, const DistributedMatrix& m, const kernels::KernelVariant& variant) {
  kernels::AblationFlags flags;
  flags.external_read = false;
  flags.external_write = false;
  const std::size_t len = m.dist.cols();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t r = 0; r < m.dist.rows_per_core(); ++r) {
      const sim::Ref re = m.re[i].slice(r * len, len);
      const sim::Ref im = m.im[i].slice(r * len, len);
      kernels::run_fft_kernel_on_core(grid.core(i), kernels::KernelIo{re, im, re, im}, len, variant, flags);
    }
  }
}

}  // namespace

Distribution2D::Distribution2D(std::size_t rows, std::size_t cols, std::size_t num_cores)
    : rows_(rows), cols_(cols), num_cores_(num_cores) {
  if (rows == 0 || cols == 0 || num_cores == 0) {
    throw InvalidDimension("distribution of " + dims_text(rows, cols) + " over " + std::to_string(num_cores) +
                           " cores");
  }
  if (rows % num_cores != 0) {
    throw InvalidDimension(std::to_string(rows) + " rows do not split evenly over " + std::to_string(num_cores) +
                           " cores");
  }
}

DistributedMatrix distribute_rows(const ComplexBuffer& input, const Distribution2D& dist, sim::CoreGrid& grid) {
  check_grid(grid, dist);
  if (input.size() != dist.rows() * dist.cols()) {
    throw InvalidDimension("input holds " + std::to_string(input.size()) + " elements, expected " +
                           dims_text(dist.rows(), dist.cols()));
  }
  DistributedMatrix m{dist, {}, {}};
  const std::size_t block = dist.rows_per_core() * dist.cols();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    sim::Core& core = grid.core(i);
    m.re.push_back(core.sram().allocate("matrix_re", block));
    m.im.push_back(core.sram().allocate("matrix_im", block));
    core.host_write(m.re.back(), input.re().subspan(i * block, block));
    core.host_write(m.im.back(), input.im().subspan(i * block, block));
  }
  return m;
}

void global_transpose(sim::CoreGrid& grid, DistributedMatrix& m) {
  check_grid(grid, m.dist);
  const std::size_t rows = m.dist.rows();
  const std::size_t cols = m.dist.cols();
  const std::size_t cores = grid.size();
  const Distribution2D next(cols, rows, cores);
  const std::size_t rpc = m.dist.rows_per_core();
  const std::size_t cpc = next.rows_per_core();

  DistributedMatrix staged{next, {}, {}};
  for (std::size_t j = 0; j < cores; ++j) {
    staged.re.push_back(grid.core(j).sram().allocate("transpose_re", cpc * rows));
    staged.im.push_back(grid.core(j).sram().allocate("transpose_im", cpc * rows));
  }

  // Row segment (r, [j*cpc, (j+1)*cpc)) becomes column r of core j's block.
  std::vector<sim::NocTransfer> transfers;
  transfers.reserve(2 * rows * cores);
  const std::size_t extent = (cpc - 1) * rows + 1;
  for (std::size_t i = 0; i < cores; ++i) {
    for (std::size_t lr = 0; lr < rpc; ++lr) {
      const std::size_t r = i * rpc + lr;
      for (std::size_t j = 0; j < cores; ++j) {
        const std::size_t from = lr * cols + j * cpc;
        transfers.push_back({i, m.re[i].slice(from, cpc), j, staged.re[j].slice(r, extent), rows});
        transfers.push_back({i, m.im[i].slice(from, cpc), j, staged.im[j].slice(r, extent), rows});
      }
    }
  }
  grid.noc_exchange(transfers);

  for (std::size_t i = 0; i < cores; ++i) {
    grid.core(i).sram().free(m.re[i]);
    grid.core(i).sram().free(m.im[i]);
  }
  m = std::move(staged);
}

ComplexBuffer gather(const sim::CoreGrid& grid, const DistributedMatrix& m) {
  check_grid(grid, m.dist);
  ComplexBuffer out(m.dist.rows() * m.dist.cols());
  const std::size_t block = m.dist.rows_per_core() * m.dist.cols();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto re = grid.core(i).host_read(m.re[i]);
    const auto im = grid.core(i).host_read(m.im[i]);
    std::copy(re.begin(), re.end(), out.re().begin() + static_cast<std::ptrdiff_t>(i * block));
    std::copy(im.begin(), im.end(), out.im().begin() + static_cast<std::ptrdiff_t>(i * block));
  }
  return out;
}

Fft2dResult run_fft2d(const ComplexBuffer& input, const Distribution2D& dist, const kernels::KernelVariant& variant,
                      const sim::CostWeights& weights, sim::CoreConfig config) {
  if (!is_power_of_two(dist.rows()) || !is_power_of_two(dist.cols()) || dist.rows() < 2 || dist.cols() < 2) {
    throw InvalidDimension("2D extents must be powers of two >= 2, got " + dims_text(dist.rows(), dist.cols()));
  }
  if (dist.cols() % dist.num_cores() != 0) {
    throw InvalidDimension(std::to_string(dist.cols()) + " columns do not split evenly over " +
                           std::to_string(dist.num_cores()) + " cores");
  }
  config.record_trace = false;
  sim::CoreGrid grid(dist.num_cores(), config);

  DistributedMatrix m = distribute_rows(input, dist, grid);
  row_pass(grid, m, variant);
  global_transpose(grid, m);
  row_pass(grid, m, variant);
  const ComplexBuffer transposed = gather(grid, m);

  Fft2dResult result{ComplexBuffer(input.size()), {}, dist, {}, 0.0};
  const std::size_t rows = dist.rows();
  const std::size_t cols = dist.cols();
  for (std::size_t c = 0; c < cols; ++c) {
    for (std::size_t r = 0; r < rows; ++r) {
      result.output.re()[r * cols + c] = transposed.re()[c * rows + r];
      result.output.im()[r * cols + c] = transposed.im()[c * rows + r];
    }
  }

  sim::RunReport& report = result.report;
  report.variant = variant.name;
  report.n = input.size();
  report.counters = grid.aggregate_ledger();
  report.weights = weights;
  report.recompute_cost();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    result.per_core.push_back(grid.core(i).ledger());
    report.events += grid.core(i).event_count();
  }
  if (report.modeled_cost > 0.0) {
    result.noc_cost_share = static_cast<double>(report.counters.noc_words) * weights.noc_words / report.modeled_cost;
  }
  return result;
}

nlohmann::ordered_json to_json(const Fft2dResult& result) {
  nlohmann::ordered_json j = sim::to_json(result.report);
  j["rows"] = result.dist.rows();
  j["cols"] = result.dist.cols();
  j["num_cores"] = result.dist.num_cores();
  j["rows_per_core"] = result.dist.rows_per_core();
  j["noc_cost_share"] = result.noc_cost_share;
  return j;
}

}  // namespace tfft::fft2d
