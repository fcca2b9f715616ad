#include <algorithm>
#include <array>
#include <string>

#include "tfft/error.hpp"
#include "tfft/kernels/fft_kernel.hpp"
#include "tfft/kernels/step_plan.hpp"

namespace tfft::kernels {

namespace {

using sim::Access;
using sim::BinaryOp;
using sim::CbId;
using sim::Issuer;
using sim::PageHandle;
using sim::Ref;
using sim::Task;

struct Planes {
  Ref re;
  Ref im;
};

struct KernelContext {
  KernelContext(sim::Core& c, const KernelVariant& v, AblationFlags f) : core(c), variant(v), flags(f) {}

  sim::Core& core;
  const KernelVariant& variant;
  AblationFlags flags;
  std::size_t n = 0;
  std::size_t half = 0;
  std::size_t page_elems = 0;
  std::size_t pages = 0;
  std::size_t batch = 0;
  unsigned steps = 0;

  std::vector<StepPlan> plans;
  StepPlan first;                    // step 0, gathering from natural-order input
  std::vector<Permutation> handoff;  // one_reorder: step s results -> step s+1 stream slots

  Planes input, output;
  std::array<Planes, 2> work;
  Planes twiddles;

  // d0r, d0i, d1r, d1i
  std::array<CbId, 4> data{};
  std::array<CbId, 2> tw{};
  CbId int0 = 0, int1 = 0, f0 = 0, f1 = 0;
  // o0r, o0i, o1r, o1i: same order as data
  std::array<CbId, 4> out{};
  CbId token = 0;

  std::uint64_t written = 0;

  bool one_reorder() const { return variant.reorder_scheme == ReorderScheme::one_reorder; }
  bool last(unsigned s) const { return s + 1 == steps; }

  Planes source(unsigned s) const {
    if (s == 0) return input;
    return one_reorder() ? work[s % 2] : work[0];
  }

  Planes destination(unsigned s) const {
    if (last(s)) return output;
    return one_reorder() ? work[(s + 1) % 2] : work[0];
  }

  // Pages to wait for at the start of a batch; 0 inside a batch.
  std::size_t batch_count(std::size_t page) const {
    return page % batch == 0 ? std::min(batch, pages - page) : 0;
  }

  Access access(bool path_wide, const Ref& contiguous, Issuer issuer) const {
    const bool wide = path_wide && variant.contiguous_width == 128 && contiguous.wide_ok();
    return Access{variant.copy_engine, wide ? 128U : 32U, issuer};
  }

  void fill_data(unsigned s, bool lhs, const Ref& plane, std::size_t k0, const Ref& page, Issuer issuer) {
    const std::size_t side = lhs ? 0 : half;
    if (!flags.read_reorder || (one_reorder() && s > 0)) {
      core.alias_copy(plane.slice(side + k0, page_elems), page);
      return;
    }
    const StepPlan& plan = s == 0 ? first : plans[s];
    const std::span<const std::uint32_t> index = lhs ? plan.gather_lhs : plan.gather_rhs;
    core.mover_gather(plane, index.subspan(k0, page_elems), page, access(!one_reorder(), page, issuer));
  }

  void fill_twiddle(unsigned s, const Ref& table, std::size_t k0, const Ref& page, Issuer issuer) {
    if (!flags.read_reorder) {
      core.alias_copy(table.slice(k0, page_elems), page);
      return;
    }
    const std::span<const std::uint32_t> index = plans[s].twiddle_stream;
    core.mover_gather(table, index.subspan(k0, page_elems), page, access(true, page, issuer));
  }

  void drain(unsigned s, bool lhs, const Ref& page, const Ref& plane, std::size_t k0, Issuer issuer) {
    const std::size_t side = lhs ? 0 : half;
    if (!flags.write_reorder) {
      core.alias_copy(page, plane.slice(side + k0, page_elems));
    } else if (one_reorder() && !last(s)) {
      const std::span<const std::uint32_t> index = handoff[s];
      core.mover_scatter(page, index.subspan(side + k0, page_elems), plane, access(false, page, issuer));
    } else {
      const std::span<const std::uint32_t> index = lhs ? plans[s].gather_lhs : plans[s].gather_rhs;
      core.mover_scatter(page, index.subspan(k0, page_elems), plane, access(!one_reorder(), page, issuer));
    }
    written += page_elems;
  }
};

Issuer issuer_for(std::size_t stream) { return static_cast<Issuer>(stream % 3); }

Task in_mover(KernelContext& c) {
  for (unsigned s = 0; s < c.steps; ++s) {
    if (s > 0) {
      co_await c.core.wait_front(c.token);
      c.core.pop(c.token);
    }
    const Planes src = c.source(s);
    for (std::size_t p = 0; p < c.pages; ++p) {
      const std::size_t k0 = p * c.page_elems;
      for (std::size_t i = 0; i < 4; ++i) {
        const PageHandle page = co_await c.core.reserve(c.data[i]);
        c.fill_data(s, i < 2, i % 2 == 0 ? src.re : src.im, k0, page.ref, issuer_for(i));
        c.core.push(page);
      }
      for (std::size_t i = 0; i < 2; ++i) {
        const PageHandle page = co_await c.core.reserve(c.tw[i]);
        c.fill_twiddle(s, i == 0 ? c.twiddles.re : c.twiddles.im, k0, page.ref, issuer_for(4 + i));
        c.core.push(page);
      }
      c.core.trace(sim::TraceKind::gather_page, s, p);
    }
  }
}

Task compute(KernelContext& c) {
  sim::Core& core = c.core;
  const auto [d0r, d0i, d1r, d1i] = c.data;
  const auto [twr, twi] = c.tw;
  const auto [o0r, o0i, o1r, o1i] = c.out;
  for (unsigned s = 0; s < c.steps; ++s) {
    for (std::size_t p = 0; p < c.pages; ++p) {
      if (const std::size_t count = c.batch_count(p); count > 0) {
        for (CbId id : c.data) co_await core.wait_front(id, count);
        for (CbId id : c.tw) co_await core.wait_front(id, count);
      }
      if (c.flags.compute) {
        // f = d1 * w, then out1 = d0 - f, out0 = d0 + f.
        co_await core.maths_sfpu_op(BinaryOp::mul, d1r, twr, c.int0);
        co_await core.maths_sfpu_op(BinaryOp::mul, d1i, twi, c.int1);
        co_await core.maths_sfpu_op(BinaryOp::sub, c.int0, c.int1, c.f0, true, true);
        co_await core.maths_sfpu_op(BinaryOp::mul, d1r, twi, c.int0);
        co_await core.maths_sfpu_op(BinaryOp::mul, d1i, twr, c.int1);
        co_await core.maths_sfpu_op(BinaryOp::add, c.int0, c.int1, c.f1, true, true);
        co_await core.maths_sfpu_op(BinaryOp::sub, d0r, c.f0, o1r);
        co_await core.maths_sfpu_op(BinaryOp::sub, d0i, c.f1, o1i);
        co_await core.maths_sfpu_op(BinaryOp::add, d0r, c.f0, o0r);
        co_await core.maths_sfpu_op(BinaryOp::add, d0i, c.f1, o0i);
        for (CbId id : {d0r, d0i, d1r, d1i, twr, twi, c.f0, c.f1}) core.pop(id);
      } else {
        for (std::size_t i = 0; i < 4; ++i) {
          const PageHandle in = co_await core.wait_front(c.data[i]);
          const PageHandle out = co_await core.reserve(c.out[i]);
          core.alias_copy(in.ref, out.ref);
          core.push(out);
          core.pop(c.data[i]);
        }
        core.pop(twr);
        core.pop(twi);
      }
    }
  }
}

Task out_mover(KernelContext& c) {
  for (unsigned s = 0; s < c.steps; ++s) {
    const Planes dst = c.destination(s);
    for (std::size_t p = 0; p < c.pages; ++p) {
      if (const std::size_t count = c.batch_count(p); count > 0) {
        for (CbId id : c.out) co_await c.core.wait_front(id, count);
      }
      const std::size_t k0 = p * c.page_elems;
      for (std::size_t i = 0; i < 4; ++i) {
        const PageHandle page = co_await c.core.wait_front(c.out[i]);
        c.drain(s, i < 2, page.ref, i % 2 == 0 ? dst.re : dst.im, k0, issuer_for(i));
        c.core.pop(c.out[i]);
      }
      c.core.trace(sim::TraceKind::scatter_page, s, p);
    }
    if (!c.last(s)) {
      const PageHandle tok = co_await c.core.reserve(c.token);
      c.core.push(tok);
      c.core.trace(sim::TraceKind::step_barrier, s, 0);
    }
  }
}

void check_plane(const Ref& r, std::size_t n, const char* what) {
  if (r.count != n) {
    throw InvalidDimension(std::string(what) + " holds " + std::to_string(r.count) + " elements, expected " +
                           std::to_string(n));
  }
}

// Index tables are kept as 16-bit entries while n fits, else 32-bit.
std::size_t index_table_words(std::size_t n, std::size_t tables) {
  const std::size_t entry_bytes = n <= 65536 ? 2 : 4;
  return (tables * n * entry_bytes + sim::kWordBytes - 1) / sim::kWordBytes;
}

}  // namespace

KernelRunInfo run_fft_kernel_on_core(sim::Core& core, const KernelIo& io, std::size_t n, const KernelVariant& variant,
                                     const AblationFlags& flags, const KernelOptions& options) {
  const FftDims dims(n);
  check_plane(io.in_re, n, "input real plane");
  check_plane(io.in_im, n, "input imaginary plane");
  check_plane(io.out_re, n, "output real plane");
  check_plane(io.out_im, n, "output imaginary plane");

  KernelContext c(core, variant, flags);
  c.n = n;
  c.half = n / 2;
  c.steps = dims.steps();
  c.page_elems = options.page_elems == 0 ? std::min<std::size_t>(1024, c.half) : options.page_elems;
  if (c.page_elems > 1024 || c.half % c.page_elems != 0) {
    throw InvalidDimension("page size " + std::to_string(c.page_elems) + " must divide " + std::to_string(c.half) +
                           " and be at most 1024");
  }
  c.pages = c.half / c.page_elems;
  c.batch = variant.whole_step() ? c.pages : std::min(variant.chunk_pages, c.pages);
  c.plans = build_step_plans(n);
  c.first = fold_bit_reversal(c.plans[0]);
  if (c.one_reorder()) {
    for (unsigned s = 0; s + 1 < c.steps; ++s) c.handoff.push_back(compose_reorder(c.plans[s], c.plans[s + 1]));
  }
  c.input = {io.in_re, io.in_im};
  c.output = {io.out_re, io.out_im};

  const auto mark = core.checkpoint();
  struct Rollback {
    sim::Core& core;
    sim::Core::Checkpoint mark;
    ~Rollback() { core.rollback(mark); }
  } rollback{core, mark};

  auto& sram = core.sram();
  const std::size_t buffers = c.one_reorder() ? 2 : 1;
  for (std::size_t b = 0; b < buffers; ++b) {
    const std::string tag = std::string(1, static_cast<char>('a' + b));
    c.work[b] = {sram.allocate("work_" + tag + "_re", n), sram.allocate("work_" + tag + "_im", n)};
  }
  if (buffers == 1) c.work[1] = c.work[0];

  c.twiddles = {sram.allocate("twiddle_re", c.half), sram.allocate("twiddle_im", c.half)};
  const TwiddleTable table = twiddle_table(n);
  core.host_write(c.twiddles.re, table.re);
  core.host_write(c.twiddles.im, table.im);

  // Per-step gather and handoff tables the movers index through.
  sram.allocate("index_tables", index_table_words(n, c.one_reorder() ? c.steps + 1 : c.steps));

  const bool batched = variant.whole_step();
  const std::size_t stream_pages = batched ? c.pages : 2 * c.batch;
  const char* data_names[] = {"data0_r", "data0_i", "data1_r", "data1_i"};
  const char* out_names[] = {"out0_r", "out0_i", "out1_r", "out1_i"};
  for (std::size_t i = 0; i < 4; ++i) c.data[i] = core.create_cb(data_names[i], c.page_elems, stream_pages, batched);
  c.tw[0] = core.create_cb("tw_r", c.page_elems, stream_pages, batched);
  c.tw[1] = core.create_cb("tw_i", c.page_elems, stream_pages, batched);
  c.int0 = core.create_cb("int0", c.page_elems, 2);
  c.int1 = core.create_cb("int1", c.page_elems, 2);
  c.f0 = core.create_cb("f0", c.page_elems, 2);
  c.f1 = core.create_cb("f1", c.page_elems, 2);
  for (std::size_t i = 0; i < 4; ++i) c.out[i] = core.create_cb(out_names[i], c.page_elems, stream_pages, batched);
  c.token = core.create_cb("step_token", 4, 1);

  std::vector<std::pair<std::string, Task>> agents;
  agents.emplace_back("in_mover", in_mover(c));
  agents.emplace_back("compute", compute(c));
  agents.emplace_back("out_mover", out_mover(c));
  core.run(std::move(agents));

  return KernelRunInfo{c.written, c.pages, c.page_elems};
}

KernelResult run_fft_kernel(const ComplexBuffer& input, const KernelVariant& variant, const AblationFlags& flags,
                            const KernelOptions& options, const sim::CoreConfig& config,
                            const sim::CostWeights& weights) {
  const std::size_t n = input.size();
  static_cast<void>(FftDims(n));
  sim::Core core(config);

  KernelIo io;
  if (flags.external_read) {
    io.in_re = core.dram().allocate(n);
    io.in_im = core.dram().allocate(n);
  } else {
    io.in_re = core.sram().allocate("input_re", n);
    io.in_im = core.sram().allocate("input_im", n);
  }
  core.host_write(io.in_re, input.re());
  core.host_write(io.in_im, input.im());
  if (flags.external_write) {
    io.out_re = core.dram().allocate(n);
    io.out_im = core.dram().allocate(n);
  } else if (!flags.external_read) {
    // Step 0 finishes reading the input before anything is written back.
    io.out_re = io.in_re;
    io.out_im = io.in_im;
  } else {
    io.out_re = core.sram().allocate("output_re", n);
    io.out_im = core.sram().allocate("output_im", n);
  }

  KernelResult result;
  result.info = run_fft_kernel_on_core(core, io, n, variant, flags, options);
  result.output = ComplexBuffer(core.host_read(io.out_re), core.host_read(io.out_im));
  result.trace = core.trace_events();
  result.packed_elements = core.packed_elements();
  result.sram_high_water = core.sram().high_water();

  sim::RunReport& report = result.report;
  report.variant = variant.name;
  report.n = n;
  report.counters = core.ledger();
  report.weights = weights;
  report.recompute_cost();
  report.events = core.event_count();
  if (flags.numerically_valid()) {
    report.correctness.checked = true;
    report.correctness.max_rel_err = relative_l2_error(result.output, fft_reference(input));
  }
  return result;
}

const std::vector<AblationFlags>& ablation_rows() {
  static const std::vector<AblationFlags> rows = [] {
    std::vector<AblationFlags> r;
    for (const char* s : {"YYYYY", "YNYYY", "NNYYY", "NYYNN", "YYYNN", "NNYNY", "NNYNN"}) {
      r.push_back(AblationFlags::parse(s));
    }
    return r;
  }();
  return rows;
}

std::vector<KernelResult> run_ablation(const ComplexBuffer& input, const KernelVariant& variant,
                                       std::span<const AblationFlags> rows, const sim::CostWeights& weights) {
  std::vector<KernelResult> results;
  results.reserve(rows.size());
  for (const auto& flags : rows) results.push_back(run_fft_kernel(input, variant, flags, {}, {}, weights));
  return results;
}

}  // namespace tfft::kernels
