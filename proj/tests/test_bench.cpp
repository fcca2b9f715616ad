#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include "tfft/bench/bench.hpp"
#include "tfft/error.hpp"

using namespace tfft;
using namespace tfft::bench;
using json = nlohmann::ordered_json;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("tfft_test_" + name)).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

ExperimentConfig config_for(Command command) {
  ExperimentConfig c;
  c.command = command;
  return c;
}

}  // namespace

TEST(SeededInput, FrozenValues) {
  // First draws of std::mt19937_64 seeded with 5489 (the standard's default seed).
  const auto x = seeded_input(2, 5489);
  std::mt19937_64 gen(5489);
  for (std::size_t i = 0; i < 2; ++i) {
    for (float got : {x.re()[i], x.im()[i]}) {
      const double want = double(gen() >> 40) / 16777216.0 * 2.0 - 1.0;
      EXPECT_EQ(double(got), want);
    }
  }
  EXPECT_EQ(x.re()[0], float(double(14514284786278117030ULL >> 40) / 16777216.0 * 2.0 - 1.0));
}

TEST(SeededInput, RangeAndDeterminism) {
  const auto a = seeded_input(4096, 42);
  EXPECT_TRUE(bitwise_equal(a, seeded_input(4096, 42)));
  EXPECT_FALSE(bitwise_equal(a, seeded_input(4096, 43)));
  for (std::size_t i = 0; i < a.size(); ++i) {
    ASSERT_GE(a.re()[i], -1.0F);
    ASSERT_LT(a.re()[i], 1.0F);
  }
}

TEST(ArrayFile, RoundTripAndHeader) {
  const std::string path = temp_path("array.bin");
  Array2D a{3, 2, seeded_input(6, 1)};
  write_array(path, a);
  const std::string bytes = slurp(path);
  ASSERT_EQ(bytes.size(), 12U + 48U);
  EXPECT_EQ(bytes.substr(0, 12), std::string("\x03\0\0\0\x02\0\0\0\x02\0\0\0", 12));
  const Array2D b = read_array(path);
  EXPECT_EQ(b.rows, 3U);
  EXPECT_EQ(b.cols, 2U);
  EXPECT_TRUE(bitwise_equal(a.data, b.data));
  std::ofstream(path, std::ios::binary) << "short";
  EXPECT_THROW(read_array(path), Error);
  std::remove(path.c_str());
}

TEST(Weights, ParseOverrides) {
  const auto w = parse_weights("tile_ops=2,noc_words=0.25");
  EXPECT_EQ(w.tile_ops, 2.0);
  EXPECT_EQ(w.noc_words, 0.25);
  EXPECT_EQ(w.mover_access_32, 3.0);
  EXPECT_THROW(parse_weights("cycles=1"), std::invalid_argument);
  EXPECT_THROW(parse_weights("tile_ops"), std::invalid_argument);
  EXPECT_THROW(parse_weights("tile_ops=fast"), std::invalid_argument);
}

TEST(Csv, FlattensWithDots) {
  json a;
  a["variant"] = "thcon";
  a["counters"]["tile_ops"] = 4;
  a["note"] = "a,b";
  a["err"] = nullptr;
  const std::string csv = to_csv({a});
  EXPECT_EQ(csv, "variant,counters.tile_ops,note,err\nthcon,4,\"a,b\",\n");
}

TEST(Commands, ExitCodeContract) {
  auto c = config_for(Command::fft1d);
  c.n = 64;
  EXPECT_EQ(run_command(c).exit_code, kExitOk);
  c.n = 12;
  EXPECT_EQ(run_command(c).exit_code, kExitError);
  c.n = 64;
  c.variant = "bogus";
  EXPECT_EQ(run_command(c).exit_code, kExitError);

  auto l = config_for(Command::ladder);
  l.n = 16384;
  const auto ok = run_command(l);
  EXPECT_EQ(ok.exit_code, kExitOk);
  EXPECT_TRUE(json::parse(ok.report)["strictly_decreasing"].get<bool>());
  // Make 32-bit ThCon traffic absurdly expensive: the later rungs lose.
  l.weights.thcon_access_32 = 100.0;
  EXPECT_EQ(run_command(l).exit_code, kExitOrdering);

  auto d = config_for(Command::fft2d);
  d.rows = 1024;
  d.cols = 1024;
  d.num_cores = 7;
  EXPECT_EQ(run_command(d).exit_code, kExitError);
}

TEST(Commands, VerificationFailureExitsTwo) {
  const std::string path = temp_path("nan.bin");
  Array2D a{4, 4, ComplexBuffer(16)};
  a.data.re()[3] = std::numeric_limits<float>::quiet_NaN();
  write_array(path, a);
  auto c = config_for(Command::fft2d);
  c.input_path = path;
  c.num_cores = 2;
  const auto out = run_command(c);
  EXPECT_EQ(out.exit_code, kExitVerifyFailed);
  EXPECT_FALSE(out.report.empty());
  std::remove(path.c_str());
}

TEST(Commands, Fft1dReport) {
  auto c = config_for(Command::fft1d);
  c.n = 4096;
  const auto j = json::parse(run_command(c).report);
  EXPECT_EQ(j["command"], "fft1d");
  EXPECT_EQ(j["variant"], "single_copy");
  EXPECT_TRUE(j["correctness"]["checked"].get<bool>());
  EXPECT_LT(j["correctness"]["max_rel_err"].get<double>(), 1e-3);

  c.flags = kernels::AblationFlags::parse("YNYYY");
  const auto k = json::parse(run_command(c).report);
  EXPECT_FALSE(k["correctness"]["checked"].get<bool>());
  EXPECT_TRUE(k["correctness"]["max_rel_err"].is_null());
}

TEST(Commands, AblateRows) {
  const auto j = json::parse(run_command(config_for(Command::ablate)).report);
  ASSERT_EQ(j["rows"].size(), 7U);
  EXPECT_EQ(j["variant"], "initial");
  EXPECT_EQ(j["rows"][0]["reference_ms"], 14.4);
  EXPECT_EQ(j["rows"][6]["flags"], "NNYNN");
  EXPECT_FALSE(j["rows"][6]["numerically_valid"].get<bool>());
  const double ratio = j["ratios"]["read_reorder_off"];
  EXPECT_GE(ratio, 0.35);
  EXPECT_LE(ratio, 0.65);
}

TEST(Commands, Fft2dReport) {
  auto c = config_for(Command::fft2d);
  const auto j = json::parse(run_command(c).report);
  EXPECT_EQ(j["rows_per_core"], 8);
  EXPECT_TRUE(j["correctness"]["checked"].get<bool>());
  EXPECT_EQ(j["counters"]["noc_words"], 8192);
  EXPECT_EQ(j["reference"]["reference_ms"], 23.56);
}

TEST(Commands, Fft2dArrayInputAndDump) {
  const std::string in = temp_path("in.bin");
  const std::string out = temp_path("out.bin");
  Array2D delta{8, 16, ComplexBuffer(128)};
  delta.data.re()[0] = 1.0F;
  write_array(in, delta);
  auto c = config_for(Command::fft2d);
  c.input_path = in;
  c.dump_path = out;
  c.num_cores = 4;
  ASSERT_EQ(run_command(c).exit_code, kExitOk);
  const Array2D y = read_array(out);
  EXPECT_EQ(y.rows, 8U);
  EXPECT_EQ(y.cols, 16U);
  for (std::size_t i = 0; i < 128; ++i) EXPECT_EQ(y.data.re()[i], 1.0F);
  std::remove(in.c_str());
  std::remove(out.c_str());
}

TEST(Commands, SweepCardinalityAndHeader) {
  auto c = config_for(Command::sweep);
  c.sizes = {64, 256, 1024, 4096};
  c.variants = {"initial", "single_copy"};
  c.format = Format::csv;
  const auto out = run_command(c);
  ASSERT_EQ(out.exit_code, kExitOk);
  std::istringstream lines(out.report);
  std::string header, line;
  std::getline(lines, header);
  std::size_t rows = 0;
  while (std::getline(lines, line)) ++rows;
  EXPECT_EQ(rows, 8U);
  for (const char* counter : {"counters.mover_access_32", "counters.dram_access_32", "counters.thcon_access_32",
                              "counters.thcon_access_128", "counters.tile_ops", "counters.noc_words",
                              "counters.batch_residency"}) {
    EXPECT_NE(header.find(counter), std::string::npos) << counter;
  }
  EXPECT_EQ(run_command(c).report, out.report);
}

TEST(Commands, CoreCountSweep) {
  auto c = config_for(Command::sweep);
  c.rows = 32;
  c.cols = 32;
  c.core_counts = {1, 2, 4};
  c.variants = {"thcon"};
  const auto j = json::parse(run_command(c).report);
  ASSERT_EQ(j["points"].size(), 3U);
  EXPECT_EQ(j["points"][2]["num_cores"], 4);
}

TEST(Commands, ReportFilesAreByteIdentical) {
  const std::string a = temp_path("a.json");
  const std::string b = temp_path("b.json");
  for (Command cmd : {Command::fft1d, Command::ladder, Command::fft2d}) {
    auto c = config_for(cmd);
    c.n = 64;
    c.seed = 7;
    c.variant = cmd == Command::ladder ? "" : "initial";
    c.output_path = a;
    ASSERT_EQ(run_command(c).exit_code, kExitOk);
    c.output_path = b;
    ASSERT_EQ(run_command(c).exit_code, kExitOk);
    EXPECT_EQ(slurp(a), slurp(b)) << to_string(cmd);
    EXPECT_FALSE(slurp(a).empty());
  }
  std::remove(a.c_str());
  std::remove(b.c_str());
}
