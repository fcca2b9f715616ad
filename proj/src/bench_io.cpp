#include <bit>
#include <fstream>
#include <iterator>
#include <random>
#include <sstream>
#include <stdexcept>

#include "tfft/bench/bench.hpp"
#include "tfft/error.hpp"

namespace tfft::bench {

ComplexBuffer seeded_input(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  auto draw = [&gen] {
    const double unit = static_cast<double>(gen() >> 40) * 0x1p-24;
    return static_cast<float>(unit * 2.0 - 1.0);
  };
  ComplexBuffer out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.re()[i] = draw();
    out.im()[i] = draw();
  }
  return out;
}

namespace {

void put_u32(std::string& bytes, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) bytes.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

std::uint32_t get_u32(const std::string& bytes, std::size_t at) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[at + i])) << (8 * i);
  return v;
}

}  // namespace

void write_array(const std::string& path, const Array2D& array) {
  if (array.rows * array.cols != array.data.size()) {
    throw InvalidDimension("array data does not match its " + std::to_string(array.rows) + "x" +
                           std::to_string(array.cols) + " shape");
  }
  std::string bytes;
  bytes.reserve(12 + 8 * array.data.size());
  put_u32(bytes, static_cast<std::uint32_t>(array.rows));
  put_u32(bytes, static_cast<std::uint32_t>(array.cols));
  put_u32(bytes, 2);
  for (float v : array.data.re()) put_u32(bytes, std::bit_cast<std::uint32_t>(v));
  for (float v : array.data.im()) put_u32(bytes, std::bit_cast<std::uint32_t>(v));
  std::ofstream out(path, std::ios::binary);
  if (!out || !out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()))) {
    throw Error("cannot write array file " + path);
  }
}

Array2D read_array(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open array file " + path);
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (bytes.size() < 12) throw Error(path + ": truncated header");
  Array2D array;
  array.rows = get_u32(bytes, 0);
  array.cols = get_u32(bytes, 4);
  if (get_u32(bytes, 8) != 2) throw Error(path + ": expected 2 planes");
  const std::size_t count = array.rows * array.cols;
  if (bytes.size() != 12 + 8 * count) {
    throw Error(path + ": " + std::to_string(bytes.size()) + " bytes for a " + std::to_string(array.rows) + "x" +
                std::to_string(array.cols) + " array");
  }
  array.data = ComplexBuffer(count);
  for (std::size_t i = 0; i < count; ++i) {
    array.data.re()[i] = std::bit_cast<float>(get_u32(bytes, 12 + 4 * i));
    array.data.im()[i] = std::bit_cast<float>(get_u32(bytes, 12 + 4 * (count + i)));
  }
  return array;
}

sim::CostWeights parse_weights(std::string_view text, sim::CostWeights base) {
  while (!text.empty()) {
    const auto comma = text.find(',');
    const std::string_view item = text.substr(0, comma);
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) throw std::invalid_argument("weight '" + std::string(item) + "' is not name=value");
    const std::string value(item.substr(eq + 1));
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != value.size() || value.empty() || v < 0.0) {
      throw std::invalid_argument("weight value '" + value + "' is not a non-negative number");
    }
    base.set(item.substr(0, eq), v);
  }
  return base;
}

namespace {

void flatten_into(const nlohmann::ordered_json& node, const std::string& prefix, nlohmann::ordered_json& out) {
  for (const auto& [key, value] : node.items()) {
    const std::string name = prefix.empty() ? key : prefix + "." + key;
    if (value.is_object()) {
      flatten_into(value, name, out);
    } else {
      out[name] = value;
    }
  }
}

std::string csv_cell(const nlohmann::ordered_json& value) {
  if (value.is_null()) return "";
  std::string text = value.is_string() ? value.get<std::string>() : value.dump();
  if (text.find_first_of(",\"\n") != std::string::npos) {
    std::string quoted = "\"";
    for (char c : text) {
      if (c == '"') quoted += '"';
      quoted += c;
    }
    return quoted + "\"";
  }
  return text;
}

}  // namespace

nlohmann::ordered_json flatten(const nlohmann::ordered_json& object) {
  nlohmann::ordered_json out = nlohmann::ordered_json::object();
  flatten_into(object, "", out);
  return out;
}

std::string to_csv(const std::vector<nlohmann::ordered_json>& records) {
  if (records.empty()) return "";
  std::vector<std::string> columns;
  const auto header = flatten(records.front());
  for (const auto& [key, value] : header.items()) columns.push_back(key);
  std::ostringstream out;
  for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << csv_cell(columns[c]);
  out << '\n';
  for (const auto& record : records) {
    const auto flat = flatten(record);
    for (std::size_t c = 0; c < columns.size(); ++c) {
      out << (c ? "," : "");
      if (flat.contains(columns[c])) out << csv_cell(flat[columns[c]]);
    }
    out << '\n';
  }
  return out.str();
}

Command parse_command(std::string_view name) {
  if (name == "fft1d") return Command::fft1d;
  if (name == "fft2d") return Command::fft2d;
  if (name == "ablate") return Command::ablate;
  if (name == "ladder") return Command::ladder;
  if (name == "sweep") return Command::sweep;
  throw std::invalid_argument("unknown command '" + std::string(name) + "'");
}

const char* to_string(Command command) noexcept {
  switch (command) {
    case Command::fft1d: return "fft1d";
    case Command::fft2d: return "fft2d";
    case Command::ablate: return "ablate";
    case Command::ladder: return "ladder";
    case Command::sweep: return "sweep";
  }
  return "?";
}

}  // namespace tfft::bench
