#include <stdexcept>
#include <string>

#include "tfft/kernels/variant.hpp"

namespace tfft::kernels {

const std::vector<KernelVariant>& ladder() {
  using sim::Engine;
  static const std::vector<KernelVariant> variants = {
      {"initial", 0, Engine::baby_core, 32, ReorderScheme::two_reorder},
      {"chunked", 1, Engine::baby_core, 32, ReorderScheme::two_reorder},
      {"thcon", 1, Engine::thcon, 32, ReorderScheme::two_reorder},
      {"wide128", 1, Engine::thcon, 128, ReorderScheme::two_reorder},
      {"single_copy", 1, Engine::thcon, 128, ReorderScheme::one_reorder},
  };
  return variants;
}

const KernelVariant& variant_by_name(std::string_view name) {
  for (const auto& v : ladder()) {
    if (v.name == name) return v;
  }
  throw std::invalid_argument("unknown kernel variant '" + std::string(name) +
                              "' (expected initial, chunked, thcon, wide128 or single_copy)");
}

AblationFlags AblationFlags::parse(std::string_view yn) {
  if (yn.size() != 5) {
    throw std::invalid_argument("flags must be five Y/N characters, got '" + std::string(yn) + "'");
  }
  bool bits[5];
  for (std::size_t i = 0; i < 5; ++i) {
    const char c = yn[i];
    if (c == 'Y' || c == 'y') {
      bits[i] = true;
    } else if (c == 'N' || c == 'n') {
      bits[i] = false;
    } else {
      throw std::invalid_argument("flags must be five Y/N characters, got '" + std::string(yn) + "'");
    }
  }
  return AblationFlags{bits[0], bits[1], bits[2], bits[3], bits[4]};
}

std::string AblationFlags::str() const {
  std::string s;
  for (bool b : {external_read, read_reorder, compute, write_reorder, external_write}) s += b ? 'Y' : 'N';
  return s;
}

}  // namespace tfft::kernels
