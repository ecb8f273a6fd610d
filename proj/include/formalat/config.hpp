#pragma once

#include <cstddef>
#include <cstdlib>
#include <string>

namespace formalat {

/// Size limits shared by every module. The element cap bounds explicit
/// element enumeration; the table cap bounds Cayley-table construction,
/// which every lattice-level computation needs.
struct Caps {
  std::size_t elements = 20000;
  std::size_t subgroups = 50000;
  std::size_t table = 4096;

  /// Defaults, with FORMALAT_CAP overriding the element cap when set.
  static Caps from_env() {
    Caps caps;
    if (const char* env = std::getenv("FORMALAT_CAP"); env != nullptr && *env != '\0') {
      char* end = nullptr;
      const unsigned long long value = std::strtoull(env, &end, 10);
      if (end != nullptr && *end == '\0' && value > 0) caps.elements = static_cast<std::size_t>(value);
    }
    return caps;
  }
};

}  // namespace formalat
