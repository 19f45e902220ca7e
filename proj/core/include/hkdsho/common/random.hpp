#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>

namespace hkdsho {

/// Seeded generator with portable uniform draws.
///
/// The standard distributions are implementation-defined, so draws are built
/// directly from the 64-bit engine output. Same seed, same sequence, on any
/// conforming standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, 1) with 53 bits of resolution.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on [0, n). n must be positive.
  std::size_t uniform_index(std::size_t n);

  /// Independent stream seed derived from a base seed and a stream label.
  static std::uint64_t derive(std::uint64_t seed, std::string_view stream);

 private:
  std::mt19937_64 engine_;
};

}  // namespace hkdsho
