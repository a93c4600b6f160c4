#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace quadsim {

// Deterministic standard-normal source. std::mt19937_64 output is pinned by
// the C++ standard, and the Box-Muller transform below consumes explicitly
// constructed 53-bit uniforms, so a given seed reproduces the same stream on
// every build. (std::normal_distribution is avoided on purpose: its
// algorithm is implementation-defined.)
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // Uniform draw in [0, 1).
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // Uniform draw in (0, 1]; never zero, so it is safe under log().
  double uniform_pos() {
    return (static_cast<double>(gen_() >> 11) + 1.0) * 0x1.0p-53;
  }

  // Standard normal draw. Box-Muller produces values in pairs; the second
  // one is cached and returned by the next call.
  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    constexpr double kTwoPi = 6.283185307179586476925286766559;
    const double u1 = uniform_pos();
    const double u2 = uniform_pos();
    const double rad = std::sqrt(-2.0 * std::log(u1));
    const double ang = kTwoPi * u2;
    spare_ = rad * std::sin(ang);
    has_spare_ = true;
    return rad * std::cos(ang);
  }

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace quadsim
