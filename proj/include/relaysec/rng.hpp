#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace relaysec {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seeded random stream. Every non-uniform draw consumes a fixed number of
// engine words, so sequences are reproducible across platforms and across
// any interleaving of independent streams.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  // Deterministic substream derivation: the same (master, path) always
  // yields the same stream, independent of call order elsewhere.
  static RandomStream derive(std::uint64_t master,
                             std::initializer_list<std::uint64_t> path) {
    std::uint64_t h = splitmix64(master);
    for (std::uint64_t v : path) h = splitmix64(h ^ splitmix64(v));
    return RandomStream(h);
  }

  // Uniform on (0, 1]; never returns 0 so log() is safe.
  double uniform01() {
    return (static_cast<double>(engine_()) + 1.0) * 0x1.0p-64;
  }

  // Standard real Gaussian via Box-Muller (cosine branch).
  double normal() {
    const double u = uniform01();
    const double v = uniform01();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(two_pi * v);
  }

  // Circularly-symmetric complex Gaussian, zero mean, unit variance:
  // E[|z|^2] = 1.
  std::complex<double> complex_normal() {
    const double u = uniform01();
    const double v = uniform01();
    const double r = std::sqrt(-std::log(u));
    return {r * std::cos(two_pi * v), r * std::sin(two_pi * v)};
  }

  // Unit-modulus symbol with uniform random phase.
  std::complex<double> unit_modulus() {
    const double v = uniform01();
    return {std::cos(two_pi * v), std::sin(two_pi * v)};
  }

  std::uint64_t raw() { return engine_(); }

 private:
  static constexpr double two_pi = 6.283185307179586476925286766559;
  std::mt19937_64 engine_;
};

}  // namespace relaysec
