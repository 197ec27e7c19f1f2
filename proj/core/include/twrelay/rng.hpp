#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace twrelay {

/// splitmix64 finalizer; used to derive well-mixed per-stream seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Deterministic random stream keyed by (seed, stream index).
///
/// Stream `r` of seed `s` is reachable without generating streams 0..r-1,
/// so Monte-Carlo realizations can run in any order on any number of
/// workers and still draw identical values. All outputs are fully
/// specified by the C++ standard (mersenne engine) plus IEEE-754
/// arithmetic, so sequences are bit-reproducible.
class StreamRng {
 public:
  StreamRng(std::uint64_t seed, std::uint64_t stream)
      : engine_(splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL))) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in (0, 1].
  double uniform_pos() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  /// Uniform double in [0, 1).
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Circularly-symmetric complex Gaussian CN(0,1): real and imaginary
  /// parts each N(0, 1/2). Box-Muller on two integer draws.
  std::complex<double> complex_gaussian() {
    const double radius = std::sqrt(-std::log(uniform_pos()));
    const double angle = 2.0 * M_PI * uniform();
    return {radius * std::cos(angle), radius * std::sin(angle)};
  }

 private:
  std::mt19937_64 engine_;
};

/// FNV-1a over a byte range; stable across platforms and runs.
inline std::uint64_t fnv1a(const void* data, std::size_t len, std::uint64_t h = 0xcbf29ce484222325ULL) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace twrelay
