#pragma once

// Seeded sampling. std::mt19937_64 has a standard-mandated output sequence and the
// float conversion below is explicit, so samples are identical on every platform.

#include <cstdint>
#include <random>

#include "weyllab/algebra.hpp"
#include "weyllab/phase_space.hpp"

namespace weyllab {

inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Seed of trial `index` under master seed `seed`; independent of scheduling.
inline std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ (index * 0xD1B54A32D192ED03ull + 1));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Real and imaginary parts uniform in [-1, 1).
  cplx complex() { return {uniform(-1.0, 1.0), uniform(-1.0, 1.0)}; }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n; }
  std::uint64_t bits() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

inline AlgebraElement random_element(const AlgebraSpec& a, Rng& rng) {
  AlgebraElement e = a.zero();
  for (cplx& c : e.coords) c = rng.complex();
  return e;
}

inline DualFunctional random_functional(const AlgebraSpec& a, Rng& rng) {
  DualFunctional f{std::vector<cplx>(a.dim())};
  for (cplx& c : f.coords) c = rng.complex();
  return f;
}

inline PhaseFunction random_function(const GroupSpec& g, const AlgebraSpec& a, Rng& rng,
                                     ValueKind kind = ValueKind::primal) {
  PhaseFunction f(g, a, kind);
  for (cplx& c : f.coords()) c = rng.complex();
  return f;
}

inline PhasePoint random_point(const GroupSpec& g, Rng& rng) {
  return {rng.index(g.cardinality()), rng.index(g.cardinality())};
}

}  // namespace weyllab
