#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace cdlab {

using Vector = std::vector<double>;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DimensionError : Error {
  using Error::Error;
};
struct ParameterError : Error {
  using Error::Error;
};
struct SolverError : Error {
  using Error::Error;
};
struct AssemblyError : Error {
  using Error::Error;
};
struct GeometryError : Error {
  using Error::Error;
};
struct ParseError : Error {
  using Error::Error;
};

// Deterministic splitmix64-based generator; identical streams on every
// platform, unlike <random> distributions.
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed = 0x9e3779b97f4a7c15ULL) : state(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // uniform in [0, 1)
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  // uniform in [-1, 1]
  double pm1() { return uniform(-1.0, 1.0); }

  Vector vector(std::size_t n, double a = -1.0, double b = 1.0) {
    Vector v(n);
    for (auto& x : v) x = uniform(a, b);
    return v;
  }
};

}  // namespace cdlab
