#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace hrlab {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Bad user input: unsupported parameter ranges, malformed frame specs, ...
// The CLI maps this to exit code 2.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numerical routine could not deliver its advertised accuracy
// (quadrature non-convergence, rejection acceptance rate collapse, ...).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// sgn(x) * |x|^q, the odd power used throughout the p-calculus
// (e.g. |g|^(p-2) g = signed_pow(g, p-1)).
inline double signed_pow(double x, double q) {
  if (x == 0.0) return 0.0;
  double m = std::pow(std::abs(x), q);
  return x < 0.0 ? -m : m;
}

// |x|^q with the convention 0^0 = 1 (matches std::pow, spelled out for clarity).
inline double abs_pow(double x, double q) { return std::pow(std::abs(x), q); }

inline bool is_finite(double x) { return std::isfinite(x); }

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw ConfigError(msg);
}

// ---------------------------------------------------------------------------
// Counter-based random streams.
//
// SplitMix64: the state is literally a counter advanced by a fixed odd
// constant, and each output is a finalizing hash of the counter.  Streams are
// keyed by (seed, stream index), so sample n of batch b is a pure function of
// (seed, b, n) -- results never depend on scheduling or worker count.
// ---------------------------------------------------------------------------
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream) {
    // Mix the stream index into the key so neighbouring streams decorrelate.
    state_ = mix(seed + 0x9E3779B97F4A7C15ULL * (stream + 1));
  }

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform double in [a, b).
  double uniform(double a, double b) { return a + (b - a) * uniform(); }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  std::uint64_t state_;
};

}  // namespace hrlab
