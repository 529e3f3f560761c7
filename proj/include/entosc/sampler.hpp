#pragma once

// Stochastic realizations of the coordinate fluctuations: at every grid time
// an independent zero-mean Gaussian draw whose standard deviation is the
// normalized amplitude at that time. Draws are a pure function of
// (seed, grid index), so realizations can be produced in any order or in
// parallel and still reproduce bit for bit.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "entosc/analytic.hpp"
#include "entosc/core_model.hpp"

namespace entosc {

/// Counter-based generator: the k-th output for a key is a SplitMix64
/// finalization of (key, k). No state beyond the key.
class CounterRng {
 public:
  explicit constexpr CounterRng(std::uint64_t key) : key_(mix(key ^ 0x6a09e667f3bcc909ULL)) {}

  constexpr std::uint64_t bits(std::uint64_t counter) const { return mix(key_ + counter * 0x9e3779b97f4a7c15ULL); }

  /// Uniform in (0, 1], 53-bit resolution.
  double uniform(std::uint64_t counter) const {
    return static_cast<double>((bits(counter) >> 11) + 1) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller on counters 2k and 2k+1.
  double normal(std::uint64_t k) const {
    const double u1 = uniform(2 * k);
    const double u2 = uniform(2 * k + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  static constexpr std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
};

struct RealizationConfig {
  std::uint64_t seed = 0;
  double dt = 0.1;
  double t_max = 10;

  static constexpr double kMaxSteps = 1e7;

  void validate() const {
    if (!(dt > 0) || !std::isfinite(dt)) throw std::invalid_argument("dt must be finite and > 0");
    if (!(t_max > 0) || !std::isfinite(t_max)) throw std::invalid_argument("t_max must be finite and > 0");
    if (t_max / dt > kMaxSteps) throw std::invalid_argument("t_max / dt exceeds 1e7 samples");
  }

  /// Grid t_k = k dt for every k with t_k <= t_max (up to rounding).
  std::size_t points() const { return static_cast<std::size_t>(std::floor(t_max / dt * (1 + 1e-12))) + 1; }
};

struct Realization {
  std::vector<double> times;
  std::vector<double> values;
  /// Standard deviation at each time; the plotted envelope is +/- this.
  std::vector<double> envelope;
};

template <typename Scalar>
Realization sample_realization(const SystemParams<Scalar>& params, BellState state, OscillatorIndex osc,
                               const RealizationConfig& config) {
  params.validate();
  config.validate();
  const CounterRng rng(config.seed);
  const std::size_t n = config.points();
  Realization out;
  out.times.reserve(n);
  out.values.reserve(n);
  out.envelope.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) * config.dt;
    const double sigma = static_cast<double>(normalized_x_fluctuation(params, state, osc, Scalar(t)));
    out.times.push_back(t);
    out.envelope.push_back(sigma);
    out.values.push_back(sigma * rng.normal(k));
  }
  return out;
}

}  // namespace entosc
