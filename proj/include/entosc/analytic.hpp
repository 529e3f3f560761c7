#pragma once

// Closed-form fluctuation amplitudes and uncertainty products of the coupled
// pair in the single-excitation Bell-like states. All amplitudes are
// normalized by the single-oscillator ground-state values sqrt(1/(2 omega))
// and sqrt(omega/2), so the non-coupled baselines are sqrt(3) and 1.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "entosc/core_model.hpp"

namespace entosc {

/// Raised when an operation needs a finite beat period but the coupling is zero.
class DegenerateInputError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// +1 when the oscillator's cosine term enters with a plus sign
/// (Psi+ on oscillator 1, Psi- on oscillator 2), -1 otherwise.
/// Coordinates, momenta and uncertainty products all share this sign.
constexpr int fluctuation_sign(BellState state, OscillatorIndex osc) {
  const bool plus_state = state == BellState::PsiPlus;
  const bool first = osc == OscillatorIndex::One;
  return plus_state == first ? 1 : -1;
}

template <typename Scalar>
Scalar normalized_x_fluctuation(const SystemParams<Scalar>& params, BellState state, OscillatorIndex osc,
                                Scalar t) {
  using std::cos;
  using std::sqrt;
  const Scalar e = eta(params);
  const Scalar c = cos(beat_frequency(params) * t);
  return sqrt(Scalar(1) + Scalar(1) / e + Scalar(fluctuation_sign(state, osc)) * c / sqrt(e));
}

template <typename Scalar>
Scalar normalized_p_fluctuation(const SystemParams<Scalar>& params, BellState state, OscillatorIndex osc,
                                Scalar t) {
  using std::cos;
  using std::sqrt;
  const Scalar e = eta(params);
  const Scalar c = cos(beat_frequency(params) * t);
  return sqrt(Scalar(1) + e + Scalar(fluctuation_sign(state, osc)) * sqrt(e) * c);
}

/// sqrt(eta) + 1/sqrt(eta): the period mean of every uncertainty product.
template <typename Scalar>
Scalar product_offset(const SystemParams<Scalar>& params) {
  using std::sqrt;
  const Scalar r = sqrt(eta(params));
  return r + Scalar(1) / r;
}

/// Normalized Delta x_i * Delta p_i. The radicand of the textbook expression
/// is the perfect square (s +/- cos)^2 with s >= 2, so the root is taken exactly.
template <typename Scalar>
Scalar uncertainty_product(const SystemParams<Scalar>& params, BellState state, OscillatorIndex osc, Scalar t) {
  using std::cos;
  const Scalar c = cos(beat_frequency(params) * t);
  return product_offset(params) + Scalar(fluctuation_sign(state, osc)) * c;
}

struct Baseline {
  double amplitude;
  double product;
};

/// Zero-coupling amplitude (same for x and p) and uncertainty product.
inline Baseline baseline_nc(BellState state, OscillatorIndex osc) {
  if (fluctuation_sign(state, osc) > 0) return {std::sqrt(3.0), 3.0};
  return {1.0, 1.0};
}

struct PeriodStats {
  double min_product = 0;
  double max_product = 0;
  double mean_product = 0;
  double fraction_below_nc = 0;
  double nc_baseline = 0;
};

/// Uncertainty-product statistics over one beat period 2 pi / |omega_Psi|,
/// sampled at the midpoints of a uniform grid.
template <typename Scalar>
PeriodStats period_statistics(const SystemParams<Scalar>& params, BellState state, OscillatorIndex osc,
                              int samples_per_period) {
  params.validate();
  if (!(params.coupling_ratio > Scalar(0)))
    throw DegenerateInputError("period statistics need coupling > 0: zero coupling has no beat period");
  if (samples_per_period < 16) throw std::invalid_argument("samples_per_period must be >= 16");

  const Scalar period = Scalar(2) * std::numbers::pi_v<Scalar> / std::abs(beat_frequency(params));
  const double baseline = baseline_nc(state, osc).product;
  PeriodStats stats;
  stats.nc_baseline = baseline;
  stats.min_product = std::numeric_limits<double>::infinity();
  stats.max_product = -std::numeric_limits<double>::infinity();
  double sum = 0;
  int below = 0;
  for (int k = 0; k < samples_per_period; ++k) {
    const Scalar t = period * (Scalar(k) + Scalar(0.5)) / Scalar(samples_per_period);
    const double up = static_cast<double>(uncertainty_product(params, state, osc, t));
    stats.min_product = std::min(stats.min_product, up);
    stats.max_product = std::max(stats.max_product, up);
    sum += up;
    if (up < baseline) ++below;
  }
  stats.mean_product = sum / samples_per_period;
  stats.fraction_below_nc = static_cast<double>(below) / samples_per_period;
  return stats;
}

/// Time series of the four normalized amplitudes and both uncertainty products.
struct FluctuationTrace {
  std::vector<double> times;
  std::vector<double> dx1, dx2, dp1, dp2;
  std::vector<double> up1, up2;

  std::size_t size() const { return times.size(); }

  void reserve(std::size_t n) {
    for (auto* v : {&times, &dx1, &dx2, &dp1, &dp2, &up1, &up2}) v->reserve(n);
  }
};

/// Uniform grid of n_points over [t_start, t_end], both ends included.
inline std::vector<double> uniform_grid(double t_start, double t_end, int n_points) {
  if (!std::isfinite(t_start) || !std::isfinite(t_end) || !(t_end > t_start))
    throw std::invalid_argument("time grid needs finite t_end > t_start");
  if (n_points < 2) throw std::invalid_argument("time grid needs at least 2 points");
  std::vector<double> grid(static_cast<std::size_t>(n_points));
  const double step = (t_end - t_start) / (n_points - 1);
  for (int k = 0; k < n_points; ++k) grid[static_cast<std::size_t>(k)] = t_start + step * k;
  grid.back() = t_end;
  return grid;
}

template <typename Scalar>
FluctuationTrace trace(const SystemParams<Scalar>& params, BellState state, double t_start, double t_end,
                       int n_points) {
  params.validate();
  FluctuationTrace out;
  out.times = uniform_grid(t_start, t_end, n_points);
  out.reserve(out.times.size());
  for (double t : out.times) {
    const auto one = OscillatorIndex::One;
    const auto two = OscillatorIndex::Two;
    const double x1 = static_cast<double>(normalized_x_fluctuation(params, state, one, Scalar(t)));
    const double x2 = static_cast<double>(normalized_x_fluctuation(params, state, two, Scalar(t)));
    const double p1 = static_cast<double>(normalized_p_fluctuation(params, state, one, Scalar(t)));
    const double p2 = static_cast<double>(normalized_p_fluctuation(params, state, two, Scalar(t)));
    out.dx1.push_back(x1);
    out.dx2.push_back(x2);
    out.dp1.push_back(p1);
    out.dp2.push_back(p2);
    out.up1.push_back(x1 * p1);
    out.up2.push_back(x2 * p2);
  }
  return out;
}

}  // namespace entosc
