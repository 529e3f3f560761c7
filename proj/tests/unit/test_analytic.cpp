#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "entosc/analytic.hpp"
#include "random_cases.hpp"

using namespace entosc;
using entosc::testing::kOscillators;
using entosc::testing::kStates;

namespace {

constexpr auto kOne = OscillatorIndex::One;
constexpr auto kTwo = OscillatorIndex::Two;
constexpr auto kPlus = BellState::PsiPlus;
constexpr auto kMinus = BellState::PsiMinus;

/// Uncertainty product from the unsimplified radicand
/// 2 + eta + 1/eta + cos^2 -/+ (-1)^i 2 (sqrt(eta) + 1/sqrt(eta)) cos.
double product_from_radicand(const Params& p, BellState s, OscillatorIndex osc, double t) {
  const double e = eta(p);
  const double c = std::cos((1 - e) * p.omega * t);
  const double upper = s == kPlus ? 1.0 : -1.0;        // the upper/lower sign of the -/+
  const double parity = osc == kOne ? -1.0 : 1.0;      // (-1)^i
  const double sign = -upper * parity;
  return std::sqrt(2 + e + 1 / e + c * c + sign * 2 * (std::sqrt(e) + 1 / std::sqrt(e)) * c);
}

}  // namespace

TEST_CASE("sign helper covers the four combinations") {
  CHECK(fluctuation_sign(kPlus, kOne) == 1);
  CHECK(fluctuation_sign(kPlus, kTwo) == -1);
  CHECK(fluctuation_sign(kMinus, kOne) == -1);
  CHECK(fluctuation_sign(kMinus, kTwo) == 1);
}

TEST_CASE("non-coupled amplitudes") {
  const Params p(1.0, 0.0);
  for (double t : {0.0, 1.0, 17.5, 1e4}) {
    CHECK(normalized_x_fluctuation(p, kPlus, kOne, t) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
    CHECK(normalized_x_fluctuation(p, kPlus, kTwo, t) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(normalized_p_fluctuation(p, kPlus, kOne, t) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
    CHECK(normalized_p_fluctuation(p, kMinus, kOne, t) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(uncertainty_product(p, kPlus, kOne, t) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(uncertainty_product(p, kPlus, kTwo, t) == doctest::Approx(1.0).epsilon(1e-15));
  }
}

TEST_CASE("frozen values at g = 0.8, t = 0") {
  // mpmath at 30 digits; an independent Fock-space evolution agrees to 1e-15.
  const Params p(1.0, 0.8);
  CHECK(normalized_x_fluctuation(p, kPlus, kOne, 0.0) == doctest::Approx(1.5735512575941048).epsilon(1e-14));
  CHECK(normalized_p_fluctuation(p, kPlus, kOne, 0.0) == doctest::Approx(1.9335909562930186).epsilon(1e-14));
  CHECK(uncertainty_product(p, kPlus, kOne, 0.0) == doctest::Approx(3.0426044809474672).epsilon(1e-14));
  CHECK(product_offset(p) == doctest::Approx(2.0426044809474672).epsilon(1e-14));
}

TEST_CASE("amplitude bounds") {
  for (double g : {0.1, 0.8, 1.9}) {
    const Params p(1.0, g);
    const double e = eta(p);
    for (int k = 0; k < 500; ++k) {
      const double t = 0.37 * k;
      for (auto s : kStates)
        for (auto o : kOscillators) {
          const double dx = normalized_x_fluctuation(p, s, o, t);
          CHECK(dx >= std::sqrt(1 + 1 / e - 1 / std::sqrt(e)) - 1e-15);
          CHECK(dx <= std::sqrt(1 + 1 / e + 1 / std::sqrt(e)) + 1e-15);
        }
    }
  }
}

TEST_CASE("perfect-square product equals the radicand form and dx * dp") {
  for (const auto& tr : entosc::testing::random_triples(2000, 11)) {
    const Params p(1.0, tr.coupling);
    for (auto o : kOscillators) {
      const double up = uncertainty_product(p, tr.state, o, tr.t);
      CHECK(up == doctest::Approx(product_from_radicand(p, tr.state, o, tr.t)).epsilon(1e-13));
      const double dxdp = normalized_x_fluctuation(p, tr.state, o, tr.t) * normalized_p_fluctuation(p, tr.state, o, tr.t);
      CHECK(std::abs(up - dxdp) < 1e-12);
      CHECK(up >= product_offset(p) - 1 - 1e-12);
      CHECK(up >= 1.0 - 1e-12);
    }
  }
}

TEST_CASE("sum rules, swap symmetry and complementarity") {
  for (const auto& tr : entosc::testing::random_triples(1000, 5)) {
    const Params p(1.3, tr.coupling);
    const double e = eta(p);
    const double x1 = normalized_x_fluctuation(p, tr.state, kOne, tr.t);
    const double x2 = normalized_x_fluctuation(p, tr.state, kTwo, tr.t);
    const double p1 = normalized_p_fluctuation(p, tr.state, kOne, tr.t);
    const double p2 = normalized_p_fluctuation(p, tr.state, kTwo, tr.t);
    CHECK(std::abs(x1 * x1 + x2 * x2 - 2 * (1 + 1 / e)) < 1e-12);
    CHECK(std::abs(p1 * p1 + p2 * p2 - 2 * (1 + e)) < 1e-12);
    const BellState other = tr.state == kPlus ? kMinus : kPlus;
    CHECK(x1 == normalized_x_fluctuation(p, other, kTwo, tr.t));
    CHECK(p2 == normalized_p_fluctuation(p, other, kOne, tr.t));
    const double sum = uncertainty_product(p, tr.state, kOne, tr.t) + uncertainty_product(p, tr.state, kTwo, tr.t);
    CHECK(std::abs(sum - 2 * product_offset(p)) < 1e-12);
  }
}

TEST_CASE("baselines") {
  CHECK(baseline_nc(kPlus, kOne).amplitude == std::sqrt(3.0));
  CHECK(baseline_nc(kPlus, kOne).product == 3.0);
  CHECK(baseline_nc(kMinus, kOne).amplitude == 1.0);
  CHECK(baseline_nc(kMinus, kOne).product == 1.0);
  CHECK(baseline_nc(kMinus, kTwo).amplitude == std::sqrt(3.0));
  CHECK(baseline_nc(kMinus, kTwo).product == 3.0);
  CHECK(baseline_nc(kPlus, kTwo).product == 1.0);
}

TEST_CASE("period statistics") {
  const Params p(1.0, 0.8);
  const double s = product_offset(p);

  SUBCASE("mean converges to sqrt(eta) + 1/sqrt(eta)") {
    // Independent fine trapezoid quadrature of s + cos over one period.
    const int n = 200000;
    double acc = 0;
    for (int k = 0; k < n; ++k) acc += s + std::cos(2 * std::numbers::pi * k / n);
    const double quadrature = acc / n;
    const auto stats = period_statistics(p, kPlus, kOne, 4096);
    CHECK(stats.mean_product == doctest::Approx(quadrature).epsilon(1e-12));
    CHECK(stats.mean_product == doctest::Approx(2.0426044809474672).epsilon(1e-12));
    CHECK(stats.mean_product < 3.0);
    CHECK(stats.min_product <= stats.mean_product);
    CHECK(stats.mean_product <= stats.max_product);
    CHECK(stats.max_product > 3.0);
    CHECK(stats.nc_baseline == 3.0);
  }

  SUBCASE("fraction below the non-coupled level") {
    const double expected = std::acos(s - 3) / std::numbers::pi;
    CHECK(expected == doctest::Approx(0.90675042544925946).epsilon(1e-12));
    const auto stats = period_statistics(p, kPlus, kOne, 4096);
    CHECK(std::abs(stats.fraction_below_nc - expected) < 1.0 / 4096 + 1e-12);
  }

  SUBCASE("Heisenberg bound on pair 2") {
    const auto stats = period_statistics(p, kPlus, kTwo, 4096);
    CHECK(stats.min_product >= 1.0);
    CHECK(stats.nc_baseline == 1.0);
    CHECK(stats.fraction_below_nc == 0.0);
  }

  SUBCASE("invalid inputs") {
    CHECK_THROWS_AS(period_statistics(Params(1.0, 0.0), kPlus, kOne, 4096), DegenerateInputError);
    CHECK_THROWS_AS(period_statistics(p, kPlus, kOne, 15), std::invalid_argument);
  }
}

TEST_CASE("trace") {
  SUBCASE("zero coupling is flat") {
    const auto tr = trace(Params(1.0, 0.0), kPlus, 0.0, 10.0, 11);
    REQUIRE(tr.size() == 11);
    for (std::size_t k = 0; k < tr.size(); ++k) {
      CHECK(tr.times[k] == doctest::Approx(static_cast<double>(k)));
      CHECK(tr.dx1[k] == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
      CHECK(tr.up1[k] == doctest::Approx(3.0).epsilon(1e-15));
      CHECK(tr.up2[k] == doctest::Approx(1.0).epsilon(1e-15));
    }
  }

  SUBCASE("periodic over one beat period") {
    const Params p(1.0, 0.2);
    const double period = 2 * std::numbers::pi / std::abs(beat_frequency(p));
    const auto tr = trace(p, kPlus, 0.0, period, 257);
    CHECK(std::abs(tr.dx1.front() - tr.dx1.back()) < 1e-9);
    CHECK(std::abs(tr.up2.front() - tr.up2.back()) < 1e-9);
    for (std::size_t k = 1; k < tr.size(); ++k) CHECK(tr.times[k] > tr.times[k - 1]);
  }

  SUBCASE("columns agree with the pointwise functions") {
    const Params p(2.0, 0.8);
    const auto tr = trace(p, kMinus, 1.0, 30.0, 50);
    for (std::size_t k = 0; k < tr.size(); ++k) {
      CHECK(tr.dx2[k] == normalized_x_fluctuation(p, kMinus, kTwo, tr.times[k]));
      CHECK(tr.dp1[k] == normalized_p_fluctuation(p, kMinus, kOne, tr.times[k]));
      CHECK(tr.up1[k] == tr.dx1[k] * tr.dp1[k]);
      CHECK(tr.dx1[k] > 0);
    }
  }

  SUBCASE("invalid grids") {
    CHECK_THROWS_AS(trace(Params(1.0, 0.2), kPlus, 1.0, 1.0, 10), std::invalid_argument);
    CHECK_THROWS_AS(trace(Params(1.0, 0.2), kPlus, 0.0, 1.0, 1), std::invalid_argument);
  }
}

TEST_CASE("stronger coupling lowers both extremes of dx1") {
  double prev_max = 1e9, prev_min = 1e9;
  for (double g : {0.0, 0.2, 0.4, 0.6, 0.8}) {
    const Params p(1.0, g);
    const double span = g > 0 ? 2 * std::numbers::pi / std::abs(beat_frequency(p)) : 1.0;
    const auto tr = trace(p, kPlus, 0.0, span, 2001);
    const auto [lo, hi] = std::minmax_element(tr.dx1.begin(), tr.dx1.end());
    CHECK(*hi < prev_max);
    CHECK(*lo < prev_min);
    prev_max = *hi;
    prev_min = *lo;
  }
}
