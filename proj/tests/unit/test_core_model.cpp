#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "entosc/core_model.hpp"
#include "entosc/fock_oracle.hpp"

using namespace entosc;

TEST_CASE("params reject invalid values") {
  CHECK_THROWS_AS(Params(0.0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(Params(-1.0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(Params(1.0, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(Params(1.0, NAN), std::invalid_argument);
  CHECK_NOTHROW(Params(1.0, 0.0));
}

TEST_CASE("eta") {
  CHECK(eta(Params(1.0, 0.0)) == 1.0);
  CHECK(eta(Params(1.0, 1.0)) == doctest::Approx(1.7320508075688772).epsilon(1e-15));
  CHECK(eta(Params(3.0, 0.8)) == doctest::Approx(1.5099668870541499).epsilon(1e-15));

  double previous = 0;
  for (int k = 0; k <= 200; ++k) {
    const double e = eta(Params(1.0, 0.01 * k));
    CHECK(e >= 1.0);
    CHECK(e > previous);
    previous = e;
  }
}

TEST_CASE("eta matches the eigenfrequency ratio of the coupled Hamiltonian") {
  // Lowest two excitation gaps of the matrix Hamiltonian are omega_+ and omega_-.
  const Params params(1.0, 0.8);
  const auto basis = TwoModeBasis<double>::for_params(params, 14);
  const HermitianSpectrum<double> spec(coupled_hamiltonian(params, basis));
  const double slow = spec.energies(1) - spec.energies(0);
  const double fast = spec.energies(2) - spec.energies(0);
  CHECK(fast / slow == doctest::Approx(eta(params)).epsilon(1e-10));
}

TEST_CASE("mode frequencies") {
  CHECK(mode_frequency(Params(1.0, 0.5), ModeIndex::Plus) == 1.0);
  CHECK(mode_frequency(Params(1.0, 0.0), ModeIndex::Minus) == 1.0);
  CHECK(mode_frequency(Params(2.0, 1.0), ModeIndex::Minus) == doctest::Approx(3.4641016151377544).epsilon(1e-15));

  // Oracle eigenfrequency at omega = 2, g = 1.
  const Params params(2.0, 1.0);
  const HermitianSpectrum<double> spec(coupled_hamiltonian(params, TwoModeBasis<double>::for_params(params, 14)));
  CHECK(spec.energies(2) - spec.energies(0) == doctest::Approx(3.4641016151377544).epsilon(1e-9));

  for (double g : {0.0, 0.1, 0.7, 1.3, 4.0}) {
    const Params p(1.7, g);
    CHECK(mode_frequency(p, ModeIndex::Minus) >= mode_frequency(p, ModeIndex::Plus));
    CHECK(mode_frequency(p, ModeIndex::Minus) / mode_frequency(p, ModeIndex::Plus) ==
          doctest::Approx(eta(p)).epsilon(1e-15));
  }
}

TEST_CASE("beat frequency") {
  CHECK(beat_frequency(Params(1.0, 0.0)) == 0.0);
  CHECK(beat_frequency(Params(1.0, 1.0)) == doctest::Approx(-0.7320508075688772).epsilon(1e-15));
  // Below omega throughout 0 <= g < 1; the crossover sits at eta = 2, g = sqrt(3/2).
  CHECK(std::abs(beat_frequency(Params(1.0, 0.999999))) < 1.0);
  CHECK(std::abs(beat_frequency(Params(1.0, std::sqrt(1.5)))) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(beat_frequency(Params(1.0, std::sqrt(1.5) - 1e-6))) < 1.0);
  CHECK(std::abs(beat_frequency(Params(1.0, std::sqrt(1.5) + 1e-6))) > 1.0);

  for (double g : {0.0, 0.2, 0.5, 0.99, 1.0, 2.5}) {
    const Params p(1.3, g);
    CHECK(beat_frequency(p) <= 0.0);
    CHECK(beat_frequency(p) == mode_frequency(p, ModeIndex::Plus) - mode_frequency(p, ModeIndex::Minus));
    CHECK((std::abs(beat_frequency(p)) < p.omega) == (g < std::sqrt(1.5)));
  }
}

TEST_CASE("templated on scalar") {
  const SystemParams<long double> p(1.0L, 0.8L);
  CHECK(static_cast<double>(eta(p)) == doctest::Approx(1.5099668870541499));
  const SystemParams<float> pf(1.0f, 1.0f);
  CHECK(beat_frequency(pf) == doctest::Approx(-0.7320508f));
}
