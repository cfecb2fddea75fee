#include "clockgame/resource.hpp"

#include <cmath>

#include "doctest.h"
#include "test_support.hpp"

using namespace clockgame;

namespace {

std::vector<cx> random_magnitudes(int levels, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<cx> coeffs(levels);
  double n2 = 0.0;
  for (cx& c : coeffs) {
    double m = 0.05 + rng.uniform01();
    c = m;
    n2 += m * m;
  }
  for (cx& c : coeffs) c /= std::sqrt(n2);
  return coeffs;
}

}  // namespace

TEST_CASE("entanglement audit of the winning ancilla is tight") {
  for (int N = 1; N <= 8; ++N) {
    AuditReport report = entanglement_audit(AncillaSpec::maximal(N + 1, 2), N);
    CHECK(report.bound == doctest::Approx(std::log2(N + 1.0)).epsilon(1e-15));
    CHECK(std::abs(report.margin) < 1e-9);
    CHECK(report.satisfied);
  }
}

TEST_CASE("skewed and product ancillas fall below the bound") {
  AuditReport skewed = entanglement_audit(
      AncillaSpec::schmidt({cx(std::sqrt(0.9)), cx(std::sqrt(0.1))}, 2), 1);
  CHECK(skewed.measured_entropy == doctest::Approx(0.469).epsilon(1e-3));
  const double binary_entropy = -0.9 * std::log2(0.9) - 0.1 * std::log2(0.1);
  CHECK(skewed.measured_entropy == doctest::Approx(binary_entropy).epsilon(1e-12));
  CHECK_FALSE(skewed.satisfied);

  for (int N = 1; N <= 4; ++N) {
    std::vector<cx> product(N + 1, cx(0.0));
    product[0] = 1.0;
    AuditReport report = entanglement_audit(AncillaSpec::schmidt(product, 2), N);
    CHECK(std::abs(report.measured_entropy) < 1e-12);
    CHECK_FALSE(report.satisfied);
  }
}

TEST_CASE("audit accepts density ancillas") {
  AncillaSpec mixed = AncillaSpec::density(density_from_state(ghz_state(4, 2)));
  AuditReport report = entanglement_audit(mixed, 3);
  CHECK(report.measured_entropy == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(report.satisfied);
}

TEST_CASE("decode probability curve") {
  std::vector<cx> uniform(4, cx(0.5));
  CHECK(decode_probability_curve(uniform, 4) == doctest::Approx(1.0).epsilon(1e-12));

  CHECK(decode_probability_curve({cx(std::sqrt(0.9)), cx(std::sqrt(0.1))}, 2) ==
        doctest::Approx(0.8).epsilon(1e-12));

  CHECK(decode_probability_curve({cx(1.0), cx(0.0)}, 2) == doctest::Approx(0.5).epsilon(1e-12));

  // phases matter even at uniform magnitude
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(decode_probability_curve({cx(s), cx(-s)}, 2) < 1e-12);

  CHECK_THROWS_AS(decode_probability_curve({cx(1.0)}, 1), std::domain_error);
  CHECK_THROWS_AS(decode_probability_curve({cx(1.0), cx(1.0)}, 2), std::invalid_argument);
}

TEST_CASE("uniform magnitudes maximize the decode probability") {
  for (int D = 2; D <= 6; ++D) {
    for (int trial = 0; trial < 1000; ++trial) {
      std::vector<cx> coeffs = random_magnitudes(D, derive_seed(8800 + D, trial));
      CHECK(decode_probability_curve(coeffs, D) <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("tightness: decode hits 1 exactly when the audit margin closes") {
  for (int N = 1; N <= 8; ++N) {
    const int D = N + 1;
    AncillaSpec maximal = AncillaSpec::maximal(D, 2);
    CHECK(decode_probability_curve(maximal.coefficients(), D) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(entanglement_audit(maximal, N).margin) < 1e-9);
  }
}

TEST_CASE("sub-bound ancillas lose the exact game strictly") {
  for (int D = 2; D <= 5; ++D) {
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<cx> coeffs = random_magnitudes(D, derive_seed(4141 + D, trial));
      AncillaSpec spec = AncillaSpec::schmidt(coeffs, 2);
      AuditReport report = entanglement_audit(spec, D - 1);
      GameConfig config;
      config.time_bins = D - 1;
      config.levels = D;
      config.parties = 2;
      config.time_bin = 1;
      config.phases = {0.4};
      const double p_win = analyze_exact(config, spec).win_probability;
      CHECK_FALSE(report.satisfied);
      CHECK(p_win < 1.0);
    }
  }
}

TEST_CASE("minimal local dimension") {
  CHECK(min_local_dimension(1) == 2);
  CHECK(min_local_dimension(7) == 8);
  CHECK(min_local_dimension(1023) == 1024);
  CHECK_THROWS_AS(min_local_dimension(0), std::domain_error);
}

TEST_CASE("qubit cost comparison") {
  CostComparison telescope = cost_comparison(5, 1023);
  CHECK(telescope.gottesman_qubits == 5115);
  CHECK(telescope.clockgame_qubits == 55);

  CostComparison tiny = cost_comparison(2, 1);
  CHECK(tiny.gottesman_qubits == 2);
  CHECK(tiny.clockgame_qubits == 4);

  CostComparison mid = cost_comparison(3, 255);
  CHECK(mid.gottesman_qubits == 765);
  CHECK(mid.clockgame_qubits == 27);

  // non-power-of-two bin counts round the per-party qubits up
  CostComparison rounded = cost_comparison(2, 2);
  CHECK(rounded.clockgame_qubits == 2 + 2 * 2);

  CHECK_THROWS_AS(cost_comparison(1, 8), std::domain_error);
  CHECK_THROWS_AS(cost_comparison(2, 0), std::domain_error);
}
