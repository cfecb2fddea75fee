#include "clockgame/noise.hpp"

#include <cmath>

#include "doctest.h"
#include "clockgame/game.hpp"
#include "test_support.hpp"

using namespace clockgame;
using test_support::max_abs_diff;

namespace {

NoiseParams random_rates(int levels, double delta_t, std::uint64_t seed) {
  SplitMix64 rng(seed);
  NoiseParams params;
  params.delta_t = delta_t;
  params.decay_rates.assign(2, std::vector<double>(levels - 1));
  params.dephasing_rates.assign(2, std::vector<double>(levels));
  for (auto& per_qudit : params.decay_rates)
    for (double& r : per_qudit) r = rng.uniform01();
  for (auto& per_qudit : params.dephasing_rates)
    for (double& r : per_qudit) r = rng.uniform01();
  return params;
}

// Z^n applied to one leg of a two-qudit density matrix.
DensityMatrix z_on_leg(const DensityMatrix& rho, int levels, int power, int leg) {
  std::vector<cx> out(rho.entries());
  const int dim = levels * levels;
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      const int digit_r = (leg == 0) ? r / levels : r % levels;
      const int digit_c = (leg == 0) ? c / levels : c % levels;
      out[static_cast<std::size_t>(r) * dim + c] *=
          root_of_unity(levels, static_cast<long long>(power) * (digit_r - digit_c));
    }
  }
  return DensityMatrix(rho.space(), std::move(out));
}

double trace_real(const DensityMatrix& rho) {
  double t = 0.0;
  for (int i = 0; i < rho.dim(); ++i) t += rho.entry(i, i).real();
  return t;
}

}  // namespace

TEST_CASE("zero rates reproduce the pure GHZ ancilla") {
  for (int D : {2, 3, 5}) {
    NoiseParams params = NoiseParams::uniform(D, 0.5, 0.0, 0.0);
    DensityMatrix ghz = density_from_state(ghz_state(D, 2));
    CHECK(max_abs_diff(damped_ancilla(D, params).rho.entries(), ghz.entries()) < 1e-15);
    CHECK(max_abs_diff(dephased_ancilla(D, params).rho.entries(), ghz.entries()) < 1e-15);
    CHECK(max_abs_diff(combined_noisy_ancilla(D, params).rho.entries(), ghz.entries()) < 1e-15);
  }
}

TEST_CASE("noisy constructors stay Hermitian with unit trace") {
  // the DensityMatrix constructor enforces both; spot-check the trace value
  for (int D = 2; D <= 8; ++D) {
    NoiseParams params = random_rates(D, 0.003, 900 + D);
    CHECK(trace_real(damped_ancilla(D, params).rho) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(trace_real(dephased_ancilla(D, params).rho) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(trace_real(combined_noisy_ancilla(D, params).rho) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("linear regime flag trips at the 0.1 cutoff") {
  CHECK(damped_ancilla(2, NoiseParams::uniform(2, 1.0, 0.05, 0.0)).within_linear_regime);
  CHECK_FALSE(damped_ancilla(2, NoiseParams::uniform(2, 1.0, 0.2, 0.0)).within_linear_regime);
}

TEST_CASE("dephasing leaves computational populations untouched") {
  const int D = 4;
  NoiseParams params = random_rates(D, 0.01, 17);
  DensityMatrix rho = dephased_ancilla(D, params).rho;
  DensityMatrix ghz = density_from_state(ghz_state(D, 2));
  for (int i = 0; i < rho.dim(); ++i)
    CHECK(std::abs(rho.entry(i, i) - ghz.entry(i, i)) < 1e-15);
}

TEST_CASE("Z^n leg independence survives noise") {
  for (int D : {2, 3, 4}) {
    NoiseParams params = random_rates(D, 0.004, 40 + D);
    for (const NoisyAncilla& noisy :
         {damped_ancilla(D, params), dephased_ancilla(D, params)}) {
      for (int n = 0; n < D; ++n) {
        DensityMatrix left = z_on_leg(noisy.rho, D, n, 0);
        DensityMatrix right = z_on_leg(noisy.rho, D, n, 1);
        CHECK(max_abs_diff(left.entries(), right.entries()) < 1e-12);
      }
    }
  }
}

TEST_CASE("pure GHZ decodes perfectly for every bin") {
  for (int D : {2, 4, 7}) {
    DensityMatrix ghz = density_from_state(ghz_state(D, 2));
    for (int n = 0; n < D; ++n)
      CHECK(noisy_win_probability(D, n, ghz, ReplyMode::Photon) ==
            doctest::Approx(1.0).epsilon(1e-12));
    CHECK(noisy_win_probability(D, 0, ghz, ReplyMode::Vacuum) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("worked win probabilities") {
  // amplitude damping: D = 2, ΔtΓ1 = 0.04 → 0.99
  NoiseParams damping = NoiseParams::uniform(2, 1.0, 0.04, 0.0);
  DensityMatrix damped = damped_ancilla(2, damping).rho;
  CHECK(noisy_win_probability(2, 1, damped, ReplyMode::Photon) ==
        doctest::Approx(0.99).epsilon(1e-12));
  CHECK(closed_form_pwin(2, damping, NoiseChannel::AmplitudeDamping) ==
        doctest::Approx(0.99).epsilon(1e-12));

  // dephasing: D = 4, ΔtΓ2 = 0.08 → 0.9925
  NoiseParams dephasing = NoiseParams::uniform(4, 1.0, 0.0, 0.08);
  DensityMatrix dephased = dephased_ancilla(4, dephasing).rho;
  CHECK(noisy_win_probability(4, 2, dephased, ReplyMode::Photon) ==
        doctest::Approx(0.9925).epsilon(1e-12));
  CHECK(closed_form_pwin(4, dephasing, NoiseChannel::Dephasing) ==
        doctest::Approx(0.9925).epsilon(1e-12));
}

TEST_CASE("closed forms match the simulated diagonal sums") {
  for (int D = 2; D <= 8; ++D) {
    for (std::uint64_t seed : {1u, 2u}) {
      NoiseParams params = random_rates(D, 0.002, 7000 + 13 * D + seed);
      const int n = static_cast<int>(seed) % D;

      NoiseParams damping_only = params;
      damping_only.dephasing_rates.assign(2, std::vector<double>(D, 0.0));
      CHECK(noisy_win_probability(D, n, damped_ancilla(D, params).rho, ReplyMode::Photon) ==
            doctest::Approx(closed_form_pwin(D, damping_only, NoiseChannel::AmplitudeDamping))
                .epsilon(1e-12));

      NoiseParams dephasing_only = params;
      dephasing_only.decay_rates.assign(2, std::vector<double>(D - 1, 0.0));
      CHECK(noisy_win_probability(D, n, dephased_ancilla(D, params).rho, ReplyMode::Photon) ==
            doctest::Approx(closed_form_pwin(D, dephasing_only, NoiseChannel::Dephasing))
                .epsilon(1e-12));

      CHECK(noisy_win_probability(D, n, combined_noisy_ancilla(D, params).rho,
                                  ReplyMode::Photon) ==
            doctest::Approx(closed_form_pwin(D, params, NoiseChannel::Both)).epsilon(1e-12));
    }
  }
}

TEST_CASE("linearized channel losses add exactly") {
  NoiseParams params = random_rates(5, 0.006, 333);
  const double both = closed_form_pwin(5, params, NoiseChannel::Both);
  const double amp = closed_form_pwin(5, params, NoiseChannel::AmplitudeDamping);
  const double deph = closed_form_pwin(5, params, NoiseChannel::Dephasing);
  CHECK(both == doctest::Approx(1.0 - (1.0 - amp) - (1.0 - deph)).epsilon(1e-15));
}

TEST_CASE("vacuum replies degrade by the same amount") {
  for (int D : {2, 3, 6}) {
    NoiseParams params = random_rates(D, 0.004, 555 + D);
    for (const NoisyAncilla& noisy : {damped_ancilla(D, params), dephased_ancilla(D, params),
                                      combined_noisy_ancilla(D, params)}) {
      const double photon = noisy_win_probability(D, 1 % D, noisy.rho, ReplyMode::Photon);
      const double vacuum = noisy_win_probability(D, 0, noisy.rho, ReplyMode::Vacuum);
      CHECK(photon == doctest::Approx(vacuum).epsilon(1e-12));
    }
  }
}

TEST_CASE("decoded bin distribution") {
  // pure GHZ: a delta at the encoded bin
  DensityMatrix ghz = density_from_state(ghz_state(3, 2));
  std::vector<double> delta_dist = decoded_bin_distribution(3, 2, ghz);
  CHECK(delta_dist[2] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(delta_dist[0]) < 1e-12);
  CHECK(std::abs(delta_dist[1]) < 1e-12);

  // uniform damping on D = 3: every wrong bin carries ΔtΓ1/D² exactly
  const double dt_gamma = 0.03;
  NoiseParams params = NoiseParams::uniform(3, 1.0, dt_gamma, 0.0);
  std::vector<double> dist = decoded_bin_distribution(3, 1, damped_ancilla(3, params).rho);
  double total = 0.0;
  for (int bin = 0; bin < 3; ++bin) {
    total += dist[bin];
    if (bin != 1) CHECK(dist[bin] == doctest::Approx(dt_gamma / 9.0).epsilon(1e-12));
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

  // wrong-bin masses stay equal even for non-uniform per-level rates
  for (int D : {3, 5, 8}) {
    NoiseParams rates = random_rates(D, 0.002, 808 + D);
    for (const NoisyAncilla& noisy : {damped_ancilla(D, rates), dephased_ancilla(D, rates)}) {
      std::vector<double> d = decoded_bin_distribution(D, 2 % D, noisy.rho);
      for (int bin = 0; bin < D; ++bin)
        if (bin != 2 % D) CHECK(d[bin] == doctest::Approx(d[(2 % D + 1) % D]).epsilon(1e-12));
    }
  }
}

TEST_CASE("game engine agrees with the diagonal-sum route") {
  // independent paths: the joint referee ⊗ ancilla Born enumeration versus
  // the one-leg Z^n Fourier diagonal sums
  const int D = 3;
  NoiseParams params = NoiseParams::uniform(D, 1.0, 0.05, 0.02);
  DensityMatrix noisy = combined_noisy_ancilla(D, params).rho;
  AncillaSpec ancilla = AncillaSpec::density(noisy);

  for (int n = 1; n <= D - 1; ++n) {
    GameConfig config;
    config.time_bins = D - 1;
    config.levels = D;
    config.parties = 2;
    config.time_bin = n;
    config.phases = {0.7};
    std::vector<double> from_game =
        decode_distribution(density_from_state(referee_state(config).to_state()), ancilla);
    std::vector<double> from_noise = decoded_bin_distribution(D, n, noisy);
    CHECK(max_abs_diff(from_game, from_noise) < 1e-12);
  }
}

TEST_CASE("integrator oracle basics") {
  // zero rates: GHZ survives any number of steps
  NoiseParams quiet = NoiseParams::uniform(3, 0.0, 0.0, 0.0);
  DensityMatrix evolved = lindblad_integrator_oracle(3, quiet, 1.0, 50);
  CHECK(max_abs_diff(evolved.entries(), density_from_state(ghz_state(3, 2)).entries()) < 1e-12);

  NoiseParams params = NoiseParams::uniform(4, 0.0, 1.0, 0.5);
  DensityMatrix rho = lindblad_integrator_oracle(4, params, 0.01, 200);
  CHECK(trace_real(rho) == doctest::Approx(1.0).epsilon(1e-10));

  CHECK_THROWS_AS(lindblad_integrator_oracle(4, params, 0.01, 0), std::domain_error);
}

TEST_CASE("linearization error shrinks quadratically") {
  // halving Δt·Γ quarters the max-norm gap between the first-order state and
  // the integrated one (Richardson-style scaling)
  const int D = 4;
  auto gap = [&](double dt) {
    NoiseParams params = NoiseParams::uniform(D, dt, 1.0, 0.0);
    DensityMatrix linear = damped_ancilla(D, params).rho;
    DensityMatrix exact = lindblad_integrator_oracle(D, params, dt, 1000);
    return max_abs_diff(linear.entries(), exact.entries());
  };
  const double coarse = gap(1e-3);
  const double fine = gap(5e-4);
  const double ratio = coarse / fine;
  CHECK(ratio > 3.2);
  CHECK(ratio < 4.8);
}
