#pragma once

#include <vector>

#include "clockgame/qudit.hpp"

// Linearized Lindblad noise on the two-qudit ancilla (amplitude damping and
// dephasing), the closed-form win probabilities, and a fixed-step integrator
// of the full master equation used as an independent validation oracle.

namespace clockgame {

// Per-level rates for the two ancilla qudits. decay_rates[i][m] is the decay
// rate of the (m, m+1) level pair of qudit i (D-1 entries per qudit);
// dephasing_rates[i][m] is the dephasing rate of level m (D entries).
struct NoiseParams {
  double delta_t = 0.0;
  std::vector<std::vector<double>> decay_rates;
  std::vector<std::vector<double>> dephasing_rates;

  // Totals spread uniformly over both qudits and all levels.
  static NoiseParams uniform(int levels, double delta_t, double total_decay,
                             double total_dephasing);

  double total_decay() const;
  double total_dephasing() const;
  // The first-order expressions hold for Δt·(Γ1+Γ2) small; 0.1 is the
  // auditable cutoff used throughout.
  bool within_linear_regime() const;
  void validate(int levels) const;
};

struct NoisyAncilla {
  DensityMatrix rho;
  bool within_linear_regime;
};

// First-order ancilla states built term by term from the linearized master
// equation: GHZ projector, jump terms, anticommutator depletion.
NoisyAncilla damped_ancilla(int levels, const NoiseParams& params);
NoisyAncilla dephased_ancilla(int levels, const NoiseParams& params);
// Both channels at first order (the deviations are additive).
NoisyAncilla combined_noisy_ancilla(int levels, const NoiseParams& params);

// Photon mode: apply Z^n to one leg and score decoded bin n. Vacuum mode: the
// referee sent nothing, the ancilla is left alone and bin 0 must come out.
enum class ReplyMode { Photon, Vacuum };

// Sum of Fourier-basis diagonal entries with (p̃+q̃) mod D equal to the target
// bin, i.e. the probability of decoding the correct time-bin.
double noisy_win_probability(int levels, int time_bin, const DensityMatrix& ancilla,
                             ReplyMode mode);

// Full decoded-bin distribution (photon mode with Z^n applied).
std::vector<double> decoded_bin_distribution(int levels, int time_bin,
                                             const DensityMatrix& ancilla);

enum class NoiseChannel { AmplitudeDamping, Dephasing, Both };

// 1 - Δt(D-1)/D²·(Γ1 + Γ2/2) and its single-channel specializations.
double closed_form_pwin(int levels, const NoiseParams& params, NoiseChannel channel);

// Classic RK4 integration of the full master equation from the GHZ state.
// Kept free of the linearized expressions above so the two routes stay
// independent. Raises if the trace drifts by more than 1e-8.
DensityMatrix lindblad_integrator_oracle(int levels, const NoiseParams& params, double total_time,
                                         int steps);

}  // namespace clockgame
