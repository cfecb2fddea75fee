#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "clockgame/qudit.hpp"
#include "clockgame/rng.hpp"

// Linear-optics phase extraction: closed-form outcome probabilities and Fisher
// information, a full amplitude-level simulation of the (n+1)-photon sector
// used as an exactness oracle, and maximum-likelihood phase estimation.

namespace clockgame {

struct ExtractionConfig {
  int pair_count = 1;           // n: number of shared ancilla pairs
  double reference_phase = 0.0; // δ, assumed exactly known
  double unknown_phase = 0.0;   // φ

  // The sector state has 2^(n+1) components; simulation paths cap n at 16.
  void validate(bool simulation = true) const;
};

// Amplitudes of the (n+1)-photon state indexed by (stellar side, ancilla
// pattern): index = stellar_left·2^n + pattern, where pattern bit i set means
// ancilla photon i sits at the left telescope. The left photon count of a
// component is stellar_left + popcount(pattern).
class SectorState {
 public:
  SectorState(int pair_count, std::vector<cx> amps);

  int pair_count() const { return pair_count_; }
  const std::vector<cx>& amps() const { return amps_; }
  int dim() const { return static_cast<int>(amps_.size()); }

  static int index(int stellar_left, unsigned pattern, int pair_count) {
    return stellar_left * (1 << pair_count) + static_cast<int>(pattern);
  }
  int left_photon_count(int index) const;

 private:
  int pair_count_;
  std::vector<cx> amps_;
};

// Stellar state ⊗ all ancilla pairs, expanded over the sector basis. The two
// abort components (left side empty / fully occupied) are included.
SectorState joint_state(const ExtractionConfig& config);

struct ProtocolOutcome {
  bool abort = false;
  int detected_count = 0;  // photons Alice saw (k+1); 0 or n+1 when aborting
  int alice_config = 0;    // j' within the sector's enumeration
  int bob_bit = 0;
};

// One sampled run: Alice's per-sector Fourier transform and configuration
// measurement, Bob's phase correction and rotated two-outcome measurement.
ProtocolOutcome run_protocol(const ExtractionConfig& config, SplitMix64& rng);

// p(bit'|k+1) = (1 ± 2√((n-k)(k+1))/(n+1)·cos(φ-δ))/2 for k in 0..n-1.
double outcome_probability(int pair_count, int k, double phi, double delta, int bit);

// Pr(k+1) = C(n+1, k+1)/2^(n+1)
double sector_probability(int pair_count, int k);

struct FisherReport {
  int pair_count = 0;
  std::vector<double> sector_probabilities;  // Pr(k+1) for k = 0..n-1
  std::vector<double> conditional_fisher;    // per-k contribution
  double total = 0.0;
  std::optional<double> average_over_phi;    // filled by average_fisher paths
};

// Removable singularities (both √-weights equal and φ = δ) evaluate to the
// continuity value 1.
FisherReport fisher_information(int pair_count, double phi, double delta);

// Mean Fisher information over a uniform φ grid with δ = 0.
double average_fisher(int pair_count, int phi_grid_size);

struct MleSample {
  int k;    // sector label k (detected_count - 1)
  int bit;  // Bob's outcome
};

struct MleResult {
  double phi_hat = 0.0;
  double std_error = 0.0;
  bool degenerate = false;  // uninformative likelihood (boundary solution)
};

// Golden-section maximization of the log-likelihood over [0, 2π) with three
// windowed restarts; the standard error comes from the observed information.
// cos(φ-δ) makes φ and 2δ-φ indistinguishable, so when a prior guess is given
// the mirror branch nearest to it is returned.
MleResult mle_estimate(int pair_count, const std::vector<MleSample>& samples, double delta,
                       std::optional<double> prior_guess = std::nullopt);

// Non-abort samples drawn from the closed-form distributions; `protocol_runs`
// counts runs including aborted ones.
std::vector<MleSample> draw_protocol_samples(const ExtractionConfig& config, int protocol_runs,
                                             SplitMix64& rng);

// --- instrumented simulation paths (exact amplitudes, no sampling) ----------

// Probability of Alice seeing each left photon count 0..n+1.
std::vector<double> alice_count_distribution(const ExtractionConfig& config);

// Bob's corrected conditional state for Alice outcome (detected_count, j'),
// indexed by the sector enumeration j. Identical for every j' by design.
std::vector<cx> bob_conditional_state(const ExtractionConfig& config, int detected_count,
                                      int alice_config);

// P(bob_bit | detected_count) computed from the simulated amplitudes.
double simulated_bit_probability(const ExtractionConfig& config, int detected_count, int bit);

// Number of Alice configurations in the sector with `detected_count` photons.
long long sector_size(int pair_count, int detected_count);

}  // namespace clockgame
