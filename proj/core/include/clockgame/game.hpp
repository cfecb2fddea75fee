#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "clockgame/qudit.hpp"
#include "clockgame/rng.hpp"

// The clock-game protocol engine: referee state preparation (pure, mixed,
// multi-party), the controlled-Z^n strategy, time-bin decoding, referee
// verification and win-probability evaluation.
//
// The referee's state lives in the reduced single-excitation basis
// {vacuum} ∪ {(party p, bin m)} of dimension K·N + 1, with the vacuum at
// index 0 and component (p, m) at 1 + p·N + (m-1).

namespace clockgame {

struct GameConfig {
  int time_bins = 1;  // N: number of time-bins the referee may use
  int levels = 2;     // D: levels per ancilla qudit
  int parties = 2;    // K
  int time_bin = 1;   // n in 0..N; 0 means the referee sends the vacuum

  // K-1 relative phases (a single phase for the two-party game); party 1's
  // phase is fixed to 0.
  std::vector<double> phases = {0.0};

  // The winning strategy needs N <= D-1. Negative tests may lift the check.
  bool allow_unwinnable = false;

  void validate() const;
};

class ReducedRefereeState {
 public:
  ReducedRefereeState(int time_bins, int parties, std::vector<cx> amps);

  int time_bins() const { return time_bins_; }
  int parties() const { return parties_; }
  int dim() const { return static_cast<int>(amps_.size()); }
  const std::vector<cx>& amps() const { return amps_; }

  static constexpr int vacuum_index() { return 0; }
  // party in 0..K-1, bin in 1..N
  int component_index(int party, int bin) const;

  StateVector to_state() const;

 private:
  int time_bins_;
  int parties_;
  std::vector<cx> amps_;
};

// Ancilla resource shared by the K parties: the maximally entangled qudit
// state, a generalized-Schmidt pure state Σ_j c_j |j⟩^⊗K, or an arbitrary
// density matrix over the K qudits.
class AncillaSpec {
 public:
  enum class Kind { Maximal, Schmidt, Density };

  static AncillaSpec maximal(int levels, int parties);
  static AncillaSpec schmidt(std::vector<cx> coefficients, int parties);
  static AncillaSpec density(DensityMatrix rho);

  Kind kind() const { return kind_; }
  int levels() const { return levels_; }
  int parties() const { return parties_; }

  // Schmidt coefficients (uniform for Kind::Maximal). Empty for Kind::Density.
  const std::vector<cx>& coefficients() const { return coefficients_; }

  // Pure ancilla state over K qudits; throws for Kind::Density.
  StateVector pure_state() const;
  DensityMatrix density_matrix() const;
  // Reduced state of one party's qudit (diagonal |c_j|^2 for pure kinds).
  DensityMatrix one_party_marginal() const;

 private:
  AncillaSpec(Kind kind, int levels, int parties) : kind_(kind), levels_(levels), parties_(parties) {}

  Kind kind_;
  int levels_;
  int parties_;
  std::vector<cx> coefficients_;
  std::optional<DensityMatrix> rho_;
};

struct RoundRecord {
  std::vector<int> outcomes;  // Fourier measurement results x_1..x_K
  int decoded_bin = 0;        // (Σ x_i) mod D
  bool referee_accept = false;
  double post_fidelity = 0.0;  // referee acceptance probability of this round
  std::uint64_t seed = 0;
};

// Weak-thermal stellar source: per-bin single-photon probability epsilon1 and
// a discrete set of point sources (probability, phase).
struct PointSource {
  double probability;
  double phase;
};

struct StellarModel {
  int time_bins = 1;
  double epsilon1 = 0.01;
  std::vector<PointSource> sources;

  void validate() const;
  // Probability that exactly one photon arrives within the N bins.
  double single_photon_probability() const;
  // ν = Σ_q p_q exp(-i φ_q)
  cx visibility() const;
};

// --- referee side -----------------------------------------------------------

// n = 0 yields the vacuum; n >= 1 a single excitation in bin n shared
// coherently across the K parties (W state for K > 2) with party-1 phase 0.
ReducedRefereeState referee_state(const GameConfig& config);

// Two-party mixed state of the incoming stellar radiation in the reduced
// basis: (1-ε)·vacuum + (ε/N)·Σ_i Σ_q p_q |Ψ_{φ_q,i}⟩⟨Ψ_{φ_q,i}|.
DensityMatrix stellar_state(const StellarModel& model);

// Acceptance probability of the referee's projective check: fidelity of the
// returned state with the encoded state (vacuum for n = 0).
double referee_verify(const ReducedRefereeState& post, const GameConfig& config);
double referee_verify(const DensityMatrix& post, const GameConfig& config);

// --- strategy side ----------------------------------------------------------

// Joint referee ⊗ ancilla state after every party applied its CZ^n ladder:
// component (party p, bin m) ⊗ |j_1..j_K⟩ gains phase exp(2πi·m·j_p/D); the
// vacuum component is untouched.
StateVector apply_strategy(const ReducedRefereeState& referee, const AncillaSpec& ancilla);
DensityMatrix apply_strategy(const DensityMatrix& referee, const AncillaSpec& ancilla);

int decode_timebin(const std::vector<int>& outcomes, int levels);

// One sampled round: strategy, Fourier measurement of each party's qudit,
// decoding, and the referee's (sampled) verification.
RoundRecord play_round(const GameConfig& config, const AncillaSpec& ancilla, std::uint64_t seed);

// --- exact analysis ---------------------------------------------------------

struct ExactAnalysis {
  std::vector<double> decode_distribution;  // probability of each decoded bin
  double decode_probability = 0.0;          // mass at the configured bin
  double win_probability = 0.0;             // decode correct AND referee accepts
  double mean_acceptance = 0.0;             // Σ_outcomes p(outcome)·fidelity
  double min_branch_fidelity = 1.0;         // worst per-outcome referee fidelity
};

// Born sums enumerated over all D^K Fourier outcomes; no sampling.
ExactAnalysis analyze_exact(const GameConfig& config, const AncillaSpec& ancilla);

// Decode-bin distribution for an arbitrary referee density matrix in the
// reduced basis (the density-matrix route; used to cross-check mixture
// linearity against the pure-branch route).
std::vector<double> decode_distribution(const DensityMatrix& referee, const AncillaSpec& ancilla);

enum class WinMode { Exact, MonteCarlo };

struct WinEstimate {
  double p_win = 0.0;
  double std_error = 0.0;  // 0 in exact mode
};

// Win probability at one configuration point.
WinEstimate win_probability(const GameConfig& config, const AncillaSpec& ancilla, WinMode mode,
                            std::uint64_t trials = 0, std::uint64_t seed = 0);

// Average over n uniform on {0..N} and the relative phase on a uniform grid
// of [0, 2π) (all K-1 phases swept together).
WinEstimate average_win_probability(int time_bins, int levels, int parties,
                                    const AncillaSpec& ancilla, WinMode mode, int phi_grid,
                                    std::uint64_t trials = 0, std::uint64_t seed = 0);

// Exact win probability against a stellar source (two parties): the referee
// verifies the branch she actually sent, so the result is the
// mixture-weighted average over vacuum and per-bin point-source branches.
double stellar_win_probability(const StellarModel& model, const AncillaSpec& ancilla);

}  // namespace clockgame
