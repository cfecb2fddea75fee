#pragma once

#include <vector>

#include "clockgame/game.hpp"
#include "clockgame/qudit.hpp"

// Entanglement-cost auditing: the log2(N+1) lower bound on the shared
// resource, the decode-probability law for general Schmidt coefficients, the
// minimal local dimension, and the telescopy qubit-cost comparison.

namespace clockgame {

struct AuditReport {
  int time_bins = 0;
  int levels = 0;
  double measured_entropy = 0.0;  // ebits of the ancilla's one-party marginal
  double bound = 0.0;             // log2(N+1)
  bool satisfied = false;         // measured >= bound - 1e-9
  double margin = 0.0;            // measured - bound
};

// Compares the entanglement entropy of a two-party ancilla against the
// log2(N+1) requirement for examining N time-bins.
AuditReport entanglement_audit(const AncillaSpec& ancilla, int time_bins);

// |Σ_j c_j|²/D: the exact probability that the Fourier outcomes decode the
// correct time-bin when the shared ancilla is Σ_j c_j|j..j⟩.
double decode_probability_curve(const std::vector<cx>& coefficients, int levels);

// Smallest number of distinguishable levels each local meter needs: N+1.
int min_local_dimension(int time_bins);

struct CostComparison {
  int telescopes = 0;
  int time_bins = 0;
  long long gottesman_qubits = 0;  // N·M: one distributed W state per bin
  long long clockgame_qubits = 0;  // M + M·ceil(log2(N+1))
};

CostComparison cost_comparison(int telescopes, int time_bins);

}  // namespace clockgame
