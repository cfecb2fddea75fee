#include "clockgame/resource.hpp"

#include <cmath>
#include <stdexcept>

namespace clockgame {

namespace {
constexpr double kAuditTol = 1e-9;
}

AuditReport entanglement_audit(const AncillaSpec& ancilla, int time_bins) {
  if (time_bins < 1) throw std::domain_error("entanglement_audit: time_bins must be >= 1");
  if (ancilla.parties() != 2)
    throw std::invalid_argument("entanglement_audit: bipartite ancillas only");

  AuditReport report;
  report.time_bins = time_bins;
  report.levels = ancilla.levels();
  report.measured_entropy = vn_entropy(ancilla.one_party_marginal());
  report.bound = std::log2(static_cast<double>(time_bins) + 1.0);
  report.margin = report.measured_entropy - report.bound;
  report.satisfied = report.measured_entropy >= report.bound - kAuditTol;
  return report;
}

double decode_probability_curve(const std::vector<cx>& coefficients, int levels) {
  if (levels < 2) throw std::domain_error("decode_probability_curve: levels must be >= 2");
  if (static_cast<int>(coefficients.size()) != levels)
    throw std::invalid_argument("decode_probability_curve: need one coefficient per level");
  double n2 = 0.0;
  cx sum = 0.0;
  for (const cx& c : coefficients) {
    n2 += std::norm(c);
    sum += c;
  }
  if (std::abs(n2 - 1.0) > 1e-9)
    throw std::invalid_argument("decode_probability_curve: coefficients must be normalized");
  return std::norm(sum) / levels;
}

int min_local_dimension(int time_bins) {
  if (time_bins < 1) throw std::domain_error("min_local_dimension: time_bins must be >= 1");
  return time_bins + 1;
}

CostComparison cost_comparison(int telescopes, int time_bins) {
  if (telescopes < 2) throw std::domain_error("cost_comparison: need at least two telescopes");
  if (time_bins < 1) throw std::domain_error("cost_comparison: time_bins must be >= 1");
  CostComparison cost;
  cost.telescopes = telescopes;
  cost.time_bins = time_bins;
  cost.gottesman_qubits = static_cast<long long>(time_bins) * telescopes;
  // each party holds ceil(log2(N+1)) qubits for the clock game, plus one
  // W-state qubit for the visibility measurement
  long long qubits_per_party = 0;
  while ((1LL << qubits_per_party) < time_bins + 1) ++qubits_per_party;
  cost.clockgame_qubits = telescopes + telescopes * qubits_per_party;
  return cost;
}

}  // namespace clockgame
