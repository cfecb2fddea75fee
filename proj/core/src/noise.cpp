#include "clockgame/noise.hpp"

#include <cmath>
#include <stdexcept>

namespace clockgame {

namespace {

// Flat row-major complex matrices over the two-qudit space, dimension D².
using Matrix = std::vector<cx>;

int pair_dim(int levels) { return levels * levels; }

Matrix zero_matrix(int dim) { return Matrix(static_cast<std::size_t>(dim) * dim, cx(0.0)); }

cx& at(Matrix& m, int dim, int r, int c) { return m[static_cast<std::size_t>(r) * dim + c]; }
cx get(const Matrix& m, int dim, int r, int c) { return m[static_cast<std::size_t>(r) * dim + c]; }

// |a,b⟩ index
int idx(int levels, int a, int b) { return a * levels + b; }

// (1/D)·Σ_{j,k}|j,j⟩⟨k,k|
Matrix ghz_projector(int levels) {
  const int dim = pair_dim(levels);
  Matrix m = zero_matrix(dim);
  for (int j = 0; j < levels; ++j)
    for (int k = 0; k < levels; ++k)
      at(m, dim, idx(levels, j, j), idx(levels, k, k)) = 1.0 / levels;
  return m;
}

DensityMatrix to_density(int levels, Matrix m) {
  return DensityMatrix(HilbertSpace({levels, levels}), std::move(m));
}

Matrix matmul(const Matrix& a, const Matrix& b, int dim) {
  Matrix out = zero_matrix(dim);
  for (int r = 0; r < dim; ++r) {
    for (int k = 0; k < dim; ++k) {
      const cx v = get(a, dim, r, k);
      if (v == cx(0.0)) continue;
      for (int c = 0; c < dim; ++c) out[static_cast<std::size_t>(r) * dim + c] += v * get(b, dim, k, c);
    }
  }
  return out;
}

Matrix adjoint(const Matrix& a, int dim) {
  Matrix out(a.size());
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) out[static_cast<std::size_t>(r) * dim + c] = std::conj(get(a, dim, c, r));
  return out;
}

// Jump operators of the full master equation, embedded in the two-qudit space.
std::vector<Matrix> lindblad_operators(int levels, const NoiseParams& params) {
  const int dim = pair_dim(levels);
  std::vector<Matrix> ops;
  for (int qudit = 0; qudit < 2; ++qudit) {
    for (int m = 0; m + 1 < levels; ++m) {
      const double rate = params.decay_rates[qudit][m];
      if (rate == 0.0) continue;
      Matrix L = zero_matrix(dim);
      const double amp = std::sqrt(rate);
      for (int other = 0; other < levels; ++other) {
        // √Γ |m⟩⟨m+1| on `qudit`, identity on the other one
        const int row = qudit == 0 ? idx(levels, m, other) : idx(levels, other, m);
        const int col = qudit == 0 ? idx(levels, m + 1, other) : idx(levels, other, m + 1);
        at(L, dim, row, col) = amp;
      }
      ops.push_back(std::move(L));
    }
    for (int m = 0; m < levels; ++m) {
      const double rate = params.dephasing_rates[qudit][m];
      if (rate == 0.0) continue;
      Matrix L = zero_matrix(dim);
      const double amp = std::sqrt(rate / 2.0);
      for (int other = 0; other < levels; ++other) {
        const int diag = qudit == 0 ? idx(levels, m, other) : idx(levels, other, m);
        at(L, dim, diag, diag) = amp;
      }
      ops.push_back(std::move(L));
    }
  }
  return ops;
}

double matrix_trace_real(const Matrix& m, int dim) {
  double t = 0.0;
  for (int i = 0; i < dim; ++i) t += get(m, dim, i, i).real();
  return t;
}

// Fourier-basis diagonal of (Z^n ⊗ 1) ρ (Z^n ⊗ 1)†, binned by (p̃+q̃) mod D.
std::vector<double> fourier_bin_masses(int levels, int applied_power, const DensityMatrix& rho) {
  if (rho.space().dims() != std::vector<int>{levels, levels})
    throw std::invalid_argument("noise: ancilla must be a two-qudit density matrix");
  std::vector<double> bins(levels, 0.0);
  // ⟨p̃ q̃| ρ' |p̃ q̃⟩ with |p̃ q̃⟩ = D^{-1} Σ_{a,b} ω^{p̃a+q̃b} |a,b⟩ and
  // ρ'[(a,b),(c,d)] = ρ[(a,b),(c,d)]·ω^{n(a-c)}.
  const double scale = 1.0 / (static_cast<double>(levels) * levels);
  for (int pt = 0; pt < levels; ++pt) {
    for (int qt = 0; qt < levels; ++qt) {
      cx acc = 0.0;
      for (int a = 0; a < levels; ++a) {
        for (int b = 0; b < levels; ++b) {
          for (int c = 0; c < levels; ++c) {
            for (int d = 0; d < levels; ++d) {
              const cx v = rho.entry(idx(levels, a, b), idx(levels, c, d));
              if (v == cx(0.0)) continue;
              long long exponent = static_cast<long long>(applied_power) * (a - c) -
                                   static_cast<long long>(pt) * (a - c) -
                                   static_cast<long long>(qt) * (b - d);
              acc += v * root_of_unity(levels, exponent);
            }
          }
        }
      }
      bins[(pt + qt) % levels] += scale * acc.real();
    }
  }
  return bins;
}

}  // namespace

NoiseParams NoiseParams::uniform(int levels, double delta_t, double total_decay,
                                 double total_dephasing) {
  if (levels < 2) throw std::domain_error("NoiseParams: levels must be >= 2");
  NoiseParams p;
  p.delta_t = delta_t;
  p.decay_rates.assign(2, std::vector<double>(levels - 1, total_decay / (2.0 * (levels - 1))));
  p.dephasing_rates.assign(2, std::vector<double>(levels, total_dephasing / (2.0 * levels)));
  p.validate(levels);
  return p;
}

double NoiseParams::total_decay() const {
  double total = 0.0;
  for (const auto& per_qudit : decay_rates)
    for (double r : per_qudit) total += r;
  return total;
}

double NoiseParams::total_dephasing() const {
  double total = 0.0;
  for (const auto& per_qudit : dephasing_rates)
    for (double r : per_qudit) total += r;
  return total;
}

bool NoiseParams::within_linear_regime() const {
  return delta_t * (total_decay() + total_dephasing()) < 0.1;
}

void NoiseParams::validate(int levels) const {
  if (delta_t < 0.0) throw std::domain_error("NoiseParams: delta_t must be >= 0");
  if (decay_rates.size() != 2 || dephasing_rates.size() != 2)
    throw std::domain_error("NoiseParams: rates are per qudit (two qudits)");
  for (const auto& per_qudit : decay_rates) {
    if (static_cast<int>(per_qudit.size()) != levels - 1)
      throw std::domain_error("NoiseParams: need D-1 decay rates per qudit");
    for (double r : per_qudit)
      if (r < 0.0) throw std::domain_error("NoiseParams: negative decay rate");
  }
  for (const auto& per_qudit : dephasing_rates) {
    if (static_cast<int>(per_qudit.size()) != levels)
      throw std::domain_error("NoiseParams: need D dephasing rates per qudit");
    for (double r : per_qudit)
      if (r < 0.0) throw std::domain_error("NoiseParams: negative dephasing rate");
  }
}

NoisyAncilla damped_ancilla(int levels, const NoiseParams& params) {
  params.validate(levels);
  const int dim = pair_dim(levels);
  const double dt = params.delta_t;
  Matrix rho = ghz_projector(levels);

  for (int m = 0; m + 1 < levels; ++m) {
    const double g1 = params.decay_rates[0][m];
    const double g2 = params.decay_rates[1][m];
    // jump terms: population moved onto |m, m+1⟩ and |m+1, m⟩
    at(rho, dim, idx(levels, m, m + 1), idx(levels, m, m + 1)) += dt * g1 / levels;
    at(rho, dim, idx(levels, m + 1, m), idx(levels, m + 1, m)) += dt * g2 / levels;
    // anticommutator depletion of the |m+1,m+1⟩ row/column of the projector
    const double depletion = dt * (g1 + g2) / (2.0 * levels);
    for (int k = 0; k < levels; ++k) {
      at(rho, dim, idx(levels, m + 1, m + 1), idx(levels, k, k)) -= depletion;
      at(rho, dim, idx(levels, k, k), idx(levels, m + 1, m + 1)) -= depletion;
    }
  }
  return NoisyAncilla{to_density(levels, std::move(rho)), params.within_linear_regime()};
}

NoisyAncilla dephased_ancilla(int levels, const NoiseParams& params) {
  params.validate(levels);
  const int dim = pair_dim(levels);
  const double dt = params.delta_t;
  Matrix rho = ghz_projector(levels);

  for (int m = 0; m < levels; ++m) {
    const double g = 0.5 * (params.dephasing_rates[0][m] + params.dephasing_rates[1][m]);
    at(rho, dim, idx(levels, m, m), idx(levels, m, m)) += dt * g / levels;
    const double depletion = dt * g / (2.0 * levels);
    for (int k = 0; k < levels; ++k) {
      at(rho, dim, idx(levels, m, m), idx(levels, k, k)) -= depletion;
      at(rho, dim, idx(levels, k, k), idx(levels, m, m)) -= depletion;
    }
  }
  return NoisyAncilla{to_density(levels, std::move(rho)), params.within_linear_regime()};
}

NoisyAncilla combined_noisy_ancilla(int levels, const NoiseParams& params) {
  params.validate(levels);
  const NoisyAncilla damped = damped_ancilla(levels, params);
  const NoisyAncilla dephased = dephased_ancilla(levels, params);
  Matrix base = ghz_projector(levels);
  Matrix rho(base.size());
  for (std::size_t i = 0; i < rho.size(); ++i)
    rho[i] = damped.rho.entries()[i] + dephased.rho.entries()[i] - base[i];
  return NoisyAncilla{to_density(levels, std::move(rho)), params.within_linear_regime()};
}

double noisy_win_probability(int levels, int time_bin, const DensityMatrix& ancilla,
                             ReplyMode mode) {
  if (mode == ReplyMode::Vacuum) {
    // nothing arrived, no gate fired; bin 0 is the winning reply
    return fourier_bin_masses(levels, 0, ancilla)[0];
  }
  if (time_bin < 0 || time_bin >= levels)
    throw std::domain_error("noisy_win_probability: time_bin out of range");
  return fourier_bin_masses(levels, time_bin, ancilla)[time_bin];
}

std::vector<double> decoded_bin_distribution(int levels, int time_bin,
                                             const DensityMatrix& ancilla) {
  if (time_bin < 0 || time_bin >= levels)
    throw std::domain_error("decoded_bin_distribution: time_bin out of range");
  return fourier_bin_masses(levels, time_bin, ancilla);
}

double closed_form_pwin(int levels, const NoiseParams& params, NoiseChannel channel) {
  if (levels < 2) throw std::domain_error("closed_form_pwin: levels must be >= 2");
  const double dt = params.delta_t;
  const double geometry = static_cast<double>(levels - 1) / (static_cast<double>(levels) * levels);
  switch (channel) {
    case NoiseChannel::AmplitudeDamping:
      return 1.0 - dt * params.total_decay() * geometry;
    case NoiseChannel::Dephasing:
      return 1.0 - dt * params.total_dephasing() * geometry / 2.0;
    case NoiseChannel::Both:
      return 1.0 - dt * geometry * (params.total_decay() + params.total_dephasing() / 2.0);
  }
  throw std::logic_error("closed_form_pwin: unknown channel");
}

DensityMatrix lindblad_integrator_oracle(int levels, const NoiseParams& params, double total_time,
                                         int steps) {
  params.validate(levels);
  if (steps < 1) throw std::domain_error("lindblad_integrator_oracle: steps must be >= 1");
  if (total_time < 0.0) throw std::domain_error("lindblad_integrator_oracle: negative time");

  const int dim = pair_dim(levels);
  const std::vector<Matrix> ops = lindblad_operators(levels, params);
  std::vector<Matrix> ops_adj;
  ops_adj.reserve(ops.size());
  for (const Matrix& L : ops) ops_adj.push_back(adjoint(L, dim));
  // Σ L†L enters only through the anticommutator
  Matrix damping = zero_matrix(dim);
  for (std::size_t i = 0; i < ops.size(); ++i) {
    Matrix product = matmul(ops_adj[i], ops[i], dim);
    for (std::size_t k = 0; k < damping.size(); ++k) damping[k] += product[k];
  }

  auto rhs = [&](const Matrix& rho) {
    Matrix out = zero_matrix(dim);
    for (std::size_t i = 0; i < ops.size(); ++i) {
      Matrix jump = matmul(matmul(ops[i], rho, dim), ops_adj[i], dim);
      for (std::size_t k = 0; k < out.size(); ++k) out[k] += jump[k];
    }
    Matrix left = matmul(damping, rho, dim);
    Matrix right = matmul(rho, damping, dim);
    for (std::size_t k = 0; k < out.size(); ++k) out[k] -= 0.5 * (left[k] + right[k]);
    return out;
  };

  Matrix rho = ghz_projector(levels);
  const double h = total_time / steps;
  for (int step = 0; step < steps; ++step) {
    Matrix k1 = rhs(rho);
    Matrix tmp(rho.size());
    for (std::size_t i = 0; i < rho.size(); ++i) tmp[i] = rho[i] + 0.5 * h * k1[i];
    Matrix k2 = rhs(tmp);
    for (std::size_t i = 0; i < rho.size(); ++i) tmp[i] = rho[i] + 0.5 * h * k2[i];
    Matrix k3 = rhs(tmp);
    for (std::size_t i = 0; i < rho.size(); ++i) tmp[i] = rho[i] + h * k3[i];
    Matrix k4 = rhs(tmp);
    for (std::size_t i = 0; i < rho.size(); ++i)
      rho[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    // negated form so NaN from a diverged step also trips the guard
    if (!(std::abs(matrix_trace_real(rho, dim) - 1.0) <= 1e-8))
      throw std::runtime_error("lindblad_integrator_oracle: trace drift exceeded 1e-8");
  }
  return to_density(levels, std::move(rho));
}

}  // namespace clockgame
