#include "clockgame/qudit.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace clockgame {

namespace {

double norm_sq(const std::vector<cx>& amps) {
  double n = 0.0;
  for (const cx& a : amps) n += std::norm(a);
  return n;
}

void check_targets(const HilbertSpace& space, const std::vector<int>& targets, int op_dim) {
  long long product = 1;
  std::vector<char> seen(space.subsystem_count(), 0);
  for (int t : targets) {
    if (t < 0 || t >= space.subsystem_count())
      throw std::invalid_argument("target subsystem index out of range");
    if (seen[t]) throw std::invalid_argument("target subsystem indices must be distinct");
    seen[t] = 1;
    product *= space.dim(t);
  }
  if (product != op_dim)
    throw std::invalid_argument("operator dimension does not match product of target dims");
}

// Enumeration of the basis indices reached by varying the target coordinates
// while all other coordinates stay fixed. `offsets` are the base indices (one
// per fixed configuration); `sub_strides` maps a row-major target sub-index to
// its displacement.
struct TargetSlicing {
  std::vector<int> offsets;
  std::vector<int> sub_strides;
  int sub_dim;
};

TargetSlicing slice_targets(const HilbertSpace& space, const std::vector<int>& targets) {
  TargetSlicing s;
  s.sub_dim = 1;
  for (int t : targets) s.sub_dim *= space.dim(t);

  s.sub_strides.resize(s.sub_dim);
  for (int sub = 0; sub < s.sub_dim; ++sub) {
    int rem = sub;
    int displacement = 0;
    for (int k = static_cast<int>(targets.size()) - 1; k >= 0; --k) {
      int d = space.dim(targets[k]);
      displacement += (rem % d) * space.stride(targets[k]);
      rem /= d;
    }
    s.sub_strides[sub] = displacement;
  }

  std::vector<char> is_target(space.subsystem_count(), 0);
  for (int t : targets) is_target[t] = 1;

  s.offsets.reserve(space.total_dim() / std::max(1, s.sub_dim));
  std::vector<int> coords(space.subsystem_count(), 0);
  while (true) {
    int index = 0;
    for (int i = 0; i < space.subsystem_count(); ++i) index += coords[i] * space.stride(i);
    s.offsets.push_back(index);
    int i = space.subsystem_count() - 1;
    for (; i >= 0; --i) {
      if (is_target[i]) continue;
      if (++coords[i] < space.dim(i)) break;
      coords[i] = 0;
    }
    if (i < 0) break;
  }
  return s;
}

Eigen::MatrixXcd to_eigen(const DensityMatrix& rho) {
  const int d = rho.dim();
  Eigen::MatrixXcd m(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) m(r, c) = rho.entry(r, c);
  return m;
}

}  // namespace

UnitaryMatrix kron(const UnitaryMatrix& a, const UnitaryMatrix& b) {
  const int da = a.dim();
  const int db = b.dim();
  const int d = da * db;
  std::vector<cx> entries(static_cast<std::size_t>(d) * d);
  for (int ra = 0; ra < da; ++ra)
    for (int rb = 0; rb < db; ++rb)
      for (int ca = 0; ca < da; ++ca)
        for (int cb = 0; cb < db; ++cb)
          entries[static_cast<std::size_t>(ra * db + rb) * d + (ca * db + cb)] =
              a.entry(ra, ca) * b.entry(rb, cb);
  return UnitaryMatrix(d, std::move(entries));
}

cx root_of_unity(int D, long long k) {
  long long r = k % D;
  if (r < 0) r += D;
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / D);
}

HilbertSpace::HilbertSpace(std::vector<int> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw std::invalid_argument("HilbertSpace: need at least one subsystem");
  long long total = 1;
  for (int d : dims_) {
    if (d < 1) throw std::invalid_argument("HilbertSpace: every dimension must be >= 1");
    total *= d;
    if (total > (1LL << 30)) throw std::invalid_argument("HilbertSpace: total dimension too large");
  }
  total_dim_ = static_cast<int>(total);
  strides_.resize(dims_.size());
  int stride = 1;
  for (int i = static_cast<int>(dims_.size()) - 1; i >= 0; --i) {
    strides_[i] = stride;
    stride *= dims_[i];
  }
}

int HilbertSpace::index_of(const std::vector<int>& coords) const {
  if (coords.size() != dims_.size())
    throw std::invalid_argument("HilbertSpace: coordinate count mismatch");
  int index = 0;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (coords[i] < 0 || coords[i] >= dims_[i])
      throw std::invalid_argument("HilbertSpace: coordinate out of range");
    index += coords[i] * strides_[i];
  }
  return index;
}

std::vector<int> HilbertSpace::coords_of(int index) const {
  std::vector<int> coords(dims_.size());
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    coords[i] = (index / strides_[i]) % dims_[i];
  }
  return coords;
}

StateVector::StateVector(HilbertSpace space, std::vector<cx> amps)
    : space_(std::move(space)), amps_(std::move(amps)) {
  if (static_cast<int>(amps_.size()) != space_.total_dim())
    throw std::invalid_argument("StateVector: amplitude count must equal total dimension");
  if (std::abs(norm_sq(amps_) - 1.0) > kStateNormTol)
    throw std::invalid_argument("StateVector: not normalized");
}

StateVector StateVector::normalized(HilbertSpace space, std::vector<cx> amps) {
  double n = std::sqrt(norm_sq(amps));
  if (n <= 0.0) throw std::invalid_argument("StateVector: cannot normalize the zero vector");
  for (cx& a : amps) a /= n;
  return StateVector(Unchecked{}, std::move(space), std::move(amps));
}

DensityMatrix::DensityMatrix(HilbertSpace space, std::vector<cx> entries)
    : space_(std::move(space)), entries_(std::move(entries)) {
  const int d = space_.total_dim();
  if (entries_.size() != static_cast<std::size_t>(d) * d)
    throw std::invalid_argument("DensityMatrix: entry count must be dim^2");
  cx trace = 0.0;
  for (int i = 0; i < d; ++i) trace += entry(i, i);
  if (std::abs(trace - 1.0) > kHermitianTol)
    throw std::invalid_argument("DensityMatrix: trace must be 1");
  for (int r = 0; r < d; ++r)
    for (int c = r; c < d; ++c)
      if (std::abs(entry(r, c) - std::conj(entry(c, r))) > kHermitianTol)
        throw std::invalid_argument("DensityMatrix: not Hermitian");
}

UnitaryMatrix::UnitaryMatrix(int dim, std::vector<cx> entries)
    : dim_(dim), entries_(std::move(entries)) {
  if (dim_ < 1) throw std::invalid_argument("UnitaryMatrix: dimension must be >= 1");
  if (entries_.size() != static_cast<std::size_t>(dim_) * dim_)
    throw std::invalid_argument("UnitaryMatrix: entry count must be dim^2");
  for (int r = 0; r < dim_; ++r) {
    for (int c = 0; c < dim_; ++c) {
      cx dot = 0.0;
      for (int k = 0; k < dim_; ++k) dot += std::conj(entry(k, r)) * entry(k, c);
      cx expected = (r == c) ? cx(1.0) : cx(0.0);
      if (std::abs(dot - expected) > kUnitaryTol)
        throw std::invalid_argument("UnitaryMatrix: U^dagger U != identity");
    }
  }
}

UnitaryMatrix UnitaryMatrix::adjoint() const {
  std::vector<cx> out(entries_.size());
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c)
      out[static_cast<std::size_t>(r) * dim_ + c] = std::conj(entry(c, r));
  return UnitaryMatrix(dim_, std::move(out));
}

StateVector fourier_vector(int D, int j_tilde) {
  if (D < 1) throw std::domain_error("fourier_vector: D must be >= 1");
  if (j_tilde < 0 || j_tilde >= D) throw std::domain_error("fourier_vector: j_tilde out of range");
  std::vector<cx> amps(D);
  const double scale = 1.0 / std::sqrt(static_cast<double>(D));
  for (int k = 0; k < D; ++k) {
    amps[k] = scale * root_of_unity(D, static_cast<long long>(j_tilde) * k);
  }
  return StateVector(HilbertSpace({D}), std::move(amps));
}

UnitaryMatrix fourier_matrix(int D) {
  if (D < 1) throw std::domain_error("fourier_matrix: D must be >= 1");
  std::vector<cx> entries(static_cast<std::size_t>(D) * D);
  const double scale = 1.0 / std::sqrt(static_cast<double>(D));
  for (int k = 0; k < D; ++k)
    for (int j = 0; j < D; ++j)
      entries[static_cast<std::size_t>(k) * D + j] =
          scale * root_of_unity(D, static_cast<long long>(j) * k);
  return UnitaryMatrix(D, std::move(entries));
}

UnitaryMatrix z_power(int D, long long n) {
  if (D < 1) throw std::domain_error("z_power: D must be >= 1");
  std::vector<cx> entries(static_cast<std::size_t>(D) * D, cx(0.0));
  for (int j = 0; j < D; ++j)
    entries[static_cast<std::size_t>(j) * D + j] = root_of_unity(D, n * j);
  return UnitaryMatrix(D, std::move(entries));
}

StateVector ghz_state(int D, int K) {
  if (D < 2) throw std::domain_error("ghz_state: D must be >= 2");
  if (K < 2) throw std::domain_error("ghz_state: K must be >= 2");
  HilbertSpace space(std::vector<int>(K, D));
  std::vector<cx> amps(space.total_dim(), cx(0.0));
  const double scale = 1.0 / std::sqrt(static_cast<double>(D));
  // |j⟩^⊗K sits at index j·(D^{K-1} + ... + D + 1).
  long long diag_stride = 0;
  for (int k = 0; k < K; ++k) diag_stride += space.stride(k);
  for (int j = 0; j < D; ++j) amps[j * diag_stride] = scale;
  return StateVector(std::move(space), std::move(amps));
}

StateVector phi_dn_state(int D, int n, int K) {
  if (n < 0 || n >= D) throw std::domain_error("phi_dn_state: n out of range");
  StateVector ghz = ghz_state(D, K);
  return apply_unitary(ghz, z_power(D, n), {0});
}

StateVector apply_unitary(const StateVector& state, const UnitaryMatrix& op,
                          const std::vector<int>& targets) {
  check_targets(state.space(), targets, op.dim());
  TargetSlicing slicing = slice_targets(state.space(), targets);
  std::vector<cx> out(state.amps());
  std::vector<cx> in_block(slicing.sub_dim);
  for (int offset : slicing.offsets) {
    for (int s = 0; s < slicing.sub_dim; ++s) in_block[s] = out[offset + slicing.sub_strides[s]];
    for (int r = 0; r < slicing.sub_dim; ++r) {
      cx acc = 0.0;
      for (int s = 0; s < slicing.sub_dim; ++s) acc += op.entry(r, s) * in_block[s];
      out[offset + slicing.sub_strides[r]] = acc;
    }
  }
  return StateVector::normalized(state.space(), std::move(out));
}

std::vector<double> measurement_distribution(const StateVector& state,
                                             const std::vector<int>& targets,
                                             const UnitaryMatrix& basis) {
  // Rotating by basis† turns "project onto basis column o" into "project onto
  // computational sub-index o".
  StateVector rotated = apply_unitary(state, basis.adjoint(), targets);
  TargetSlicing slicing = slice_targets(state.space(), targets);
  std::vector<double> probs(slicing.sub_dim, 0.0);
  for (int offset : slicing.offsets)
    for (int s = 0; s < slicing.sub_dim; ++s)
      probs[s] += std::norm(rotated.amp(offset + slicing.sub_strides[s]));
  return probs;
}

MeasurementResult measure_subsystem(const StateVector& state, const std::vector<int>& targets,
                                    const UnitaryMatrix& basis, SplitMix64& rng) {
  StateVector rotated = apply_unitary(state, basis.adjoint(), targets);
  TargetSlicing slicing = slice_targets(state.space(), targets);

  std::vector<double> probs(slicing.sub_dim, 0.0);
  for (int offset : slicing.offsets)
    for (int s = 0; s < slicing.sub_dim; ++s)
      probs[s] += std::norm(rotated.amp(offset + slicing.sub_strides[s]));

  double total = 0.0;
  for (double p : probs) total += p;
  double u = rng.uniform01() * total;
  int outcome = -1;
  double cumulative = 0.0;
  for (int s = 0; s < slicing.sub_dim; ++s) {
    if (probs[s] <= 0.0) continue;  // zero-norm branches are never sampled
    cumulative += probs[s];
    outcome = s;
    if (u < cumulative) break;
  }
  if (outcome < 0) throw std::runtime_error("measure_subsystem: state has no probability mass");

  std::vector<cx> collapsed(rotated.amps().size(), cx(0.0));
  for (int offset : slicing.offsets) {
    int idx = offset + slicing.sub_strides[outcome];
    collapsed[idx] = rotated.amp(idx);
  }
  StateVector projected = StateVector::normalized(state.space(), std::move(collapsed));
  StateVector restored = apply_unitary(projected, basis, targets);
  return MeasurementResult{outcome, std::move(restored), probs[outcome]};
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep) {
  const HilbertSpace& space = rho.space();
  std::vector<char> seen(space.subsystem_count(), 0);
  for (int k : keep) {
    if (k < 0 || k >= space.subsystem_count())
      throw std::invalid_argument("partial_trace: keep index out of range");
    if (seen[k]) throw std::invalid_argument("partial_trace: keep indices must be distinct");
    seen[k] = 1;
  }
  if (keep.empty()) {
    return DensityMatrix(HilbertSpace({1}), {cx(1.0)});
  }

  std::vector<int> traced;
  for (int i = 0; i < space.subsystem_count(); ++i)
    if (!seen[i]) traced.push_back(i);

  std::vector<int> kept_dims;
  kept_dims.reserve(keep.size());
  for (int k : keep) kept_dims.push_back(space.dim(k));
  HilbertSpace out_space(kept_dims);
  const int out_dim = out_space.total_dim();

  // Base index displacement for each kept (row-major) sub-index, and for each
  // traced sub-index.
  auto displacements = [&space](const std::vector<int>& subsystems) {
    int count = 1;
    for (int s : subsystems) count *= space.dim(s);
    std::vector<int> disp(count);
    for (int sub = 0; sub < count; ++sub) {
      int rem = sub;
      int d_total = 0;
      for (int k = static_cast<int>(subsystems.size()) - 1; k >= 0; --k) {
        int d = space.dim(subsystems[k]);
        d_total += (rem % d) * space.stride(subsystems[k]);
        rem /= d;
      }
      disp[sub] = d_total;
    }
    return disp;
  };

  std::vector<int> keep_disp = displacements(keep);
  std::vector<int> trace_disp = displacements(traced);

  std::vector<cx> out(static_cast<std::size_t>(out_dim) * out_dim, cx(0.0));
  for (int r = 0; r < out_dim; ++r) {
    for (int c = 0; c < out_dim; ++c) {
      cx acc = 0.0;
      for (int t : trace_disp) acc += rho.entry(keep_disp[r] + t, keep_disp[c] + t);
      out[static_cast<std::size_t>(r) * out_dim + c] = acc;
    }
  }
  return DensityMatrix(std::move(out_space), std::move(out));
}

std::vector<double> hermitian_eigenvalues(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_eigen(rho),
                                                         Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("hermitian_eigenvalues: eigensolver failed");
  std::vector<double> eigs(solver.eigenvalues().data(),
                           solver.eigenvalues().data() + rho.dim());
  return eigs;
}

HermitianEigensystem hermitian_eigensystem(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_eigen(rho));
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("hermitian_eigensystem: eigensolver failed");
  HermitianEigensystem out;
  const int d = rho.dim();
  out.values.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + d);
  out.vectors.resize(d);
  for (int i = 0; i < d; ++i) {
    out.vectors[i].resize(d);
    for (int r = 0; r < d; ++r) out.vectors[i][r] = solver.eigenvectors()(r, i);
  }
  return out;
}

double vn_entropy(const DensityMatrix& rho) {
  std::vector<double> eigs = hermitian_eigenvalues(rho);
  double entropy = 0.0;
  for (double lambda : eigs) {
    if (lambda < kEigenvalueFloor)
      throw std::domain_error("vn_entropy: matrix is not positive semidefinite");
    lambda = std::clamp(lambda, 0.0, 1.0);
    if (lambda > 0.0) entropy -= lambda * std::log2(lambda);
  }
  return entropy;
}

DensityMatrix density_from_state(const StateVector& psi) {
  const int d = psi.dim();
  std::vector<cx> entries(static_cast<std::size_t>(d) * d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c)
      entries[static_cast<std::size_t>(r) * d + c] = psi.amp(r) * std::conj(psi.amp(c));
  return DensityMatrix(psi.space(), std::move(entries));
}

cx inner_product(const StateVector& a, const StateVector& b) {
  if (!(a.space() == b.space()))
    throw std::invalid_argument("inner_product: states live in different spaces");
  cx acc = 0.0;
  for (int i = 0; i < a.dim(); ++i) acc += std::conj(a.amp(i)) * b.amp(i);
  return acc;
}

double fidelity(const StateVector& a, const StateVector& b) {
  return std::norm(inner_product(a, b));
}

double fidelity(const StateVector& psi, const DensityMatrix& rho) {
  if (!(psi.space() == rho.space()))
    throw std::invalid_argument("fidelity: state and matrix live in different spaces");
  cx acc = 0.0;
  for (int r = 0; r < psi.dim(); ++r) {
    cx row = 0.0;
    for (int c = 0; c < psi.dim(); ++c) row += rho.entry(r, c) * psi.amp(c);
    acc += std::conj(psi.amp(r)) * row;
  }
  return acc.real();
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  std::vector<int> dims = a.space().dims();
  dims.insert(dims.end(), b.space().dims().begin(), b.space().dims().end());
  std::vector<cx> amps(static_cast<std::size_t>(a.dim()) * b.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < b.dim(); ++j)
      amps[static_cast<std::size_t>(i) * b.dim() + j] = a.amp(i) * b.amp(j);
  return StateVector(HilbertSpace(std::move(dims)), std::move(amps));
}

}  // namespace clockgame
