#pragma once

#include <complex>
#include <vector>

#include "clockgame/rng.hpp"

// Dense complex linear algebra for small composite qudit systems: states,
// unitaries, Born-rule measurements, partial trace and entanglement entropy.
// Basis indexing is row-major over the subsystem dimensions with subsystem 0
// most significant; every operation that takes target indices uses this
// convention.
//
// All values are immutable after construction and every operation is a pure
// function of its arguments plus an explicitly passed generator, so
// independent evaluations may run concurrently. A single generator instance
// must not be shared across concurrent samplers.

namespace clockgame {

using cx = std::complex<double>;

inline constexpr double kStateNormTol = 1e-12;
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kUnitaryTol = 1e-10;
// Eigenvalues of a density matrix above this (negative) floor are treated as
// floating-point noise and clamped to zero; anything below is an invalid matrix.
inline constexpr double kEigenvalueFloor = -1e-10;

// Ordered list of subsystem dimensions. Immutable after construction.
class HilbertSpace {
 public:
  explicit HilbertSpace(std::vector<int> dims);

  int subsystem_count() const { return static_cast<int>(dims_.size()); }
  int dim(int subsystem) const { return dims_[subsystem]; }
  const std::vector<int>& dims() const { return dims_; }
  int total_dim() const { return total_dim_; }
  // Number of basis indices spanned by one step of `subsystem`'s coordinate.
  int stride(int subsystem) const { return strides_[subsystem]; }

  int index_of(const std::vector<int>& coords) const;
  std::vector<int> coords_of(int index) const;

  bool operator==(const HilbertSpace& other) const { return dims_ == other.dims_; }

 private:
  std::vector<int> dims_;
  std::vector<int> strides_;
  int total_dim_;
};

// Normalized pure state; amplitudes row-major over the space's dims.
class StateVector {
 public:
  StateVector(HilbertSpace space, std::vector<cx> amps);

  // Rescales `amps` to unit norm before constructing (zero vector is an error).
  static StateVector normalized(HilbertSpace space, std::vector<cx> amps);

  const HilbertSpace& space() const { return space_; }
  const std::vector<cx>& amps() const { return amps_; }
  cx amp(int index) const { return amps_[index]; }
  int dim() const { return static_cast<int>(amps_.size()); }

 private:
  struct Unchecked {};
  StateVector(Unchecked, HilbertSpace space, std::vector<cx> amps)
      : space_(std::move(space)), amps_(std::move(amps)) {}

  HilbertSpace space_;
  std::vector<cx> amps_;
};

// Hermitian, unit-trace matrix over a composite space. Positive
// semidefiniteness is validated wherever the spectrum is computed
// (vn_entropy, hermitian_eigenvalues) rather than on every construction.
class DensityMatrix {
 public:
  DensityMatrix(HilbertSpace space, std::vector<cx> entries);

  const HilbertSpace& space() const { return space_; }
  const std::vector<cx>& entries() const { return entries_; }
  int dim() const { return space_.total_dim(); }
  cx entry(int row, int col) const { return entries_[static_cast<std::size_t>(row) * dim() + col]; }

 private:
  HilbertSpace space_;
  std::vector<cx> entries_;
};

// Square matrix with U†U = 1 within kUnitaryTol.
class UnitaryMatrix {
 public:
  UnitaryMatrix(int dim, std::vector<cx> entries);

  int dim() const { return dim_; }
  const std::vector<cx>& entries() const { return entries_; }
  cx entry(int row, int col) const { return entries_[static_cast<std::size_t>(row) * dim_ + col]; }

  UnitaryMatrix adjoint() const;

 private:
  int dim_;
  std::vector<cx> entries_;
};

// |j̃⟩ with amplitude exp(2πi·j̃·k/D)/√D at basis index k.
StateVector fourier_vector(int D, int j_tilde);

// Columns are fourier_vector(D, j̃).
UnitaryMatrix fourier_matrix(int D);

// Diagonal gate with entries exp(2πi·j·n/D); n is reduced mod D.
UnitaryMatrix z_power(int D, long long n);

// (1/√D)·Σ_j |j⟩^⊗K over K subsystems of dimension D.
StateVector ghz_state(int D, int K);

// Z^n on one leg of the GHZ state; in Fourier coordinates the support is
// exactly the tuples with Σ_j j̃ ≡ n (mod D).
StateVector phi_dn_state(int D, int n, int K);

// Applies `op` on the listed target subsystems (row-major composite index in
// the order given), identity elsewhere.
StateVector apply_unitary(const StateVector& state, const UnitaryMatrix& op,
                          const std::vector<int>& targets);

struct MeasurementResult {
  int outcome;            // composite row-major index over the target dims
  StateVector collapsed;  // renormalized post-measurement state
  double probability;     // Born probability of the sampled outcome
};

// Projective measurement of the targets in the basis given by the columns of
// `basis`. Outcomes with zero Born probability are never sampled.
MeasurementResult measure_subsystem(const StateVector& state, const std::vector<int>& targets,
                                    const UnitaryMatrix& basis, SplitMix64& rng);

// Exact Born distribution of the measurement above.
std::vector<double> measurement_distribution(const StateVector& state,
                                             const std::vector<int>& targets,
                                             const UnitaryMatrix& basis);

// Traces out every subsystem not in `keep`; result subsystem order follows
// `keep`. Empty `keep` yields the 1x1 matrix [1].
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep);

// Von Neumann entropy in ebits (log base 2), with 0·log 0 = 0. Eigenvalues in
// [kEigenvalueFloor, 0) are clamped to zero; values below the floor raise.
double vn_entropy(const DensityMatrix& rho);

// Ascending eigenvalues of a density matrix (Hermitian spectrum).
std::vector<double> hermitian_eigenvalues(const DensityMatrix& rho);

struct HermitianEigensystem {
  std::vector<double> values;            // ascending
  std::vector<std::vector<cx>> vectors;  // vectors[i] pairs with values[i]
};

HermitianEigensystem hermitian_eigensystem(const DensityMatrix& rho);

DensityMatrix density_from_state(const StateVector& psi);

cx inner_product(const StateVector& a, const StateVector& b);
double fidelity(const StateVector& a, const StateVector& b);
// ⟨ψ|ρ|ψ⟩
double fidelity(const StateVector& psi, const DensityMatrix& rho);

StateVector tensor(const StateVector& a, const StateVector& b);
UnitaryMatrix kron(const UnitaryMatrix& a, const UnitaryMatrix& b);

// exp(2πi·k/D) with the angle reduced before evaluating, so large integer
// exponents lose no precision.
cx root_of_unity(int D, long long k);

}  // namespace clockgame
