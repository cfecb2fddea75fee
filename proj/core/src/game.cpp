#include "clockgame/game.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace clockgame {

namespace {

constexpr double kBranchMassFloor = 1e-14;
// Density-matrix joint states grow as (K·N+1)^2·D^(2K); keep that route at desk scale.
constexpr int kMaxDensityJointDim = 4096;

long long int_pow(int base, int exp) {
  long long v = 1;
  for (int i = 0; i < exp; ++i) v *= base;
  return v;
}

// F† entries for one leg, row-major.
std::vector<cx> fourier_adjoint_entries(int levels) {
  std::vector<cx> m(static_cast<std::size_t>(levels) * levels);
  const double scale = 1.0 / std::sqrt(static_cast<double>(levels));
  for (int r = 0; r < levels; ++r)
    for (int c = 0; c < levels; ++c)
      m[static_cast<std::size_t>(r) * levels + c] =
          scale * root_of_unity(levels, -static_cast<long long>(r) * c);
  return m;
}

// Applies a D×D matrix to one leg of a D^K amplitude vector in place.
void apply_matrix_on_leg(std::vector<cx>& amps, const std::vector<cx>& matrix, int levels,
                         int parties, int leg) {
  const int stride = static_cast<int>(int_pow(levels, parties - 1 - leg));
  const int block = stride * levels;
  const int total = static_cast<int>(amps.size());
  std::vector<cx> in(levels);
  for (int base = 0; base < total; base += block) {
    for (int off = 0; off < stride; ++off) {
      for (int d = 0; d < levels; ++d) in[d] = amps[base + off + d * stride];
      for (int r = 0; r < levels; ++r) {
        cx acc = 0.0;
        for (int s = 0; s < levels; ++s) acc += matrix[static_cast<std::size_t>(r) * levels + s] * in[s];
        amps[base + off + r * stride] = acc;
      }
    }
  }
}

void fourier_adjoint_all_legs(std::vector<cx>& amps, int levels, int parties) {
  const std::vector<cx> adj = fourier_adjoint_entries(levels);
  for (int leg = 0; leg < parties; ++leg) apply_matrix_on_leg(amps, adj, levels, parties, leg);
}

// Referee component index r <-> (party, bin). r = 0 is the vacuum.
struct Component {
  int party;  // -1 for vacuum
  int bin;    // 0 for vacuum
};

Component component_of(int r, int time_bins) {
  if (r == 0) return {-1, 0};
  return {(r - 1) / time_bins, (r - 1) % time_bins + 1};
}

// CZ^n ladder phase picked up by referee component r paired with ancilla
// computational index a.
cx strategy_phase(int r, int ancilla_index, int levels, int parties, int time_bins) {
  Component comp = component_of(r, time_bins);
  if (comp.party < 0) return cx(1.0);
  const int digit_stride = static_cast<int>(int_pow(levels, parties - 1 - comp.party));
  const int j_p = (ancilla_index / digit_stride) % levels;
  return root_of_unity(levels, static_cast<long long>(comp.bin) * j_p);
}

std::vector<int> digit_sums_mod(int levels, int parties) {
  const int total = static_cast<int>(int_pow(levels, parties));
  std::vector<int> sums(total);
  for (int a = 0; a < total; ++a) {
    int rem = a;
    int s = 0;
    for (int p = 0; p < parties; ++p) {
      s += rem % levels;
      rem /= levels;
    }
    sums[a] = s % levels;
  }
  return sums;
}

// Per-outcome Born data of the strategy + Fourier measurement:
//   mass[a]     = p(outcome a)
//   accept[a]   = p(outcome a) · (referee fidelity of that branch)
struct OutcomeTable {
  std::vector<double> mass;
  std::vector<double> accept;
};

// Pure-ancilla route: per referee component r, B_r = F†⊗..⊗F†(phase_r ⊙ anc).
// With the verification state equal to the sent state, branch r weights enter
// only through |ref_r|^2.
OutcomeTable outcome_table_pure(const ReducedRefereeState& referee, const std::vector<cx>& ancilla,
                                int levels, int parties) {
  const int anc_dim = static_cast<int>(ancilla.size());
  std::vector<int> support;
  for (int r = 0; r < referee.dim(); ++r)
    if (std::norm(referee.amps()[r]) > 0.0) support.push_back(r);

  std::vector<std::vector<cx>> blocks;
  blocks.reserve(support.size());
  for (int r : support) {
    std::vector<cx> block(ancilla);
    for (int a = 0; a < anc_dim; ++a)
      block[a] *= strategy_phase(r, a, levels, parties, referee.time_bins());
    fourier_adjoint_all_legs(block, levels, parties);
    blocks.push_back(std::move(block));
  }

  OutcomeTable table;
  table.mass.assign(anc_dim, 0.0);
  table.accept.assign(anc_dim, 0.0);
  for (int a = 0; a < anc_dim; ++a) {
    double p = 0.0;
    cx amp = 0.0;
    for (std::size_t si = 0; si < support.size(); ++si) {
      const double w2 = std::norm(referee.amps()[support[si]]);
      p += w2 * std::norm(blocks[si][a]);
      amp += w2 * blocks[si][a];
    }
    table.mass[a] = p;
    table.accept[a] = std::norm(amp);
  }
  return table;
}

// Density-ancilla route. diag_{r,r'}[a] = ⟨a|F†(phase_r ρ phase_{r'}†)F|a⟩.
OutcomeTable outcome_table_density(const ReducedRefereeState& referee, const DensityMatrix& rho,
                                   int levels, int parties) {
  const int anc_dim = rho.dim();
  if (anc_dim > 1024)
    throw std::invalid_argument("analyze_exact: density ancilla too large for the exact route");
  std::vector<int> support;
  for (int r = 0; r < referee.dim(); ++r)
    if (std::norm(referee.amps()[r]) > 0.0) support.push_back(r);

  // Columns of F^⊗K, i.e. the Fourier product kets in computational coords.
  std::vector<std::vector<cx>> fourier_kets(anc_dim, std::vector<cx>(anc_dim));
  {
    const double scale = 1.0 / std::sqrt(std::pow(static_cast<double>(levels), parties));
    for (int a = 0; a < anc_dim; ++a) {
      for (int b = 0; b < anc_dim; ++b) {
        long long exponent = 0;
        int ra = a, rb = b;
        for (int p = 0; p < parties; ++p) {
          exponent += static_cast<long long>(ra % levels) * (rb % levels);
          ra /= levels;
          rb /= levels;
        }
        fourier_kets[a][b] = scale * root_of_unity(levels, exponent);
      }
    }
  }

  OutcomeTable table;
  table.mass.assign(anc_dim, 0.0);
  table.accept.assign(anc_dim, 0.0);

  const int n_sup = static_cast<int>(support.size());
  for (int si = 0; si < n_sup; ++si) {
    for (int sj = 0; sj < n_sup; ++sj) {
      const int r = support[si];
      const int rp = support[sj];
      const double w2r = std::norm(referee.amps()[r]);
      const double w2rp = std::norm(referee.amps()[rp]);
      // diag of F† (phase_r ρ phase_rp†) F, one Fourier ket at a time
      for (int out = 0; out < anc_dim; ++out) {
        const std::vector<cx>& f = fourier_kets[out];
        cx acc = 0.0;
        for (int a = 0; a < anc_dim; ++a) {
          cx row = 0.0;
          for (int b = 0; b < anc_dim; ++b) {
            row += rho.entry(a, b) *
                   std::conj(strategy_phase(rp, b, levels, parties, referee.time_bins())) * f[b];
          }
          acc += std::conj(f[a]) * strategy_phase(r, a, levels, parties, referee.time_bins()) * row;
        }
        if (si == sj) table.mass[out] += w2r * acc.real();
        table.accept[out] += w2r * w2rp * acc.real();
      }
    }
  }
  return table;
}

OutcomeTable outcome_table(const GameConfig& config, const AncillaSpec& ancilla) {
  const ReducedRefereeState referee = referee_state(config);
  if (ancilla.kind() == AncillaSpec::Kind::Density)
    return outcome_table_density(referee, ancilla.density_matrix(), ancilla.levels(),
                                 ancilla.parties());
  return outcome_table_pure(referee, ancilla.pure_state().amps(), ancilla.levels(),
                            ancilla.parties());
}

void check_game_ancilla(const GameConfig& config, const AncillaSpec& ancilla) {
  if (ancilla.parties() != config.parties)
    throw std::invalid_argument("ancilla party count does not match the game config");
  if (ancilla.levels() != config.levels)
    throw std::invalid_argument("ancilla level count does not match the game config");
}

}  // namespace

void GameConfig::validate() const {
  if (time_bins < 1) throw std::domain_error("GameConfig: time_bins must be >= 1");
  if (levels < 2) throw std::domain_error("GameConfig: levels must be >= 2");
  if (parties < 2) throw std::domain_error("GameConfig: parties must be >= 2");
  if (time_bin < 0 || time_bin > time_bins)
    throw std::domain_error("GameConfig: time_bin must lie in 0..time_bins");
  if (static_cast<int>(phases.size()) != parties - 1)
    throw std::domain_error("GameConfig: need exactly parties-1 phases");
  if (!allow_unwinnable && time_bins > levels - 1)
    throw std::domain_error("GameConfig: winning strategy requires time_bins <= levels-1");
}

ReducedRefereeState::ReducedRefereeState(int time_bins, int parties, std::vector<cx> amps)
    : time_bins_(time_bins), parties_(parties), amps_(std::move(amps)) {
  if (time_bins_ < 1 || parties_ < 2)
    throw std::invalid_argument("ReducedRefereeState: invalid shape");
  if (static_cast<int>(amps_.size()) != parties_ * time_bins_ + 1)
    throw std::invalid_argument("ReducedRefereeState: need K*N+1 amplitudes");
  double n2 = 0.0;
  for (const cx& a : amps_) n2 += std::norm(a);
  if (std::abs(n2 - 1.0) > kStateNormTol)
    throw std::invalid_argument("ReducedRefereeState: not normalized");
}

int ReducedRefereeState::component_index(int party, int bin) const {
  if (party < 0 || party >= parties_ || bin < 1 || bin > time_bins_)
    throw std::invalid_argument("ReducedRefereeState: component out of range");
  return 1 + party * time_bins_ + (bin - 1);
}

StateVector ReducedRefereeState::to_state() const {
  return StateVector(HilbertSpace({dim()}), amps_);
}

AncillaSpec AncillaSpec::maximal(int levels, int parties) {
  if (levels < 2) throw std::domain_error("AncillaSpec: levels must be >= 2");
  if (parties < 2) throw std::domain_error("AncillaSpec: parties must be >= 2");
  AncillaSpec spec(Kind::Maximal, levels, parties);
  spec.coefficients_.assign(levels, cx(1.0 / std::sqrt(static_cast<double>(levels))));
  return spec;
}

AncillaSpec AncillaSpec::schmidt(std::vector<cx> coefficients, int parties) {
  if (coefficients.size() < 2) throw std::domain_error("AncillaSpec: need at least 2 coefficients");
  if (parties < 2) throw std::domain_error("AncillaSpec: parties must be >= 2");
  double n2 = 0.0;
  for (const cx& c : coefficients) n2 += std::norm(c);
  if (std::abs(n2 - 1.0) > 1e-9)
    throw std::invalid_argument("AncillaSpec: Schmidt coefficients must be normalized");
  const double scale = 1.0 / std::sqrt(n2);
  for (cx& c : coefficients) c *= scale;
  AncillaSpec spec(Kind::Schmidt, static_cast<int>(coefficients.size()), parties);
  spec.coefficients_ = std::move(coefficients);
  return spec;
}

AncillaSpec AncillaSpec::density(DensityMatrix rho) {
  const HilbertSpace& space = rho.space();
  if (space.subsystem_count() < 2)
    throw std::invalid_argument("AncillaSpec: density ancilla needs one qudit per party");
  const int levels = space.dim(0);
  for (int i = 0; i < space.subsystem_count(); ++i)
    if (space.dim(i) != levels)
      throw std::invalid_argument("AncillaSpec: all ancilla qudits must share one dimension");
  if (levels < 2) throw std::domain_error("AncillaSpec: levels must be >= 2");
  AncillaSpec spec(Kind::Density, levels, space.subsystem_count());
  spec.rho_ = std::move(rho);
  return spec;
}

StateVector AncillaSpec::pure_state() const {
  if (kind_ == Kind::Density)
    throw std::logic_error("AncillaSpec: density ancilla has no pure state");
  HilbertSpace space(std::vector<int>(parties_, levels_));
  std::vector<cx> amps(space.total_dim(), cx(0.0));
  long long diag_stride = 0;
  for (int p = 0; p < parties_; ++p) diag_stride += space.stride(p);
  for (int j = 0; j < levels_; ++j) amps[j * diag_stride] = coefficients_[j];
  return StateVector(std::move(space), std::move(amps));
}

DensityMatrix AncillaSpec::density_matrix() const {
  if (kind_ == Kind::Density) return *rho_;
  return density_from_state(pure_state());
}

DensityMatrix AncillaSpec::one_party_marginal() const {
  if (kind_ == Kind::Density) return partial_trace(*rho_, {0});
  // Schmidt form: the marginal is diagonal in the computational basis.
  std::vector<cx> entries(static_cast<std::size_t>(levels_) * levels_, cx(0.0));
  for (int j = 0; j < levels_; ++j)
    entries[static_cast<std::size_t>(j) * levels_ + j] = std::norm(coefficients_[j]);
  return DensityMatrix(HilbertSpace({levels_}), std::move(entries));
}

void StellarModel::validate() const {
  if (time_bins < 1) throw std::domain_error("StellarModel: time_bins must be >= 1");
  if (!(epsilon1 > 0.0) || !(epsilon1 < 1.0))
    throw std::domain_error("StellarModel: epsilon1 must lie in (0, 1)");
  if (sources.empty()) throw std::domain_error("StellarModel: need at least one point source");
  double total = 0.0;
  for (const PointSource& s : sources) {
    if (s.probability < 0.0) throw std::domain_error("StellarModel: negative source probability");
    total += s.probability;
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw std::domain_error("StellarModel: source probabilities must sum to 1");
}

double StellarModel::single_photon_probability() const {
  return time_bins * epsilon1 * std::pow(1.0 - epsilon1, time_bins - 1);
}

cx StellarModel::visibility() const {
  cx nu = 0.0;
  for (const PointSource& s : sources) nu += s.probability * std::polar(1.0, -s.phase);
  return nu;
}

ReducedRefereeState referee_state(const GameConfig& config) {
  config.validate();
  const int dim = config.parties * config.time_bins + 1;
  std::vector<cx> amps(dim, cx(0.0));
  if (config.time_bin == 0) {
    amps[0] = 1.0;
    return ReducedRefereeState(config.time_bins, config.parties, std::move(amps));
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(config.parties));
  for (int p = 0; p < config.parties; ++p) {
    const double phase = (p == 0) ? 0.0 : config.phases[p - 1];
    amps[1 + p * config.time_bins + (config.time_bin - 1)] = std::polar(scale, phase);
  }
  return ReducedRefereeState(config.time_bins, config.parties, std::move(amps));
}

DensityMatrix stellar_state(const StellarModel& model) {
  model.validate();
  const int bins = model.time_bins;
  const int dim = 2 * bins + 1;
  const double eps = model.single_photon_probability();
  const cx nu = model.visibility();
  std::vector<cx> entries(static_cast<std::size_t>(dim) * dim, cx(0.0));
  auto at = [&](int r, int c) -> cx& { return entries[static_cast<std::size_t>(r) * dim + c]; };
  at(0, 0) = 1.0 - eps;
  const double w = eps / bins;
  for (int i = 1; i <= bins; ++i) {
    const int a = 1 + (i - 1);         // party 0 (A), bin i
    const int b = 1 + bins + (i - 1);  // party 1 (B), bin i
    at(a, a) += 0.5 * w;
    at(b, b) += 0.5 * w;
    at(a, b) += 0.5 * w * nu;
    at(b, a) += 0.5 * w * std::conj(nu);
  }
  return DensityMatrix(HilbertSpace({dim}), std::move(entries));
}

double referee_verify(const ReducedRefereeState& post, const GameConfig& config) {
  const ReducedRefereeState reference = referee_state(config);
  if (post.dim() != reference.dim())
    throw std::invalid_argument("referee_verify: state shape does not match config");
  cx overlap = 0.0;
  for (int i = 0; i < post.dim(); ++i)
    overlap += std::conj(reference.amps()[i]) * post.amps()[i];
  return std::norm(overlap);
}

double referee_verify(const DensityMatrix& post, const GameConfig& config) {
  const ReducedRefereeState reference = referee_state(config);
  if (post.dim() != reference.dim())
    throw std::invalid_argument("referee_verify: state shape does not match config");
  return fidelity(reference.to_state(), post);
}

StateVector apply_strategy(const ReducedRefereeState& referee, const AncillaSpec& ancilla) {
  if (ancilla.parties() != referee.parties())
    throw std::invalid_argument("apply_strategy: ancilla party count mismatch");
  StateVector joint = tensor(referee.to_state(), ancilla.pure_state());
  const int anc_dim = static_cast<int>(int_pow(ancilla.levels(), ancilla.parties()));
  std::vector<cx> amps = joint.amps();
  for (int r = 0; r < referee.dim(); ++r)
    for (int a = 0; a < anc_dim; ++a)
      amps[static_cast<std::size_t>(r) * anc_dim + a] *=
          strategy_phase(r, a, ancilla.levels(), ancilla.parties(), referee.time_bins());
  return StateVector(joint.space(), std::move(amps));
}

DensityMatrix apply_strategy(const DensityMatrix& referee, const AncillaSpec& ancilla) {
  const int ref_dim = referee.dim();
  const int time_bins = (ref_dim - 1) / ancilla.parties();
  if (ref_dim != ancilla.parties() * time_bins + 1)
    throw std::invalid_argument("apply_strategy: referee dimension is not K*N+1");
  const DensityMatrix anc = ancilla.density_matrix();
  const int anc_dim = anc.dim();
  const long long joint_dim = static_cast<long long>(ref_dim) * anc_dim;
  if (joint_dim > kMaxDensityJointDim)
    throw std::invalid_argument("apply_strategy: density joint state too large");

  std::vector<int> dims = {ref_dim};
  for (int p = 0; p < ancilla.parties(); ++p) dims.push_back(ancilla.levels());
  HilbertSpace space(dims);

  const int d = static_cast<int>(joint_dim);
  std::vector<cx> entries(static_cast<std::size_t>(d) * d);
  for (int r = 0; r < ref_dim; ++r) {
    for (int a = 0; a < anc_dim; ++a) {
      const cx left = strategy_phase(r, a, ancilla.levels(), ancilla.parties(), time_bins);
      const int row = r * anc_dim + a;
      for (int rp = 0; rp < ref_dim; ++rp) {
        for (int b = 0; b < anc_dim; ++b) {
          const cx right =
              std::conj(strategy_phase(rp, b, ancilla.levels(), ancilla.parties(), time_bins));
          entries[static_cast<std::size_t>(row) * d + rp * anc_dim + b] =
              referee.entry(r, rp) * anc.entry(a, b) * left * right;
        }
      }
    }
  }
  return DensityMatrix(std::move(space), std::move(entries));
}

int decode_timebin(const std::vector<int>& outcomes, int levels) {
  if (levels < 1) throw std::domain_error("decode_timebin: levels must be >= 1");
  long long sum = 0;
  for (int x : outcomes) {
    if (x < 0 || x >= levels) throw std::domain_error("decode_timebin: outcome out of range");
    sum += x;
  }
  return static_cast<int>(sum % levels);
}

RoundRecord play_round(const GameConfig& config, const AncillaSpec& ancilla, std::uint64_t seed) {
  config.validate();
  check_game_ancilla(config, ancilla);
  SplitMix64 rng(seed);

  StateVector ancilla_state = [&]() {
    if (ancilla.kind() != AncillaSpec::Kind::Density) return ancilla.pure_state();
    // Mixed ancilla: draw a pure state from the spectral decomposition.
    const DensityMatrix rho = ancilla.density_matrix();
    HermitianEigensystem eig = hermitian_eigensystem(rho);
    double total = 0.0;
    for (double& w : eig.values) {
      w = std::max(w, 0.0);
      total += w;
    }
    double u = rng.uniform01() * total;
    int pick = static_cast<int>(eig.values.size()) - 1;
    double cumulative = 0.0;
    for (std::size_t i = 0; i < eig.values.size(); ++i) {
      if (eig.values[i] <= 0.0) continue;
      cumulative += eig.values[i];
      pick = static_cast<int>(i);
      if (u < cumulative) break;
    }
    return StateVector::normalized(rho.space(), eig.vectors[pick]);
  }();

  const ReducedRefereeState referee = referee_state(config);
  StateVector joint = tensor(referee.to_state(), ancilla_state);
  {
    const int anc_dim = ancilla_state.dim();
    std::vector<cx> amps = joint.amps();
    for (int r = 0; r < referee.dim(); ++r)
      for (int a = 0; a < anc_dim; ++a)
        amps[static_cast<std::size_t>(r) * anc_dim + a] *=
            strategy_phase(r, a, config.levels, config.parties, config.time_bins);
    joint = StateVector(joint.space(), std::move(amps));
  }

  const UnitaryMatrix fourier = fourier_matrix(config.levels);
  std::vector<int> outcomes(config.parties);
  for (int p = 0; p < config.parties; ++p) {
    MeasurementResult m = measure_subsystem(joint, {1 + p}, fourier, rng);
    outcomes[p] = m.outcome;
    joint = std::move(m.collapsed);
  }

  // Every ancilla leg is collapsed onto a Fourier ket, so rotating the legs
  // back to the computational basis turns the joint into
  // (referee post-state) ⊗ |x_1..x_K⟩ and the referee amplitudes can be read
  // off the matching slice.
  const UnitaryMatrix fourier_adj = fourier.adjoint();
  for (int p = 0; p < config.parties; ++p) joint = apply_unitary(joint, fourier_adj, {1 + p});
  int anc_index = 0;
  for (int p = 0; p < config.parties; ++p) anc_index = anc_index * config.levels + outcomes[p];
  const int anc_dim = static_cast<int>(int_pow(config.levels, config.parties));
  std::vector<cx> post_amps(referee.dim());
  for (int r = 0; r < referee.dim(); ++r)
    post_amps[r] = joint.amp(r * anc_dim + anc_index);
  ReducedRefereeState post(config.time_bins, config.parties,
                           StateVector::normalized(HilbertSpace({referee.dim()}),
                                                   std::move(post_amps))
                               .amps());

  RoundRecord record;
  record.outcomes = outcomes;
  record.decoded_bin = decode_timebin(outcomes, config.levels);
  record.post_fidelity = referee_verify(post, config);
  record.referee_accept = rng.uniform01() < record.post_fidelity;
  record.seed = seed;
  return record;
}

ExactAnalysis analyze_exact(const GameConfig& config, const AncillaSpec& ancilla) {
  config.validate();
  check_game_ancilla(config, ancilla);
  const OutcomeTable table = outcome_table(config, ancilla);
  const std::vector<int> sums = digit_sums_mod(config.levels, config.parties);
  const int target = config.time_bin % config.levels;

  ExactAnalysis analysis;
  analysis.decode_distribution.assign(config.levels, 0.0);
  for (std::size_t a = 0; a < table.mass.size(); ++a) {
    const int bin = sums[a];
    analysis.decode_distribution[bin] += table.mass[a];
    analysis.mean_acceptance += table.accept[a];
    if (bin == target) analysis.win_probability += table.accept[a];
    if (table.mass[a] > kBranchMassFloor)
      analysis.min_branch_fidelity =
          std::min(analysis.min_branch_fidelity, table.accept[a] / table.mass[a]);
  }
  analysis.decode_probability = analysis.decode_distribution[target];
  return analysis;
}

std::vector<double> decode_distribution(const DensityMatrix& referee, const AncillaSpec& ancilla) {
  const int ref_dim = referee.dim();
  const int parties = ancilla.parties();
  const int time_bins = (ref_dim - 1) / parties;
  if (ref_dim != parties * time_bins + 1 || time_bins < 1)
    throw std::invalid_argument("decode_distribution: referee dimension is not K*N+1");
  const int levels = ancilla.levels();

  // Only the diagonal referee populations enter the outcome distribution.
  const DensityMatrix anc = ancilla.density_matrix();
  const int anc_dim = anc.dim();
  const std::vector<int> sums = digit_sums_mod(levels, parties);
  std::vector<double> dist(levels, 0.0);

  std::vector<cx> block(anc_dim);
  for (int r = 0; r < ref_dim; ++r) {
    const double population = referee.entry(r, r).real();
    if (population <= 0.0) continue;
    // diag of F†(phase_r ρ phase_r†)F via the transformed Fourier kets
    for (int out = 0; out < anc_dim; ++out) {
      // f = column `out` of F^⊗K; compute ⟨f|phase_r ρ phase_r†|f⟩
      cx acc = 0.0;
      const double scale = 1.0 / std::pow(static_cast<double>(levels), parties);
      for (int a = 0; a < anc_dim; ++a) {
        long long ea = 0;
        int ra = a, ro = out;
        for (int p = 0; p < parties; ++p) {
          ea += static_cast<long long>(ra % levels) * (ro % levels);
          ra /= levels;
          ro /= levels;
        }
        block[a] = root_of_unity(levels, ea) *
                   std::conj(strategy_phase(r, a, levels, parties, time_bins));
      }
      for (int a = 0; a < anc_dim; ++a) {
        cx row = 0.0;
        for (int b = 0; b < anc_dim; ++b) row += anc.entry(a, b) * block[b];
        acc += std::conj(block[a]) * row;
      }
      dist[sums[out]] += population * scale * acc.real();
    }
  }
  return dist;
}

WinEstimate win_probability(const GameConfig& config, const AncillaSpec& ancilla, WinMode mode,
                            std::uint64_t trials, std::uint64_t seed) {
  if (mode == WinMode::Exact) {
    return WinEstimate{analyze_exact(config, ancilla).win_probability, 0.0};
  }
  if (trials == 0) throw std::invalid_argument("win_probability: trials must be >= 1");
  std::uint64_t wins = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    RoundRecord record = play_round(config, ancilla, derive_seed(seed, t));
    if (record.referee_accept && record.decoded_bin == config.time_bin % config.levels) ++wins;
  }
  const double p = static_cast<double>(wins) / static_cast<double>(trials);
  const double se = std::sqrt(std::max(p * (1.0 - p), 0.0) / static_cast<double>(trials));
  return WinEstimate{p, se};
}

WinEstimate average_win_probability(int time_bins, int levels, int parties,
                                    const AncillaSpec& ancilla, WinMode mode, int phi_grid,
                                    std::uint64_t trials, std::uint64_t seed) {
  if (phi_grid < 1) throw std::invalid_argument("average_win_probability: phi_grid must be >= 1");
  GameConfig config;
  config.time_bins = time_bins;
  config.levels = levels;
  config.parties = parties;
  config.allow_unwinnable = true;
  config.phases.assign(parties - 1, 0.0);

  if (mode == WinMode::Exact) {
    double total = 0.0;
    for (int n = 0; n <= time_bins; ++n) {
      for (int g = 0; g < phi_grid; ++g) {
        config.time_bin = n;
        const double phi = 2.0 * std::numbers::pi_v<double> * g / phi_grid;
        std::fill(config.phases.begin(), config.phases.end(), phi);
        total += analyze_exact(config, ancilla).win_probability;
      }
    }
    return WinEstimate{total / ((time_bins + 1.0) * phi_grid), 0.0};
  }

  if (trials == 0)
    throw std::invalid_argument("average_win_probability: trials must be >= 1");
  std::uint64_t wins = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    SplitMix64 pick(derive_seed(seed, 2 * t));
    const int n = static_cast<int>(pick.uniform01() * (time_bins + 1));
    const int g = static_cast<int>(pick.uniform01() * phi_grid);
    config.time_bin = std::min(n, time_bins);
    const double phi = 2.0 * std::numbers::pi_v<double> * std::min(g, phi_grid - 1) / phi_grid;
    std::fill(config.phases.begin(), config.phases.end(), phi);
    RoundRecord record = play_round(config, ancilla, derive_seed(seed, 2 * t + 1));
    if (record.referee_accept && record.decoded_bin == config.time_bin % levels) ++wins;
  }
  const double p = static_cast<double>(wins) / static_cast<double>(trials);
  const double se = std::sqrt(std::max(p * (1.0 - p), 0.0) / static_cast<double>(trials));
  return WinEstimate{p, se};
}

double stellar_win_probability(const StellarModel& model, const AncillaSpec& ancilla) {
  model.validate();
  if (ancilla.parties() != 2)
    throw std::invalid_argument("stellar_win_probability: two-telescope setting only");
  const double eps = model.single_photon_probability();

  GameConfig config;
  config.time_bins = model.time_bins;
  config.levels = ancilla.levels();
  config.parties = 2;
  config.time_bin = 0;
  config.phases = {0.0};

  double total = (1.0 - eps) * analyze_exact(config, ancilla).win_probability;
  for (int bin = 1; bin <= model.time_bins; ++bin) {
    for (const PointSource& source : model.sources) {
      config.time_bin = bin;
      config.phases = {source.phase};
      total += (eps / model.time_bins) * source.probability *
               analyze_exact(config, ancilla).win_probability;
    }
  }
  return total;
}

}  // namespace clockgame
