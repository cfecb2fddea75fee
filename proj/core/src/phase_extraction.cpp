#include "clockgame/phase_extraction.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace clockgame {

namespace {

constexpr double kSingularityTol = 1e-9;
constexpr double kTwoPi = 2.0 * std::numbers::pi_v<double>;

long long binomial_ll(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long long result = 1;
  for (int i = 1; i <= k; ++i) result = result * (n - k + i) / i;
  return result;
}

double binomial_d(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double result = 1.0;
  for (int i = 1; i <= k; ++i) result *= static_cast<double>(n - k + i) / i;
  return result;
}

// Alice's configuration enumeration inside the sector with `count` photons on
// the left: group A (stellar mode empty, |pattern| = count) precedes group B
// (stellar occupied, |pattern| = count-1); patterns ascend numerically inside
// each group. Returned entries are sector-state indices.
std::vector<int> sector_configurations(int pair_count, int count) {
  std::vector<int> configs;
  for (unsigned pattern = 0; pattern < (1u << pair_count); ++pattern)
    if (std::popcount(pattern) == count)
      configs.push_back(SectorState::index(0, pattern, pair_count));
  for (unsigned pattern = 0; pattern < (1u << pair_count); ++pattern)
    if (std::popcount(pattern) == count - 1)
      configs.push_back(SectorState::index(1, pattern, pair_count));
  return configs;
}

// 2√((n-k)(k+1))/(n+1)
double contrast(int pair_count, int k) {
  const double n = pair_count;
  return 2.0 * std::sqrt((n - k) * (k + 1.0)) / (n + 1.0);
}

// Samples aggregated to (k, bit) counts; the likelihood depends only on them.
struct LogLikelihood {
  std::vector<double> counts;  // index 2k + bit
  int pair_count;
  double delta;

  LogLikelihood(int n, const std::vector<MleSample>& samples, double d)
      : counts(2 * static_cast<std::size_t>(n), 0.0), pair_count(n), delta(d) {
    for (const MleSample& s : samples) counts[2 * s.k + s.bit] += 1.0;
  }

  double operator()(double phi) const {
    double total = 0.0;
    const double c = std::cos(phi - delta);
    for (int k = 0; k < pair_count; ++k) {
      const double ck = contrast(pair_count, k);
      if (counts[2 * k] > 0.0)
        total += counts[2 * k] * std::log(std::max(0.5 * (1.0 + ck * c), 1e-300));
      if (counts[2 * k + 1] > 0.0)
        total += counts[2 * k + 1] * std::log(std::max(0.5 * (1.0 - ck * c), 1e-300));
    }
    return total;
  }
};

double golden_section_max(const LogLikelihood& f, double lo, double hi) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > 1e-10) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    }
  }
  return 0.5 * (a + b);
}

double wrap_angle(double phi) {
  double w = std::fmod(phi, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  return w;
}

double circular_distance(double a, double b) {
  double d = std::abs(wrap_angle(a) - wrap_angle(b));
  return std::min(d, kTwoPi - d);
}

}  // namespace

void ExtractionConfig::validate(bool simulation) const {
  if (pair_count < 1) throw std::domain_error("ExtractionConfig: pair_count must be >= 1");
  if (simulation && pair_count > 16)
    throw std::domain_error("ExtractionConfig: simulation paths support pair_count <= 16");
}

SectorState::SectorState(int pair_count, std::vector<cx> amps)
    : pair_count_(pair_count), amps_(std::move(amps)) {
  if (pair_count_ < 1 || pair_count_ > 16)
    throw std::invalid_argument("SectorState: pair_count out of range");
  if (amps_.size() != (std::size_t{2} << pair_count_))
    throw std::invalid_argument("SectorState: need 2^(n+1) amplitudes");
  double n2 = 0.0;
  for (const cx& a : amps_) n2 += std::norm(a);
  if (std::abs(n2 - 1.0) > kStateNormTol)
    throw std::invalid_argument("SectorState: not normalized");
}

int SectorState::left_photon_count(int index) const {
  const int stellar = index >> pair_count_;
  const unsigned pattern = static_cast<unsigned>(index) & ((1u << pair_count_) - 1);
  return stellar + std::popcount(pattern);
}

SectorState joint_state(const ExtractionConfig& config) {
  config.validate();
  const int n = config.pair_count;
  std::vector<cx> amps(std::size_t{2} << n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(amps.size()));
  for (unsigned pattern = 0; pattern < (1u << n); ++pattern) {
    const int weight = std::popcount(pattern);
    // stellar photon on the right: ancilla phases only
    amps[SectorState::index(0, pattern, n)] =
        std::polar(scale, config.reference_phase * weight);
    // stellar photon on the left: extra e^{iφ}
    amps[SectorState::index(1, pattern, n)] =
        std::polar(scale, config.reference_phase * weight + config.unknown_phase);
  }
  return SectorState(n, std::move(amps));
}

std::vector<double> alice_count_distribution(const ExtractionConfig& config) {
  const SectorState state = joint_state(config);
  std::vector<double> dist(config.pair_count + 2, 0.0);
  for (int i = 0; i < state.dim(); ++i)
    dist[state.left_photon_count(i)] += std::norm(state.amps()[i]);
  return dist;
}

long long sector_size(int pair_count, int detected_count) {
  return binomial_ll(pair_count + 1, detected_count);
}

std::vector<cx> bob_conditional_state(const ExtractionConfig& config, int detected_count,
                                      int alice_config) {
  config.validate();
  const int n = config.pair_count;
  if (detected_count < 1 || detected_count > n)
    throw std::domain_error("bob_conditional_state: detected_count must lie in 1..n");
  const std::vector<int> configs = sector_configurations(n, detected_count);
  const int size = static_cast<int>(configs.size());
  if (alice_config < 0 || alice_config >= size)
    throw std::domain_error("bob_conditional_state: alice_config out of range");

  const SectorState state = joint_state(config);
  std::vector<cx> bob(size);
  const double dft_scale = 1.0 / std::sqrt(static_cast<double>(size));
  for (int j = 0; j < size; ++j) {
    // Alice's sector DFT entry U[j', j], then Bob's correction exp(-2πi·j·j'/M)
    const double angle = kTwoPi * static_cast<double>(j) * alice_config / size;
    const cx dft = std::polar(dft_scale, angle);
    const cx correction = std::polar(1.0, -angle);
    bob[j] = state.amps()[configs[j]] * dft * correction;
  }
  double n2 = 0.0;
  for (const cx& a : bob) n2 += std::norm(a);
  if (n2 <= 0.0) throw std::runtime_error("bob_conditional_state: empty branch");
  const double scale = 1.0 / std::sqrt(n2);
  for (cx& a : bob) a *= scale;
  return bob;
}

namespace {

// (p(bit=0), p(bit=1)) from a corrected conditional state.
std::pair<double, double> bob_bit_probabilities(const std::vector<cx>& corrected, int pair_count,
                                                int detected_count) {
  const long long group_a = binomial_ll(pair_count, detected_count);
  const long long group_b = binomial_ll(pair_count, detected_count - 1);
  cx alpha = 0.0, beta = 0.0;
  for (long long j = 0; j < group_a; ++j) alpha += corrected[j];
  for (long long j = group_a; j < group_a + group_b; ++j) beta += corrected[j];
  alpha /= std::sqrt(static_cast<double>(group_a));
  beta /= std::sqrt(static_cast<double>(group_b));
  const double p0 = 0.5 * std::norm(alpha + beta);
  const double p1 = 0.5 * std::norm(alpha - beta);
  return {p0, p1};
}

}  // namespace

double simulated_bit_probability(const ExtractionConfig& config, int detected_count, int bit) {
  if (bit != 0 && bit != 1) throw std::domain_error("simulated_bit_probability: bit must be 0 or 1");
  // j'-independent by construction; evaluate at j' = 0.
  const std::vector<cx> corrected = bob_conditional_state(config, detected_count, 0);
  auto [p0, p1] = bob_bit_probabilities(corrected, config.pair_count, detected_count);
  return bit == 0 ? p0 : p1;
}

ProtocolOutcome run_protocol(const ExtractionConfig& config, SplitMix64& rng) {
  config.validate();
  const int n = config.pair_count;
  const SectorState state = joint_state(config);

  // Alice samples a configuration: P(count c, outcome j') = |(DFT_c a)_{j'}|².
  double u = rng.uniform01();
  double cumulative = 0.0;
  int sampled_count = -1;
  int sampled_config = 0;
  for (int count = 0; count <= n + 1 && sampled_count < 0; ++count) {
    const std::vector<int> configs = sector_configurations(n, count);
    const int size = static_cast<int>(configs.size());
    for (int jp = 0; jp < size; ++jp) {
      cx amp = 0.0;
      const double dft_scale = 1.0 / std::sqrt(static_cast<double>(size));
      for (int j = 0; j < size; ++j)
        amp += state.amps()[configs[j]] *
               std::polar(dft_scale, kTwoPi * static_cast<double>(j) * jp / size);
      const double p = std::norm(amp);
      if (p <= 0.0) continue;
      cumulative += p;
      sampled_count = count;
      sampled_config = jp;
      if (u < cumulative) break;
      sampled_count = -1;
    }
  }
  if (sampled_count < 0) {  // numerical remainder lands on the last nonzero branch
    sampled_count = n + 1;
    sampled_config = 0;
  }

  ProtocolOutcome outcome;
  outcome.detected_count = sampled_count;
  outcome.alice_config = sampled_config;
  if (sampled_count == 0 || sampled_count == n + 1) {
    outcome.abort = true;
    return outcome;
  }

  const std::vector<cx> corrected = bob_conditional_state(config, sampled_count, sampled_config);
  auto [p0, p1] = bob_bit_probabilities(corrected, n, sampled_count);
  outcome.bob_bit = rng.uniform01() * (p0 + p1) < p0 ? 0 : 1;
  return outcome;
}

double outcome_probability(int pair_count, int k, double phi, double delta, int bit) {
  if (pair_count < 1) throw std::domain_error("outcome_probability: pair_count must be >= 1");
  if (k < 0 || k >= pair_count) throw std::domain_error("outcome_probability: k out of range");
  if (bit != 0 && bit != 1) throw std::domain_error("outcome_probability: bit must be 0 or 1");
  const double sign = bit == 0 ? 1.0 : -1.0;
  return 0.5 * (1.0 + sign * contrast(pair_count, k) * std::cos(phi - delta));
}

double sector_probability(int pair_count, int k) {
  if (pair_count < 1) throw std::domain_error("sector_probability: pair_count must be >= 1");
  if (k < 0 || k >= pair_count) throw std::domain_error("sector_probability: k out of range");
  return binomial_d(pair_count + 1, k + 1) * std::pow(0.5, pair_count + 1);
}

FisherReport fisher_information(int pair_count, double phi, double delta) {
  if (pair_count < 1) throw std::domain_error("fisher_information: pair_count must be >= 1");
  FisherReport report;
  report.pair_count = pair_count;
  report.sector_probabilities.resize(pair_count);
  report.conditional_fisher.resize(pair_count);
  const double theta = phi - delta;
  const double cos2 = std::cos(theta) * std::cos(theta);
  const double sin2 = std::sin(theta) * std::sin(theta);
  for (int k = 0; k < pair_count; ++k) {
    const double c = contrast(pair_count, k);
    const double denom = 1.0 / (c * c) - cos2;
    // denom -> 0 only when c -> 1 and cos² -> 1; the limit of the ratio is 1.
    const double g = denom < kSingularityTol ? 1.0 : sin2 / denom;
    report.sector_probabilities[k] = sector_probability(pair_count, k);
    report.conditional_fisher[k] = g;
    report.total += report.sector_probabilities[k] * g;
  }
  return report;
}

double average_fisher(int pair_count, int phi_grid_size) {
  if (phi_grid_size < 64) throw std::domain_error("average_fisher: grid must have >= 64 points");
  double total = 0.0;
  for (int g = 0; g < phi_grid_size; ++g) {
    const double phi = kTwoPi * g / phi_grid_size;
    total += fisher_information(pair_count, phi, 0.0).total;
  }
  return total / phi_grid_size;
}

std::vector<MleSample> draw_protocol_samples(const ExtractionConfig& config, int protocol_runs,
                                             SplitMix64& rng) {
  config.validate(false);
  const int n = config.pair_count;
  // cumulative sector law including the two abort masses
  std::vector<double> cumulative;
  cumulative.reserve(n + 2);
  double mass = std::pow(0.5, n + 1);  // empty-left abort
  cumulative.push_back(mass);
  for (int k = 0; k < n; ++k) {
    mass += sector_probability(n, k);
    cumulative.push_back(mass);
  }
  mass += std::pow(0.5, n + 1);  // full-left abort
  cumulative.push_back(mass);

  std::vector<MleSample> samples;
  samples.reserve(protocol_runs);
  for (int run = 0; run < protocol_runs; ++run) {
    const double u = rng.uniform01() * mass;
    int slot = 0;
    while (slot + 1 < static_cast<int>(cumulative.size()) && u >= cumulative[slot]) ++slot;
    if (slot == 0 || slot == n + 1) continue;  // abort
    const int k = slot - 1;
    const double p0 =
        outcome_probability(n, k, config.unknown_phase, config.reference_phase, 0);
    samples.push_back(MleSample{k, rng.uniform01() < p0 ? 0 : 1});
  }
  return samples;
}

MleResult mle_estimate(int pair_count, const std::vector<MleSample>& samples, double delta,
                       std::optional<double> prior_guess) {
  if (pair_count < 1) throw std::domain_error("mle_estimate: pair_count must be >= 1");
  if (samples.size() < 100)
    throw std::invalid_argument("mle_estimate: need at least 100 non-abort samples");
  for (const MleSample& s : samples)
    if (s.k < 0 || s.k >= pair_count || (s.bit != 0 && s.bit != 1))
      throw std::invalid_argument("mle_estimate: malformed sample");

  const LogLikelihood loglik(pair_count, samples, delta);

  // Three overlapping windows cover [0, 2π) against the mirror bimodality.
  double best_phi = 0.0;
  double best_val = -1e300;
  for (int window = 0; window < 3; ++window) {
    const double center = delta + kTwoPi * window / 3.0;
    const double lo = center - kTwoPi / 3.0;
    const double hi = center + kTwoPi / 3.0;
    const double candidate = golden_section_max(loglik, lo, hi);
    const double value = loglik(candidate);
    if (value > best_val) {
      best_val = value;
      best_phi = candidate;
    }
  }
  best_phi = wrap_angle(best_phi);

  if (prior_guess) {
    const double mirror = wrap_angle(2.0 * delta - best_phi);
    if (circular_distance(mirror, *prior_guess) < circular_distance(best_phi, *prior_guess))
      best_phi = mirror;
  }

  // Observed information J = -d²/dφ² Σ log p(bit|k, φ).
  double info = 0.0;
  const double theta = best_phi - delta;
  const double cos_t = std::cos(theta);
  const double sin_t = std::sin(theta);
  for (const MleSample& s : samples) {
    const double sc = (s.bit == 0 ? 1.0 : -1.0) * contrast(pair_count, s.k);
    const double denom = 1.0 + sc * cos_t;
    info += (sc * cos_t * denom + sc * sc * sin_t * sin_t) / (denom * denom);
  }

  MleResult result;
  result.phi_hat = best_phi;
  const double boundary = std::min(circular_distance(best_phi, delta),
                                   circular_distance(best_phi, delta + std::numbers::pi_v<double>));
  result.degenerate = info <= 0.0 || boundary < 1e-6;
  result.std_error = info > 0.0 ? 1.0 / std::sqrt(info) : std::numeric_limits<double>::infinity();
  return result;
}

}  // namespace clockgame
