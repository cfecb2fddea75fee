#include "harness/commands.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "clockgame/game.hpp"
#include "clockgame/noise.hpp"
#include "clockgame/phase_extraction.hpp"
#include "clockgame/resource.hpp"
#include "clockgame/version.hpp"
#include "harness/csv.hpp"
#include "harness/svg.hpp"

namespace clockgame::cli {

namespace {

constexpr double kPi = std::numbers::pi_v<double>;

CsvMetadata metadata_for(const CommonOptions& options) {
  CsvMetadata meta;
  meta.seed = options.seed;
  meta.version = kVersion;
  meta.include_timestamp = !options.reproducible;
  return meta;
}

// --- ancilla configs --------------------------------------------------------

struct AncillaConfig {
  enum class Kind { Maximal, Product, Schmidt } kind = Kind::Maximal;
  std::vector<double> coefficients;  // Schmidt only
  std::string label;
};

AncillaConfig parse_ancilla(const Json& value, const std::string& field) {
  AncillaConfig parsed;
  if (value.is_string()) {
    const std::string name = value.get<std::string>();
    if (name == "maximal") {
      parsed.kind = AncillaConfig::Kind::Maximal;
    } else if (name == "product") {
      parsed.kind = AncillaConfig::Kind::Product;
    } else {
      throw ConfigError("config: field '" + field + "' must be \"maximal\", \"product\" or a schmidt object");
    }
    parsed.label = name;
    return parsed;
  }
  if (!value.is_object())
    throw ConfigError("config: field '" + field + "' must be a string or object");
  for (const auto& [key, item] : value.items()) {
    (void)item;
    if (key != "kind" && key != "coefficients")
      throw ConfigError("config: unknown field '" + field + "." + key + "'");
  }
  const std::string kind = require_string(value, "kind", "");
  if (kind != "schmidt")
    throw ConfigError("config: field '" + field + ".kind' must be \"schmidt\"");
  if (!value.contains("coefficients") || !value.at("coefficients").is_array())
    throw ConfigError("config: field '" + field + ".coefficients' must be a number array");
  for (const Json& c : value.at("coefficients")) {
    if (!c.is_number())
      throw ConfigError("config: field '" + field + ".coefficients' must hold numbers");
    parsed.coefficients.push_back(c.get<double>());
  }
  if (parsed.coefficients.size() < 2)
    throw ConfigError("config: field '" + field + ".coefficients' needs at least 2 entries");
  parsed.kind = AncillaConfig::Kind::Schmidt;
  std::ostringstream label;
  label << "schmidt(";
  for (std::size_t i = 0; i < parsed.coefficients.size(); ++i) {
    if (i) label << ';';
    char buffer[24];
    std::snprintf(buffer, sizeof(buffer), "%.6g", parsed.coefficients[i]);
    label << buffer;
  }
  label << ')';
  parsed.label = label.str();
  return parsed;
}

AncillaSpec build_ancilla(const AncillaConfig& parsed, int levels, int parties,
                          const std::string& field) {
  switch (parsed.kind) {
    case AncillaConfig::Kind::Maximal:
      return AncillaSpec::maximal(levels, parties);
    case AncillaConfig::Kind::Product: {
      std::vector<cx> coeffs(levels, cx(0.0));
      coeffs[0] = 1.0;
      return AncillaSpec::schmidt(std::move(coeffs), parties);
    }
    case AncillaConfig::Kind::Schmidt: {
      if (static_cast<int>(parsed.coefficients.size()) != levels)
        throw ConfigError("config: field '" + field + ".coefficients' must have D=" +
                          std::to_string(levels) + " entries");
      std::vector<cx> coeffs(parsed.coefficients.begin(), parsed.coefficients.end());
      try {
        return AncillaSpec::schmidt(std::move(coeffs), parties);
      } catch (const std::exception& error) {
        throw ConfigError(std::string("config: field '") + field + "': " + error.what());
      }
    }
  }
  throw ConfigError("config: field '" + field + "' is malformed");
}

// --- clock-game --------------------------------------------------------------

RunResult cmd_clock_game(const Json& config, const CommonOptions& options) {
  reject_unknown_fields(config,
                        {"N", "D", "K", "ancilla", "mode", "trials", "phi_grid", "seed",
                         "output_path"},
                        "clock-game");
  const std::vector<long long> bins = int_grid(config, "N", {3}, 1, 64);
  const std::vector<long long> parties = int_grid(config, "K", {2}, 2, 6);
  const int phi_grid = static_cast<int>(require_int(config, "phi_grid", 32, 1, 1 << 16));
  const std::string mode_name = require_string(config, "mode", "exact");
  if (mode_name != "exact" && mode_name != "monte_carlo")
    throw ConfigError("config: field 'mode' must be \"exact\" or \"monte_carlo\"");
  const WinMode mode = mode_name == "exact" ? WinMode::Exact : WinMode::MonteCarlo;
  std::uint64_t trials = options.trials.value_or(
      static_cast<std::uint64_t>(require_int(config, "trials", 0, 0, 1LL << 40)));
  if (mode == WinMode::MonteCarlo && trials == 0)
    throw ConfigError("config: field 'trials' must be >= 1 in monte_carlo mode");

  AncillaConfig ancilla_config =
      config.contains("ancilla") ? parse_ancilla(config.at("ancilla"), "ancilla")
                                 : AncillaConfig{};
  if (ancilla_config.label.empty()) ancilla_config.label = "maximal";

  // validate each grid point up front so failures surface as config errors
  struct Row {
    int N, D, K;
  };
  std::vector<Row> rows;
  for (long long N : bins) {
    const std::vector<long long> levels =
        int_grid(config, "D", {N + 1}, 2, 4096);
    for (long long D : levels) {
      for (long long K : parties) {
        if (N > D - 1)
          throw ConfigError("config: field 'N' must satisfy N <= D-1 (N=" + std::to_string(N) +
                            ", D=" + std::to_string(D) + ")");
        const long long joint = (K * N + 1) * static_cast<long long>(std::pow(D, K));
        if (joint > (1LL << 22))
          throw ConfigError("config: field 'D'/'K' grid point too large to simulate");
        build_ancilla(ancilla_config, static_cast<int>(D), static_cast<int>(K), "ancilla");
        rows.push_back({static_cast<int>(N), static_cast<int>(D), static_cast<int>(K)});
      }
    }
  }

  std::ostringstream csv;
  write_metadata(csv, metadata_for(options));
  write_row(csv, {"N", "D", "K", "ancilla", "mode", "p_win", "stderr"});
  std::size_t row_index = 0;
  for (const Row& row : rows) {
    AncillaSpec ancilla = build_ancilla(ancilla_config, row.D, row.K, "ancilla");
    WinEstimate estimate =
        average_win_probability(row.N, row.D, row.K, ancilla, mode, phi_grid, trials,
                                derive_seed(options.seed, row_index));
    write_row(csv, {std::to_string(row.N), std::to_string(row.D), std::to_string(row.K),
                    ancilla_config.label, mode_name, format_double(estimate.p_win),
                    format_double(estimate.std_error)});
    ++row_index;
  }
  return RunResult{csv.str(), {}};
}

// --- noise-sweep --------------------------------------------------------------

RunResult cmd_noise_sweep(const Json& config, const CommonOptions& options) {
  reject_unknown_fields(config,
                        {"D", "dt_gamma1", "dt_gamma2", "time_bin", "oracle", "oracle_steps",
                         "seed", "output_path"},
                        "noise-sweep");
  const std::vector<long long> levels = int_grid(config, "D", {2, 3, 4, 5, 6, 7, 8}, 2, 16);
  const std::vector<double> gamma1 = number_grid(config, "dt_gamma1", {0.0, 0.01, 0.05});
  const std::vector<double> gamma2 = number_grid(config, "dt_gamma2", {0.0});
  const bool with_oracle = require_bool(config, "oracle", false);
  const int oracle_steps = static_cast<int>(require_int(config, "oracle_steps", 1000, 1, 1 << 20));
  const int time_bin = static_cast<int>(require_int(config, "time_bin", 1, 0, 4096));
  for (double g : gamma1)
    if (g < 0.0) throw ConfigError("config: field 'dt_gamma1' must be nonnegative");
  for (double g : gamma2)
    if (g < 0.0) throw ConfigError("config: field 'dt_gamma2' must be nonnegative");
  for (long long D : levels)
    if (time_bin >= D)
      throw ConfigError("config: field 'time_bin' must be < D for every swept D");

  std::ostringstream csv;
  write_metadata(csv, metadata_for(options));
  std::vector<std::string> header = {"D",         "dtGamma1",     "dtGamma2",
                                     "p_win_sim", "p_win_closed", "abs_diff"};
  if (with_oracle) header.push_back("p_win_oracle");
  write_row(csv, header);

  std::ostringstream warnings;
  for (long long D : levels) {
    for (double g1 : gamma1) {
      for (double g2 : gamma2) {
        NoiseParams params = NoiseParams::uniform(static_cast<int>(D), 1.0, g1, g2);
        const NoisyAncilla noisy = combined_noisy_ancilla(static_cast<int>(D), params);
        if (!noisy.within_linear_regime)
          warnings << "warning: dtGamma1=" << format_double(g1) << ", dtGamma2="
                   << format_double(g2)
                   << " lies outside the linear regime (dtGamma >= 0.1); first-order "
                      "expressions are unreliable there\n";
        const double simulated =
            noisy_win_probability(static_cast<int>(D), time_bin, noisy.rho, ReplyMode::Photon);
        const double closed = closed_form_pwin(static_cast<int>(D), params, NoiseChannel::Both);
        std::vector<std::string> row = {std::to_string(D),      format_double(g1),
                                        format_double(g2),      format_double(simulated),
                                        format_double(closed),  format_double(std::abs(simulated - closed))};
        if (with_oracle) {
          DensityMatrix integrated =
              lindblad_integrator_oracle(static_cast<int>(D), params, 1.0, oracle_steps);
          row.push_back(format_double(
              noisy_win_probability(static_cast<int>(D), time_bin, integrated, ReplyMode::Photon)));
        }
        write_row(csv, row);
      }
    }
  }
  return RunResult{csv.str(), {}, warnings.str()};
}

// --- fisher-curve --------------------------------------------------------------

RunResult cmd_fisher_curve(const Json& config, const CommonOptions& options) {
  reject_unknown_fields(config,
                        {"n_min", "n_max", "phi_grid", "sim_crosscheck_max", "seed",
                         "output_path"},
                        "fisher-curve");
  const int n_min = static_cast<int>(require_int(config, "n_min", 1, 1, 200));
  const int n_max = static_cast<int>(require_int(config, "n_max", 40, 1, 200));
  if (n_max < n_min) throw ConfigError("config: field 'n_max' must be >= n_min");
  const int phi_grid = static_cast<int>(require_int(config, "phi_grid", 1024, 64, 1 << 16));
  const int crosscheck_max =
      static_cast<int>(require_int(config, "sim_crosscheck_max", 0, 0, 12));

  std::ostringstream csv;
  write_metadata(csv, metadata_for(options));
  write_row(csv, {"n", "avg_fisher", "fisher_at_pi_2"});
  std::vector<std::pair<double, double>> curve;
  for (int n = n_min; n <= n_max; ++n) {
    const double average = average_fisher(n, phi_grid);
    const double at_quadrature = fisher_information(n, kPi / 2.0, 0.0).total;
    write_row(csv, {std::to_string(n), format_double(average), format_double(at_quadrature)});
    curve.emplace_back(n, average);

    if (n <= crosscheck_max) {
      // amplitude-level oracle must reproduce the closed forms mid-run
      for (int g = 0; g < 8; ++g) {
        ExtractionConfig point;
        point.pair_count = n;
        point.unknown_phase = 2.0 * kPi * g / 8;
        const std::vector<double> counts = alice_count_distribution(point);
        for (int k = 0; k < n; ++k) {
          if (std::abs(counts[k + 1] - sector_probability(n, k)) > 1e-10 ||
              std::abs(simulated_bit_probability(point, k + 1, 0) -
                       outcome_probability(n, k, point.unknown_phase, 0.0, 0)) > 1e-10)
            throw NumericalError("fisher-curve: simulation cross-check failed at n=" +
                                 std::to_string(n));
        }
      }
    }
  }

  std::string svg =
      line_chart("Average Fisher information per ancilla photon", "ancilla pairs n",
                 "average Fisher information", curve);
  return RunResult{csv.str(), std::move(svg)};
}

// --- audit ----------------------------------------------------------------------

RunResult cmd_audit(const Json& config, const CommonOptions& options) {
  reject_unknown_fields(config, {"N", "D", "ancillas", "cost_pairs", "seed", "output_path"},
                        "audit");
  // audit rows diagonalize a D x D marginal; N = 1023 (D = 1024) is the
  // largest point the worked comparisons use
  const std::vector<long long> bins = int_grid(config, "N", {1, 2, 3, 4, 5, 6, 7, 8}, 1, 1023);

  std::vector<AncillaConfig> ancillas;
  if (config.contains("ancillas")) {
    if (!config.at("ancillas").is_array())
      throw ConfigError("config: field 'ancillas' must be an array");
    int index = 0;
    for (const Json& entry : config.at("ancillas")) {
      ancillas.push_back(parse_ancilla(entry, "ancillas[" + std::to_string(index) + "]"));
      ++index;
    }
    if (ancillas.empty()) throw ConfigError("config: field 'ancillas' must not be empty");
  } else {
    ancillas.push_back(AncillaConfig{});
    ancillas.back().label = "maximal";
  }

  std::vector<std::pair<long long, long long>> cost_pairs = {{5, 1023}};
  if (config.contains("cost_pairs")) {
    cost_pairs.clear();
    if (!config.at("cost_pairs").is_array())
      throw ConfigError("config: field 'cost_pairs' must be an array of [M, N] pairs");
    for (const Json& pair : config.at("cost_pairs")) {
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer() ||
          !pair[1].is_number_integer())
        throw ConfigError("config: field 'cost_pairs' must be an array of [M, N] pairs");
      cost_pairs.emplace_back(pair[0].get<long long>(), pair[1].get<long long>());
    }
  }
  for (const auto& [m, n] : cost_pairs) {
    if (m < 2) throw ConfigError("config: field 'cost_pairs' requires M >= 2");
    if (n < 1) throw ConfigError("config: field 'cost_pairs' requires N >= 1");
  }

  std::ostringstream csv;
  write_metadata(csv, metadata_for(options));
  write_row(csv, {"N", "D", "entropy_ebits", "bound_ebits", "satisfied", "decode_prob"});
  for (long long N : bins) {
    const std::vector<long long> levels = int_grid(config, "D", {N + 1}, 2, 1024);
    for (long long D : levels) {
      if (D < N + 1)
        throw ConfigError("config: field 'D' must be at least N+1 for the audit rows");
      for (const AncillaConfig& parsed : ancillas) {
        AncillaSpec ancilla = build_ancilla(parsed, static_cast<int>(D), 2, "ancillas");
        AuditReport report = entanglement_audit(ancilla, static_cast<int>(N));
        const double decode =
            decode_probability_curve(ancilla.coefficients(), static_cast<int>(D));
        write_row(csv, {std::to_string(N), std::to_string(D),
                        format_double(report.measured_entropy), format_double(report.bound),
                        report.satisfied ? "true" : "false", format_double(decode)});
      }
    }
  }

  csv << "# cost-table\n";
  write_row(csv, {"M", "N", "gottesman", "clockgame"});
  for (const auto& [m, n] : cost_pairs) {
    CostComparison cost = cost_comparison(static_cast<int>(m), static_cast<int>(n));
    write_row(csv, {std::to_string(m), std::to_string(n), std::to_string(cost.gottesman_qubits),
                    std::to_string(cost.clockgame_qubits)});
  }
  return RunResult{csv.str(), {}};
}

}  // namespace

RunResult run_command(const std::string& command, const Json& config,
                      const CommonOptions& options) {
  if (command == "clock-game") return cmd_clock_game(config, options);
  if (command == "noise-sweep") return cmd_noise_sweep(config, options);
  if (command == "fisher-curve") return cmd_fisher_curve(config, options);
  if (command == "audit") return cmd_audit(config, options);
  throw ConfigError("unknown command '" + command + "'");
}

}  // namespace clockgame::cli
