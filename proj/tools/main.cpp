#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "harness/commands.hpp"
#include "harness/config.hpp"
#include "clockgame/version.hpp"

namespace {

struct SubcommandArgs {
  std::string config_path;
  clockgame::cli::CommonOptions options;
};

void attach_common_flags(CLI::App* sub, SubcommandArgs& args) {
  sub->add_option("--config", args.config_path, "JSON config file ('-' for stdin)");
  sub->add_option("--seed", args.options.seed, "base seed for all derived RNG streams");
  sub->add_option(
      "--trials",
      [&args](const std::vector<std::string>& values) {
        args.options.trials = std::stoull(values.back());
        return true;
      },
      "Monte-Carlo trial count (overrides the config)");
  sub->add_option("--out", args.options.out, "output CSV path (stdout when omitted)");
  sub->add_flag("--reproducible", args.options.reproducible,
                "suppress the timestamp metadata line for byte-stable output");
}

std::string derived_svg_path(const std::string& csv_path) {
  const std::size_t dot = csv_path.find_last_of('.');
  const std::size_t slash = csv_path.find_last_of('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
    return csv_path + ".svg";
  return csv_path.substr(0, dot) + ".svg";
}

int run(const std::string& command, const SubcommandArgs& args) {
  using clockgame::cli::ConfigError;
  using clockgame::cli::Json;

  Json config = Json::object();
  try {
    if (!args.config_path.empty())
      config = clockgame::cli::load_config_document(args.config_path);
  } catch (const ConfigError& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 2;
  }

  clockgame::cli::CommonOptions options = args.options;
  try {
    // flags override top-level scalar config fields
    if (config.contains("seed") && !options.seed)
      options.seed = static_cast<std::uint64_t>(
          clockgame::cli::require_int(config, "seed", 0, 0, INT64_MAX));
    if (options.out.empty())
      options.out = clockgame::cli::require_string(config, "output_path", "");

    clockgame::cli::RunResult result = clockgame::cli::run_command(command, config, options);
    if (!result.warnings.empty()) std::cerr << result.warnings;

    if (options.out.empty()) {
      std::cout << result.csv;
      if (!result.svg.empty())
        std::cerr << "note: no --out path given; SVG chart not written\n";
    } else {
      std::ofstream csv(options.out, std::ios::binary);
      if (!csv) {
        std::cerr << "error: cannot write '" << options.out << "'\n";
        return 2;
      }
      csv << result.csv;
      if (!result.svg.empty()) {
        const std::string svg_path = derived_svg_path(options.out);
        std::ofstream svg(svg_path, std::ios::binary);
        if (!svg) {
          std::cerr << "error: cannot write '" << svg_path << "'\n";
          return 2;
        }
        svg << result.svg;
      }
    }
    return 0;
  } catch (const ConfigError& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 2;
  } catch (const std::exception& error) {
    std::cerr << "error: numerical validation failure: " << error.what() << "\n";
    return 3;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"clock-game simulation toolkit"};
  app.set_version_flag("--version", clockgame::kVersion);
  app.require_subcommand(1);

  SubcommandArgs clock_args, noise_args, fisher_args, audit_args;
  attach_common_flags(
      app.add_subcommand("clock-game", "exact / Monte-Carlo win probabilities over (N, D, K)"),
      clock_args);
  attach_common_flags(
      app.add_subcommand("noise-sweep", "linearized noisy ancilla win probabilities"),
      noise_args);
  attach_common_flags(
      app.add_subcommand("fisher-curve", "average Fisher information versus ancilla pairs"),
      fisher_args);
  attach_common_flags(app.add_subcommand("audit", "entanglement bound audit and qubit costs"),
                      audit_args);

  CLI11_PARSE(app, argc, argv);

  if (app.got_subcommand("clock-game")) return run("clock-game", clock_args);
  if (app.got_subcommand("noise-sweep")) return run("noise-sweep", noise_args);
  if (app.got_subcommand("fisher-curve")) return run("fisher-curve", fisher_args);
  if (app.got_subcommand("audit")) return run("audit", audit_args);
  return 2;
}
