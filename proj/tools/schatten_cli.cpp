#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "schatten/cli.hpp"

namespace cli = schatten::cli;

int main(int argc, char** argv) {
  CLI::App app{"Schatten-norm rearrangement experiments"};
  app.set_version_flag("--version", std::string(cli::kVersion));
  app.require_subcommand(1);

  cli::RunConfig config;
  std::string format;

  const std::map<std::string, cli::Command> commands = {
      {"verify", cli::Command::Verify},
      {"sweep", cli::Command::Sweep},
      {"search", cli::Command::Search},
      {"repro", cli::Command::Repro},
  };
  const std::map<std::string, std::string> blurbs = {
      {"verify", "check proved inequalities on random pairs from a family"},
      {"sweep", "tabulate the rearrangement gap of one pair over a p grid"},
      {"search", "look for pairs that break a conjectured gap sign"},
      {"repro", "regenerate a published curve (ce1, ce2, figure1, figure2, figure3)"},
  };

  for (const auto& [name, command] : commands) {
    auto* sub = app.add_subcommand(name, blurbs.at(name));
    sub->add_option("--family", config.family, "pair family");
    sub->add_option("--fixture", config.fixture, "built-in pair (ce1, ce2)");
    sub->add_option("--matrices", config.matrices, "matrix file; the first two matrices are used");
    sub->add_option("--arrangement", config.arrangement, "aligned or updown");
    sub->add_option("--p-grid", config.p_grid, "lo:hi:step");
    sub->add_option("--trials", config.trials, "random pairs per dimension");
    sub->add_option("--restarts", config.restarts, "optimizer restarts");
    sub->add_option("--seed", config.seed, "master seed");
    sub->add_option("--tol", config.tol, "relative tolerance");
    sub->add_option("--out", config.out, "output path");
    sub->add_option("--format", format, "csv or doc")->check(CLI::IsMember({"csv", "doc"}));
    sub->add_flag("--svg", config.svg, "also write <out>.svg");
    sub->add_option("--conjecture", config.conjecture, "1 (aligned) or 2 (updown)");
    sub->add_option("--dim", config.dim, "matrix size");
    sub->add_option("--threads", config.threads, "worker threads for search, 0 = all cores");
    if (name == "repro") sub->add_option("name", config.repro_name, "target")->required();
    sub->callback([&config, command] { config.command = command; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? cli::kOk : cli::kConfigError;
  }
  if (!format.empty()) config.format = format == "csv" ? cli::OutputFormat::Csv : cli::OutputFormat::Doc;

  const auto result = cli::run(config);
  if (!result.diagnostics.empty()) std::cerr << result.diagnostics << "\n";
  if (result.exit_code == cli::kConfigError) return result.exit_code;
  if (!cli::write_outputs(config, result)) {
    std::cerr << "could not write output\n";
    return cli::kConfigError;
  }
  return result.exit_code;
}
