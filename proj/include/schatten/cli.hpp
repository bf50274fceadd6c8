#pragma once

// Command implementations behind the command-line tool. Each run_* function
// validates its configuration up front, computes everything in memory, and
// hands back the documents to write; nothing touches the filesystem until
// the caller decides the run is well formed.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace schatten::cli {

inline constexpr std::string_view kVersion = "1.0.0";

enum ExitCode : int {
  kOk = 0,
  kSuiteFailed = 1,
  kConfigError = 2,
  kNoViolation = 3,
};

enum class Command { Verify, Sweep, Search, Repro };
enum class OutputFormat { Csv, Doc };

struct RunConfig {
  Command command = Command::Verify;
  std::optional<std::string> family;
  std::optional<std::string> fixture;
  std::optional<std::string> matrices;  ///< path to a matrix file
  std::optional<std::string> arrangement;
  std::optional<std::string> p_grid;  ///< "lo:hi:step"
  int trials = 1000;
  int restarts = 100;
  std::uint64_t seed = 0;
  double tol = 1e-8;
  std::optional<std::string> out;
  std::optional<OutputFormat> format;
  bool svg = false;
  std::optional<int> conjecture;
  std::optional<int> dim;
  std::string repro_name;  ///< ce1, ce2, figure1, figure2, figure3
  unsigned threads = 0;
};

struct RunResult {
  int exit_code = kOk;
  std::string document;     ///< CSV or JSON text
  std::string svg;          ///< empty unless requested
  std::string diagnostics;  ///< human-readable note for stderr
};

RunResult run_verify(const RunConfig& config);
RunResult run_sweep(const RunConfig& config);
RunResult run_search(const RunConfig& config);
RunResult run_repro(const RunConfig& config);

/// Dispatches on config.command; library errors become kConfigError.
RunResult run(const RunConfig& config);

/// "p,gap" rows with 12 significant digits.
std::string format_csv(const std::vector<double>& p, const std::vector<double>& gap);

/// Single polyline plot of a gap curve.
std::string render_svg(const std::vector<double>& p, const std::vector<double>& gap, std::string_view title);

/// Writes the result's documents: the main one to config.out (or stdout)
/// and the SVG next to it as <out>.svg. Returns false on I/O failure.
bool write_outputs(const RunConfig& config, const RunResult& result);

}  // namespace schatten::cli
