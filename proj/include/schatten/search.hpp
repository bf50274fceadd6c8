#pragma once

// Gap curves over a p grid, sign-pattern classification, and a
// Nelder-Mead search for pairs that violate a conjectured gap sign.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "schatten/generators.hpp"
#include "schatten/inequalities.hpp"

namespace schatten {

/// lo, lo + step, ... up to hi (inclusive within 1e-9 step). Points are
/// rounded to 1e-10 so grid values print cleanly. Throws InvalidConfig.
std::vector<double> make_p_grid(double lo, double hi, double step);

/// Parses "lo:hi:step".
std::vector<double> parse_p_grid(std::string_view spec);

struct GapCurve {
  std::vector<double> p_grid;
  std::vector<double> gaps;
  Arrangement arrangement = Arrangement::Aligned;
  std::string pair_id;
};

GapCurve gap_curve(const ComplexMatrix& a, const ComplexMatrix& b, std::span<const double> p_grid, Arrangement arr,
                   std::string pair_id = {});

struct SignSegment {
  double p_lo = 0.0;
  double p_hi = 0.0;
  int sign = 0;  ///< +1, -1, or 0 where |gap| <= tol
};

struct SignPattern {
  std::vector<SignSegment> segments;
  std::vector<double> crossings;  ///< interior points where the sign flips

  /// e.g. "0+0-0+"
  std::string signature() const;
};

/// Maximal constant-sign runs. Crossings are refined by bisection on
/// `gap_fn` to 1e-6 in p when it is supplied, otherwise interpolated.
SignPattern classify_signs(const GapCurve& curve, double tol,
                           const std::function<double(double)>& gap_fn = {});

struct SearchOptions {
  double tol = 1e-8;
  int max_iterations = 400;
  double restart_diameter = 1e-10;
  unsigned threads = 0;  ///< 0: hardware concurrency
};

struct SearchReport {
  int conjecture = 1;
  PairFamily family;
  std::vector<double> p_probe;
  MatrixPair best_pair;
  double violation_margin = 0.0;
  double p_at_violation = 0.0;
  double best_objective = 0.0;  ///< min over probes of conjecture_sign * gap
  int best_restart = -1;
  int restarts_used = 0;
  std::uint64_t seed = 0;
  bool invariants_ok = false;
};

/// Number of reals the local simplex search varies for a family.
int parameter_count(const PairFamily& family);

/// Maps a parameter vector to a pair in the family, scaled so that
/// ||A||_inf = 6 (unitary pairs are left unscaled).
MatrixPair pair_from_parameters(const PairFamily& family, std::span<const double> x);

/// min over probes of conjecture_sign(conjecture, p) * gap; +inf on failure.
double search_objective(int conjecture, const MatrixPair& pair, std::span<const double> p_probe,
                        double* p_argmin = nullptr);

/// Throws InvalidProbe when a probe lies outside [1, 2) U (2, inf), or when
/// the list is empty; InvalidConfig for restarts < 1.
SearchReport violation_search(int conjecture, const PairFamily& family, std::span<const double> p_probe, int restarts,
                              RandomStream stream, const SearchOptions& options = {});

nlohmann::json search_report_to_json(const SearchReport& report);

/// Unconstrained minimisation with reflection 1, expansion 2, contraction
/// 0.5, shrink 0.5. The simplex is rebuilt around the best vertex whenever
/// its diameter falls below `restart_diameter`.
struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
};

NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f, std::vector<double> x0,
                             double initial_step, int max_iterations, double restart_diameter);

}  // namespace schatten
