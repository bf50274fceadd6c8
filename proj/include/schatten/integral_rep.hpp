#pragma once

// Resolvent integral representation of C^p and the two integrands that
// drive the ordered and contraction cases of the rearrangement inequalities.
//
// For 1 < p < 2 and C >= 0,
//   C^p = k_p * int_0^inf (C/t^2 - 1/t + 1/(t+C)) t^p dt
//       = k_p * int_0^inf C^2 t^(p-2) (t+C)^(-1) dt,   k_p = sin(pi (p-1)) / pi.
// Multiplying through by C gives the 2 < q < 3 form with k_(q-1) and the
// integrand C^3 t^(q-3) (t+C)^(-1).

#include <cstddef>
#include <functional>
#include <vector>

#include "schatten/inequalities.hpp"
#include "schatten/linalg.hpp"

namespace schatten {

/// Half-line quadrature: tanh-sinh nodes on u in (0, 1) pushed through
/// t = u / (1 - u), which composes to t = exp(pi sinh s). Each level halves
/// the step and reuses the previous nodes.
struct QuadratureConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_levels = 12;

  void validate() const;
};

template <class T>
struct QuadratureResult {
  T value;
  double error_estimate = 0.0;
  int levels = 0;
  std::size_t evaluations = 0;
};

/// int_0^inf f(t) dt. Throws QuadratureNoConvergence when successive levels
/// still disagree at max_levels.
QuadratureResult<double> integrate_half_line(const std::function<double(double)>& f, const QuadratureConfig& cfg);
QuadratureResult<ComplexMatrix> integrate_half_line(const std::function<ComplexMatrix(double)>& f,
                                                    const QuadratureConfig& cfg);

/// sin(pi (p-1)) / pi for 1 < p < 2.
double kp_constant(double p);

/// k_p * int c^2 t^(p-2) / (t+c) dt, which equals c^p. The power-weighted
/// representations split at t = 1 and absorb t^(p-2) into a substitution on
/// each half, then use tanh-sinh on (0, 1); this keeps p near 1 or 2 accurate,
/// where the plain half-line rule would lose the slowly decaying tails.
double power_via_integral_scalar(double c, double p, const QuadratureConfig& cfg = {});

/// k_(q-1) * int (c^2/t^3 - c/t^2 + 1/t - 1/(t+c)) t^q dt for 2 < q < 3,
/// which equals c^q. Evaluated in the simplified form c^3 t^(q-3) / (t+c).
double extended_power_via_integral_scalar(double c, double q, const QuadratureConfig& cfg = {});

/// Matrix-valued quadrature of the resolvent representation.
ComplexMatrix power_via_integral(const ComplexMatrix& c, double p, const QuadratureConfig& cfg = {});

/// Combination 1/(A+B+t) + 1/(A-B+t) - [1/(s_A + s_B + t)] - [1/(s_A - s_B + t)]
/// with the spectra placed on the diagonal.
struct ResolventIntegrand {
  ComplexMatrix matrix;
  bool psd = false;    ///< is_psd(matrix, 1e-8)
  double trace = 0.0;  ///< evaluated stably from the spectra
};

/// Requires A >= B >= 0 (HypothesisViolated) and t > 0.
ResolventIntegrand ordered_resolvent_integrand(const ComplexMatrix& a, const ComplexMatrix& b, double t);

/// Trace of the up-down resolvent combination. Requires A +- B >= 0 and
/// sigma_n(A) >= sigma_1(B).
double updown_resolvent_trace(const ComplexMatrix& a, const ComplexMatrix& b, double t);

/// Trace of 1/(x+t) summed over alpha, beta minus the same over a, b.
/// Pairwise differences for t below the spectral scale; above it the exact
/// expansion -(1/t^3) sum +-x^3/(x+t), which assumes the groups share their
/// first two power sums.
double resolvent_trace_difference(std::span<const double> alpha, std::span<const double> beta,
                                  std::span<const double> a, std::span<const double> b, double t);

/// rearrangement_gap recovered from the trace integral: requires A >= 0,
/// A +- B >= 0 and nonnegative rearranged spectra; p in (1,2) or (2,3).
double integral_gap(const ComplexMatrix& a, const ComplexMatrix& b, double p, Arrangement arr,
                    const QuadratureConfig& cfg = {});

struct NeumannTerm {
  double value = 0.0;  ///< Tr[H^(-1/2) K^(2m) H^(-1/2)]
  double bound = 0.0;  ///< sum_i sigma_(n+1-i)(H)^(-2m-1) sigma_i(B)^(2m)
};

/// H = A + t, K = H^(-1/2) B H^(-1/2). Throws SeriesDivergent if ||K|| >= 1.
NeumannTerm neumann_trace_term(const ComplexMatrix& a, const ComplexMatrix& b, double t, int m);

struct NeumannSeries {
  std::vector<double> partial_sums;  ///< 2 * sum_{m <= M} Tr[H^(-1/2) K^(2m) H^(-1/2)]
  double target = 0.0;               ///< Tr[(A+B+t)^(-1) + (A-B+t)^(-1)]
};

/// Stops once a term falls below 1e-14 of the running sum, or at max_terms.
NeumannSeries neumann_partial_sums(const ComplexMatrix& a, const ComplexMatrix& b, double t, int max_terms = 200);

}  // namespace schatten
