#include "schatten/integral_rep.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace schatten {

namespace {

// t = exp(pi sinh s) stays inside [1e-300, 1e300] for |s| <= asinh(690 / pi).
const double kHalfWidth = std::asinh(690.0 / std::numbers::pi);

double magnitude(double x) { return std::abs(x); }
double magnitude(const ComplexMatrix& x) { return x.norm(); }

// Nested trapezoid sums in s over [-kHalfWidth, kHalfWidth]; `node(s)` returns
// the mapped integrand already multiplied by its Jacobian.
template <class T, class Node>
QuadratureResult<T> de_levels(const Node& node, const QuadratureConfig& cfg) {
  cfg.validate();
  QuadratureResult<T> out;
  auto eval = [&](double s) {
    ++out.evaluations;
    return node(s);
  };

  // level 0: integer nodes
  double h = 1.0;
  const auto k0 = static_cast<long>(std::floor(kHalfWidth));
  T sum = eval(0.0);
  for (long k = 1; k <= k0; ++k) {
    sum += eval(static_cast<double>(k));
    sum += eval(-static_cast<double>(k));
  }
  T estimate = sum * h;

  for (int level = 1; level <= cfg.max_levels; ++level) {
    h *= 0.5;
    const auto kmax = static_cast<long>(std::floor(kHalfWidth / h));
    for (long k = 1; k <= kmax; k += 2) {
      sum += eval(static_cast<double>(k) * h);
      sum += eval(-static_cast<double>(k) * h);
    }
    T next = sum * h;
    const double diff = magnitude(T(next - estimate));
    estimate = next;
    out.levels = level;
    out.error_estimate = diff;
    if (!std::isfinite(diff)) break;
    if (level >= 3 && diff <= std::max(cfg.abs_tol, cfg.rel_tol * magnitude(estimate))) {
      out.value = estimate;
      return out;
    }
  }
  throw Error(ErrorCode::QuadratureNoConvergence,
              "levels disagree by " + std::to_string(out.error_estimate) + " after " + std::to_string(out.levels));
}

template <class T>
QuadratureResult<T> integrate_impl(const std::function<T(double)>& f, const QuadratureConfig& cfg) {
  return de_levels<T>(
      [&](double s) -> T {
        const double t = std::exp(std::numbers::pi * std::sinh(s));
        return f(t) * (t * std::numbers::pi * std::cosh(s));
      },
      cfg);
}

// int_0^1 f(w) dw with w = (1 + tanh(pi/2 sinh s)) / 2, written so that w
// stays exact near 0.
template <class T>
T integrate_unit(const std::function<T(double)>& f, const QuadratureConfig& cfg) {
  return de_levels<T>(
             [&](double s) -> T {
               const double u = 0.5 * std::numbers::pi * std::sinh(s);
               const double e = std::exp(-2.0 * std::abs(u));
               const double w = u >= 0.0 ? 1.0 / (1.0 + e) : e / (1.0 + e);
               const double jac = 0.5 * std::numbers::pi * std::cosh(s) * 2.0 * e / ((1.0 + e) * (1.0 + e));
               return f(w) * jac;
             },
             cfg)
      .value;
}

// int_0^inf t^alpha g(t) dt for -1 < alpha < 0, with g bounded at 0 and
// t g(t) bounded at infinity. Splitting at t = 1 and substituting
// t = w^(1/(alpha+1)) below, t = w^(1/alpha) above turns the weight into a
// constant, so no range of t is cut off however close alpha is to -1 or 0.
template <class T>
T integrate_algebraic(const std::function<T(double)>& g, const std::function<T(double)>& tg, double alpha,
                      const QuadratureConfig& cfg) {
  const double lo_exp = 1.0 / (alpha + 1.0);
  const double hi_exp = 1.0 / alpha;
  const T lower = integrate_unit<T>([&](double w) { return g(std::pow(w, lo_exp)); }, cfg);
  const T upper = integrate_unit<T>([&](double w) { return tg(std::pow(w, hi_exp)); }, cfg);
  return lower * (1.0 / (alpha + 1.0)) + upper * (1.0 / -alpha);
}

void require_open_unit_p(double p) {
  if (!(p > 1.0 && p < 2.0)) throw Error(ErrorCode::InvalidP, "exponent must lie strictly inside (1, 2)");
}

void require_positive_t(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw Error(ErrorCode::DomainViolation, "t must be positive and finite");
}

bool psd_within(const ComplexMatrix& x) { return is_psd(x, default_tol(x)); }

std::vector<double> clamp_nonnegative(std::vector<double> v, double tol, const char* what) {
  for (auto& x : v) {
    if (x < -tol) throw Error(ErrorCode::HypothesisViolated, std::string(what) + " has a negative entry");
    x = std::max(x, 0.0);
  }
  return v;
}

struct RearrangedSpectra {
  std::vector<double> sum;
  std::vector<double> diff;
};

RearrangedSpectra rearranged(const ComplexMatrix& a, const ComplexMatrix& b, Arrangement arr) {
  const auto sa = singular_values(a, arr == Arrangement::Aligned ? Order::Descending : Order::Ascending).values;
  const auto sb = singular_values(b).values;
  RearrangedSpectra r;
  for (std::size_t i = 0; i < sa.size(); ++i) {
    r.sum.push_back(sa[i] + sb[i]);
    r.diff.push_back(sa[i] - sb[i]);
  }
  return r;
}

void require_contraction_pair(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (!psd_within(hermitian_part(a + b)) || !psd_within(hermitian_part(a - b)) || !is_hermitian(a) ||
      !is_hermitian(b))
    throw Error(ErrorCode::HypothesisViolated, "need self-adjoint A, B with A + B >= 0 and A - B >= 0");
  const auto sa = singular_values(a).values;
  if (sa.back() < spectral_norm(b) - default_tol(a))
    throw Error(ErrorCode::HypothesisViolated, "need sigma_n(A) >= sigma_1(B)");
}

double descending_power_sum_term(std::span<const double> xs, double t) {
  double s = 0.0;
  for (double x : xs) s += x * x * x / (x + t);
  return s;
}

}  // namespace

void QuadratureConfig::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) throw Error(ErrorCode::InvalidConfig, "quadrature tolerances must be > 0");
  if (max_levels < 3 || max_levels > 20) throw Error(ErrorCode::InvalidConfig, "max_levels must lie in [3, 20]");
}

QuadratureResult<double> integrate_half_line(const std::function<double(double)>& f, const QuadratureConfig& cfg) {
  return integrate_impl<double>(f, cfg);
}

QuadratureResult<ComplexMatrix> integrate_half_line(const std::function<ComplexMatrix(double)>& f,
                                                    const QuadratureConfig& cfg) {
  return integrate_impl<ComplexMatrix>(f, cfg);
}

double kp_constant(double p) {
  require_open_unit_p(p);
  return std::sin(std::numbers::pi * (p - 1.0)) / std::numbers::pi;
}

double power_via_integral_scalar(double c, double p, const QuadratureConfig& cfg) {
  const double k = kp_constant(p);
  if (c < 0.0) throw Error(ErrorCode::DomainViolation, "c must be nonnegative");
  if (c == 0.0) return 0.0;
  const double v = integrate_algebraic<double>([c](double t) { return c * c / (t + c); },
                                               [c](double t) { return c * c / (1.0 + c / t); }, p - 2.0, cfg);
  return k * v;
}

double extended_power_via_integral_scalar(double c, double q, const QuadratureConfig& cfg) {
  if (!(q > 2.0 && q < 3.0)) throw Error(ErrorCode::InvalidP, "exponent must lie strictly inside (2, 3)");
  const double k = kp_constant(q - 1.0);
  if (c < 0.0) throw Error(ErrorCode::DomainViolation, "c must be nonnegative");
  if (c == 0.0) return 0.0;
  const double v = integrate_algebraic<double>([c](double t) { return c * c * c / (t + c); },
                                               [c](double t) { return c * c * c / (1.0 + c / t); }, q - 3.0, cfg);
  return k * v;
}

ComplexMatrix power_via_integral(const ComplexMatrix& c, double p, const QuadratureConfig& cfg) {
  const double k = kp_constant(p);
  require_valid(c, "C");
  if (!psd_within(c)) throw Error(ErrorCode::NotPSD, "C must be positive semidefinite");

  const auto sys = hermitian_eigensystem(c);
  const double tol = default_tol(c);
  const auto v = integrate_algebraic<ComplexMatrix>(
      [&](double t) -> ComplexMatrix {
        SpectralMap f{[t](double x) { return x == 0.0 ? 0.0 : x * x / (x + t); }, 0.0, false, "x^2/(x+t)"};
        return apply_spectral(sys, f, tol);
      },
      [&](double t) -> ComplexMatrix {
        SpectralMap f{[t](double x) { return x * x / (1.0 + x / t); }, 0.0, false, "t x^2/(x+t)"};
        return apply_spectral(sys, f, tol);
      },
      p - 2.0, cfg);
  return hermitian_part(k * v);
}

double resolvent_trace_difference(std::span<const double> alpha, std::span<const double> beta,
                                  std::span<const double> a, std::span<const double> b, double t) {
  double scale = 0.0;
  for (auto v : {alpha, beta, a, b})
    for (double x : v) scale = std::max(scale, std::abs(x));

  if (t > scale) {
    const double bracket = descending_power_sum_term(alpha, t) + descending_power_sum_term(beta, t) -
                           descending_power_sum_term(a, t) - descending_power_sum_term(b, t);
    return -bracket / (t * t * t);
  }
  auto paired = [t](std::span<const double> x, std::span<const double> y) {
    std::vector<double> xs(x.begin(), x.end()), ys(y.begin(), y.end());
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());
    double s = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (ys[i] - xs[i]) / ((xs[i] + t) * (ys[i] + t));
    return s;
  };
  return paired(alpha, a) + paired(beta, b);
}

ResolventIntegrand ordered_resolvent_integrand(const ComplexMatrix& a, const ComplexMatrix& b, double t) {
  require_valid(a, "A");
  require_valid(b, "B");
  if (a.rows() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "A and B differ in dimension");
  require_positive_t(t);
  if (!is_hermitian(a) || !is_hermitian(b) || !psd_within(b) || !psd_within(hermitian_part(a - b)))
    throw Error(ErrorCode::HypothesisViolated, "need A >= B >= 0");

  const ComplexMatrix sum = hermitian_part(a + b);
  const ComplexMatrix diff = hermitian_part(a - b);
  const auto alpha = hermitian_eigenvalues(sum);
  const auto beta = hermitian_eigenvalues(diff);
  if (alpha.back() <= -t || beta.back() <= -t) throw Error(ErrorCode::SingularResolvent, "shifted matrix is singular");

  const auto r = rearranged(a, b, Arrangement::Aligned);
  std::vector<double> diag_part(r.sum.size());
  for (std::size_t i = 0; i < diag_part.size(); ++i) {
    if (r.sum[i] + t <= 0.0 || r.diff[i] + t <= 0.0)
      throw Error(ErrorCode::SingularResolvent, "shifted spectrum is singular");
    diag_part[i] = 1.0 / (r.sum[i] + t) + 1.0 / (r.diff[i] + t);
  }

  ResolventIntegrand out;
  out.matrix = hermitian_function(sum, SpectralMap::shifted_inverse(t)) +
               hermitian_function(diff, SpectralMap::shifted_inverse(t)) - diagonal(diag_part);
  out.psd = is_psd(out.matrix, 1e-8);
  out.trace = resolvent_trace_difference(alpha, beta, r.sum, r.diff, t);
  return out;
}

double updown_resolvent_trace(const ComplexMatrix& a, const ComplexMatrix& b, double t) {
  require_valid(a, "A");
  require_valid(b, "B");
  if (a.rows() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "A and B differ in dimension");
  require_positive_t(t);
  require_contraction_pair(a, b);
  const auto alpha = hermitian_eigenvalues(hermitian_part(a + b));
  const auto beta = hermitian_eigenvalues(hermitian_part(a - b));
  const auto r = rearranged(a, b, Arrangement::UpDown);
  return resolvent_trace_difference(alpha, beta, r.sum, r.diff, t);
}

double integral_gap(const ComplexMatrix& a, const ComplexMatrix& b, double p, Arrangement arr,
                    const QuadratureConfig& cfg) {
  require_valid(a, "A");
  require_valid(b, "B");
  if (a.rows() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "A and B differ in dimension");
  const bool low = p > 1.0 && p < 2.0;
  const bool high = p > 2.0 && p < 3.0;
  if (!low && !high) throw Error(ErrorCode::InvalidP, "integral gap needs p in (1,2) or (2,3)");
  if (!is_hermitian(a) || !is_hermitian(b) || !psd_within(a))
    throw Error(ErrorCode::HypothesisViolated, "need self-adjoint A >= 0");

  const double tol = default_tol(a) + default_tol(b);
  const auto alpha = clamp_nonnegative(hermitian_eigenvalues(hermitian_part(a + b)), tol, "A + B");
  const auto beta = clamp_nonnegative(hermitian_eigenvalues(hermitian_part(a - b)), tol, "A - B");
  auto r = rearranged(a, b, arr);
  r.sum = clamp_nonnegative(std::move(r.sum), tol, "rearranged sum");
  r.diff = clamp_nonnegative(std::move(r.diff), tol, "rearranged difference");

  const double k = kp_constant(low ? p : p - 1.0);
  const auto q = integrate_half_line(
      [&](double t) {
        const double tr = resolvent_trace_difference(alpha, beta, r.sum, r.diff, t);
        return tr == 0.0 ? 0.0 : tr * std::pow(t, p);
      },
      cfg);
  return low ? -k * q.value : k * q.value;
}

NeumannTerm neumann_trace_term(const ComplexMatrix& a, const ComplexMatrix& b, double t, int m) {
  require_valid(a, "A");
  require_valid(b, "B");
  if (a.rows() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "A and B differ in dimension");
  require_positive_t(t);
  if (m < 0) throw Error(ErrorCode::InvalidConfig, "series index must be >= 0");
  require_contraction_pair(a, b);

  const auto n = a.rows();
  const ComplexMatrix h = hermitian_part(a) + t * identity(n);
  const ComplexMatrix h_isqrt = hermitian_function(h, SpectralMap::inverse_sqrt());
  const ComplexMatrix k = hermitian_part(h_isqrt * b * h_isqrt);
  const auto k_eigs = hermitian_eigenvalues(k);
  if (std::max(std::abs(k_eigs.front()), std::abs(k_eigs.back())) >= 1.0)
    throw Error(ErrorCode::SeriesDivergent, "||H^(-1/2) B H^(-1/2)|| >= 1");

  const ComplexMatrix k2 = k * k;
  ComplexMatrix power = identity(n);
  for (int i = 0; i < m; ++i) power = power * k2;

  NeumannTerm out;
  out.value = (h_isqrt * power * h_isqrt).trace().real();

  auto h_up = hermitian_eigenvalues(h);
  std::reverse(h_up.begin(), h_up.end());
  const auto sb = singular_values(b).values;
  for (std::size_t i = 0; i < sb.size(); ++i)
    out.bound += std::pow(h_up[i], -2.0 * m - 1.0) * std::pow(sb[i], 2.0 * m);
  return out;
}

NeumannSeries neumann_partial_sums(const ComplexMatrix& a, const ComplexMatrix& b, double t, int max_terms) {
  NeumannSeries out;
  const auto n = a.rows();
  double running = 0.0;
  for (int m = 0; m <= max_terms; ++m) {
    const double term = 2.0 * neumann_trace_term(a, b, t, m).value;
    running += term;
    out.partial_sums.push_back(running);
    if (term <= 1e-14 * running) break;
  }
  const auto shift = SpectralMap::shifted_inverse(t);
  out.target = hermitian_function(hermitian_part(a + b), shift).trace().real() +
               hermitian_function(hermitian_part(a - b), shift).trace().real();
  (void)n;
  return out;
}

}  // namespace schatten
