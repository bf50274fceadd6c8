#include "schatten/majorization.hpp"

#include <algorithm>
#include <cmath>

namespace schatten {

namespace {

constexpr double kLogFloor = 1e-300;

std::vector<double> sorted_desc(std::span<const double> v) {
  std::vector<double> out(v.begin(), v.end());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

void require_same_length(std::size_t a, std::size_t b) {
  if (a != b) throw Error(ErrorCode::LengthMismatch, "vectors differ in length");
}

void require_nonnegative(std::span<const double> v) {
  for (double x : v)
    if (x < 0.0 || std::isnan(x)) throw Error(ErrorCode::NegativeEntry, "entry must be nonnegative");
}

void require_descending(std::span<const double> v) {
  if (!std::is_sorted(v.begin(), v.end(), std::greater<>()))
    throw Error(ErrorCode::NotDescending, "vector must be labeled in descending order");
}

bool is_log_kind(MajorizationKind k) { return k == MajorizationKind::WeakLog || k == MajorizationKind::Log; }

bool requires_total_equality(MajorizationKind k) {
  return k == MajorizationKind::Strong || k == MajorizationKind::Log;
}

std::vector<double> entrywise(std::span<const double> u, std::span<const double> v) {
  std::vector<double> out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = u[i] * v[i];
  return out;
}

std::vector<double> descending_eigenvalue_sum(const std::vector<double>& la, const std::vector<double>& lb) {
  std::vector<double> out(la.size());
  for (std::size_t i = 0; i < la.size(); ++i) out[i] = la[i] + lb[i];
  return out;
}

}  // namespace

MajorizationVerdict majorization_relation(std::span<const double> a, std::span<const double> b,
                                          MajorizationKind kind, double tol) {
  require_same_length(a.size(), b.size());
  if (is_log_kind(kind)) {
    require_nonnegative(a);
    require_nonnegative(b);
  }
  const auto sa = sorted_desc(a);
  const auto sb = sorted_desc(b);
  const std::size_t n = sa.size();

  MajorizationVerdict v;
  if (is_log_kind(kind)) {
    v.tolerance = tol;
  } else {
    double l1 = 0.0;
    for (double x : sb) l1 += std::abs(x);
    v.tolerance = tol * std::max(1.0, l1);
  }
  if (n == 0) {
    v.holds = true;
    return v;
  }

  double acc_a = 0.0;
  double acc_b = 0.0;
  v.margin = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n; ++k) {
    if (is_log_kind(kind)) {
      acc_a += std::log(std::max(sa[k], kLogFloor));
      acc_b += std::log(std::max(sb[k], kLogFloor));
    } else {
      acc_a += sa[k];
      acc_b += sb[k];
    }
    double slack = acc_b - acc_a;
    if (k + 1 == n && requires_total_equality(kind)) slack = -std::abs(slack);
    if (slack < v.margin) {
      v.margin = slack;
      v.worst_index = k + 1;
    }
  }
  v.holds = v.margin >= -v.tolerance;
  return v;
}

SumComparison hlp_sum_compare(std::span<const double> a, std::span<const double> b,
                              const std::function<double(double)>& f) {
  require_same_length(a.size(), b.size());
  SumComparison out;
  for (double x : a) out.lhs += f(x);
  for (double x : b) out.rhs += f(x);
  return out;
}

bool power_lemma_check(std::span<const double> a, std::span<const double> b, double s, double tol) {
  require_same_length(a.size(), b.size());
  require_nonnegative(a);
  require_nonnegative(b);
  if (!(s >= 1.0)) throw Error(ErrorCode::InvalidP, "power must be >= 1");
  if (!majorization_relation(a, b, MajorizationKind::Weak, tol).holds)
    throw Error(ErrorCode::HypothesisViolated, "a is not weakly majorized by b");
  std::vector<double> as(a.begin(), a.end());
  std::vector<double> bs(b.begin(), b.end());
  for (auto& x : as) x = std::pow(x, s);
  for (auto& x : bs) x = std::pow(x, s);
  return majorization_relation(as, bs, MajorizationKind::Weak, tol).holds;
}

bool product_majorization_check(std::span<const double> x, std::span<const double> y,
                                std::span<const double> a, std::span<const double> b, double tol) {
  require_same_length(x.size(), y.size());
  require_same_length(a.size(), b.size());
  require_same_length(x.size(), a.size());
  for (auto v : {x, y, a, b}) {
    require_nonnegative(v);
    require_descending(v);
  }
  if (!majorization_relation(x, y, MajorizationKind::Weak, tol).holds ||
      !majorization_relation(a, b, MajorizationKind::Weak, tol).holds)
    throw Error(ErrorCode::HypothesisViolated, "factors are not weakly majorized");
  return majorization_relation(entrywise(x, a), entrywise(y, b), MajorizationKind::Weak, tol).holds;
}

bool log_equality_permutation_check(std::span<const double> a, std::span<const double> b, double tol) {
  require_same_length(a.size(), b.size());
  require_nonnegative(a);
  require_nonnegative(b);
  if (!majorization_relation(a, b, MajorizationKind::Log, tol).holds ||
      !majorization_relation(a, b, MajorizationKind::Strong, tol).holds)
    throw Error(ErrorCode::HypothesisViolated, "need both log majorization and majorization");
  const auto sa = sorted_desc(a);
  const auto sb = sorted_desc(b);
  const double scale = std::max(1.0, sb.empty() ? 0.0 : sb.front());
  for (std::size_t i = 0; i < sa.size(); ++i)
    if (std::abs(sa[i] - sb[i]) > tol * scale) return false;
  return true;
}

MajorizationVerdict fan_check(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
  require_valid(a, "A");
  require_valid(b, "B");
  if (a.rows() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "A and B differ in dimension");
  if (!is_hermitian(a) || !is_hermitian(b)) throw Error(ErrorCode::NotHermitian, "Fan's theorem needs Hermitian A, B");
  const auto sum = hermitian_eigenvalues(hermitian_part(a + b));
  const auto rhs = descending_eigenvalue_sum(hermitian_eigenvalues(a), hermitian_eigenvalues(b));
  return majorization_relation(sum, rhs, MajorizationKind::Strong, tol);
}

MajorizationVerdict gelfand_naimark_check(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
  require_valid(a, "A");
  require_valid(b, "B");
  if (a.rows() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "A and B differ in dimension");
  const auto sab = singular_values(a * b).values;
  const auto sa = singular_values(a).values;
  const auto sb = singular_values(b).values;
  const auto rhs = entrywise(sa, sb);

  const double floor = 1e-13 * static_cast<double>(sab.size()) * sa.front() * sb.front();
  std::size_t nonzero = 0;
  while (nonzero < sab.size() && sab[nonzero] > floor) ++nonzero;
  if (nonzero == sab.size()) return majorization_relation(sab, rhs, MajorizationKind::Log, tol);
  return majorization_relation(std::span(sab).first(nonzero), std::span(rhs).first(nonzero),
                               MajorizationKind::WeakLog, tol);
}

}  // namespace schatten
