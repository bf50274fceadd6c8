#include "schatten/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "schatten/generators.hpp"

namespace schatten {

namespace {

void require_pair(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_valid(a, "A");
  require_valid(b, "B");
  if (a.rows() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "A and B differ in dimension");
}

void require_p(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw Error(ErrorCode::InvalidP, "p must be a finite value >= 1");
}

bool self_adjoint(const ComplexMatrix& x) { return is_hermitian(x, 1e-9); }

}  // namespace

const char* to_string(Arrangement arr) { return arr == Arrangement::Aligned ? "aligned" : "updown"; }

Arrangement parse_arrangement(std::string_view s) {
  if (s == "aligned") return Arrangement::Aligned;
  if (s == "updown") return Arrangement::UpDown;
  throw Error(ErrorCode::InvalidConfig, "unknown arrangement '" + std::string(s) + "'");
}

PairSpectra PairSpectra::compute(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_pair(a, b);
  PairSpectra s;
  const ComplexMatrix sum = a + b;
  const ComplexMatrix diff = a - b;
  s.sigma_a_ = singular_values(a).values;
  s.sigma_b_ = singular_values(b).values;
  s.sigma_sum_ = singular_values(sum).values;
  s.sigma_diff_ = singular_values(diff).values;
  s.frob_sum_ = sum.squaredNorm();
  s.frob_diff_ = diff.squaredNorm();
  return s;
}

double PairSpectra::pair_norm_sum(double p) const {
  require_p(p);
  if (p == 2.0) return frob_sum_ + frob_diff_;
  return power_sum(sigma_sum_, p) + power_sum(sigma_diff_, p);
}

double PairSpectra::rearranged_sum(double p, Arrangement arr) const {
  require_p(p);
  if (arr == Arrangement::Aligned) return vector_pair_sum(sigma_a_, sigma_b_, p);
  std::vector<double> up(sigma_a_.rbegin(), sigma_a_.rend());
  return vector_pair_sum(up, sigma_b_, p);
}

double vector_pair_sum(std::span<const double> u, std::span<const double> v, double p) {
  if (u.size() != v.size()) throw Error(ErrorCode::LengthMismatch, "vectors differ in length");
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i)
    s += std::pow(std::abs(u[i] + v[i]), p) + std::pow(std::abs(u[i] - v[i]), p);
  return s;
}

double pair_norm_sum(const ComplexMatrix& a, const ComplexMatrix& b, double p) {
  require_pair(a, b);
  require_p(p);
  return schatten_power(a + b, p) + schatten_power(a - b, p);
}

double rearranged_sum(const ComplexMatrix& a, const ComplexMatrix& b, double p, Arrangement arr) {
  require_pair(a, b);
  require_p(p);
  const auto sa = singular_values(a, arr == Arrangement::Aligned ? Order::Descending : Order::Ascending);
  const auto sb = singular_values(b);
  return vector_pair_sum(sa.values, sb.values, p);
}

GapValue rearrangement_gap(const ComplexMatrix& a, const ComplexMatrix& b, double p, Arrangement arr) {
  require_p(p);
  return {p, PairSpectra::compute(a, b).gap(p, arr)};
}

bool is_equality(double gap, double pair_norm_sum) { return std::abs(gap) <= 1e-8 * (1.0 + pair_norm_sum); }

int conjecture_sign(int conjecture, double p) {
  if (conjecture != 1 && conjecture != 2)
    throw Error(ErrorCode::InvalidConfig, "conjecture must be 1 or 2");
  if (p == 2.0) return 0;
  const int below = conjecture == 1 ? -1 : 1;
  return p < 2.0 ? below : -below;
}

Arrangement conjecture_arrangement(int conjecture) {
  if (conjecture == 1) return Arrangement::Aligned;
  if (conjecture == 2) return Arrangement::UpDown;
  throw Error(ErrorCode::InvalidConfig, "conjecture must be 1 or 2");
}

double hanner_gap(const ComplexMatrix& a, const ComplexMatrix& b, double p) {
  const double lhs = pair_norm_sum(a, b, p);
  const double na = std::pow(schatten_power(a, p), 1.0 / p);
  const double nb = std::pow(schatten_power(b, p), 1.0 / p);
  return lhs - (std::pow(na + nb, p) + std::pow(std::abs(na - nb), p));
}

bool clarkson_check(const ComplexMatrix& a, const ComplexMatrix& b, double p, double tol) {
  const double s = pair_norm_sum(a, b, p);
  const double base = schatten_power(a, p) + schatten_power(b, p);
  const double two = 2.0 * base;
  const double power = std::pow(2.0, p - 1.0) * base;
  const double lo = p >= 2.0 ? two : power;
  const double hi = p >= 2.0 ? power : two;
  const double slack = tol * (1.0 + s);
  return s >= lo - slack && s <= hi + slack;
}

double unitary_bound_gap(const ComplexMatrix& u, const ComplexMatrix& v, double p) {
  require_pair(u, v);
  if (!is_unitary(u, 1e-9) || !is_unitary(v, 1e-9)) throw Error(ErrorCode::NotUnitary, "U and V must be unitary");
  return pair_norm_sum(u, v, p) - std::pow(2.0, p) * static_cast<double>(u.rows());
}

bool unitary_angle_identity_check(const ComplexMatrix& u, const ComplexMatrix& v, double p, double tol) {
  require_pair(u, v);
  require_p(p);
  if (!is_unitary(u, 1e-9) || !is_unitary(v, 1e-9)) throw Error(ErrorCode::NotUnitary, "U and V must be unitary");

  ComplexMatrix uu = u;
  ComplexMatrix vv = v;
  if (!self_adjoint(u) || !self_adjoint(v)) {
    uu = double_selfadjoint(u);
    vv = double_selfadjoint(v);
  }
  const auto lambda = hermitian_eigenvalues(hermitian_part(uu * vv + vv * uu));
  const double half = p / 2.0;
  double formula = 0.0;
  for (double l : lambda) {
    if (l > 2.0 + tol || l < -2.0 - tol) return false;
    const double c = std::clamp(l / 2.0, -1.0, 1.0);
    formula += std::pow(2.0, half) * (std::pow(std::abs(1.0 + c), half) + std::pow(std::abs(1.0 - c), half));
  }
  const double direct = pair_norm_sum(uu, vv, p);
  return std::abs(formula - direct) <= tol * (1.0 + std::abs(direct));
}

bool anticommutator_identity_check(const ComplexMatrix& a, const ComplexMatrix& b, double p, double tol) {
  require_pair(a, b);
  require_p(p);
  if (!self_adjoint(a) || !self_adjoint(b)) throw Error(ErrorCode::NotHermitian, "A and B must be self-adjoint");
  const double anti = (a * b + b * a).norm();
  if (anti > tol * a.norm() * b.norm()) throw Error(ErrorCode::HypothesisViolated, "AB + BA is not small");
  const double plus = schatten_power(a + b, p);
  const double minus = schatten_power(a - b, p);
  return std::abs(plus - minus) <= tol * (1.0 + std::max(plus, minus));
}

bool supermodular_rearrangement_check(std::span<const double> f, std::span<const double> g,
                                      const std::function<double(double, double)>& F, Modularity orientation,
                                      double tol) {
  if (f.size() != g.size()) throw Error(ErrorCode::LengthMismatch, "f and g differ in length");
  std::vector<double> fd(f.begin(), f.end());
  std::vector<double> gd(g.begin(), g.end());
  std::sort(fd.begin(), fd.end(), std::greater<>());
  std::sort(gd.begin(), gd.end(), std::greater<>());

  auto paired = [&](std::span<const double> x, std::span<const double> y) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += F(x[i], y[i]);
    return s;
  };
  const double aligned = paired(fd, gd);
  auto bounded = [&](double value) {
    const double slack = tol * (1.0 + std::abs(aligned));
    return orientation == Modularity::Super ? value <= aligned + slack : value >= aligned - slack;
  };

  if (!bounded(paired(f, g))) return false;
  if (f.size() > 8) return true;

  std::vector<std::size_t> perm(gd.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::vector<double> gp(gd.size());
  do {
    for (std::size_t i = 0; i < perm.size(); ++i) gp[i] = gd[perm[i]];
    if (!bounded(paired(fd, gp))) return false;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return true;
}

}  // namespace schatten
