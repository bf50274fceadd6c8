#include "schatten/generators.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace schatten {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

ComplexMatrix kron(const ComplexMatrix& x, const ComplexMatrix& y) {
  ComplexMatrix out(x.rows() * y.rows(), x.cols() * y.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < x.cols(); ++j)
      out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
  return out;
}

ComplexMatrix rotated_diagonal(const ComplexMatrix& q, std::span<const double> d) {
  return hermitian_part(q * diagonal(d) * q.adjoint());
}

std::vector<double> uniform_vector(Sampler& s, int n, double lo, double hi) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (auto& x : v) x = s.uniform(lo, hi);
  return v;
}

bool psd_scaled(const ComplexMatrix& x, double tol) { return is_psd(x, tol * std::max(1.0, inf_norm(x))); }

}  // namespace

std::string_view to_string(FamilyTag tag) {
  switch (tag) {
    case FamilyTag::GeneralHermitian: return "general-hermitian";
    case FamilyTag::GeneralComplex: return "general-complex";
    case FamilyTag::Commuting: return "commuting";
    case FamilyTag::Anticommuting: return "anticommuting";
    case FamilyTag::Unitary: return "unitary";
    case FamilyTag::OrderedPsd: return "ordered-psd";
    case FamilyTag::Contraction: return "contraction";
    case FamilyTag::HannerPositive: return "hanner-positive";
  }
  return "unknown";
}

FamilyTag parse_family(std::string_view s) {
  for (auto tag : {FamilyTag::GeneralHermitian, FamilyTag::GeneralComplex, FamilyTag::Commuting,
                   FamilyTag::Anticommuting, FamilyTag::Unitary, FamilyTag::OrderedPsd, FamilyTag::Contraction,
                   FamilyTag::HannerPositive})
    if (to_string(tag) == s) return tag;
  throw Error(ErrorCode::InvalidConfig, "unknown family '" + std::string(s) + "'");
}

RandomStream RandomStream::child(std::uint64_t sub) const {
  return {splitmix64(seed ^ splitmix64(index + 0x632BE59BD9B4E019ULL)), sub};
}

Sampler::Sampler(RandomStream stream)
    : engine_(splitmix64(splitmix64(stream.seed) ^ splitmix64(~stream.index))) {}

double Sampler::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Sampler::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Sampler::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

Complex Sampler::complex_normal() {
  const double re = normal();
  const double im = normal();
  return Complex(re, im) * (1.0 / std::numbers::sqrt2);
}

ComplexMatrix Sampler::ginibre(int n) {
  ComplexMatrix g(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) g(i, j) = complex_normal();
  return g;
}

ComplexMatrix Sampler::gue(int n) { return hermitian_part(ginibre(n)); }

ComplexMatrix Sampler::haar_unitary(int n) {
  const ComplexMatrix g = ginibre(n);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < n; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

MatrixPair random_pair(const PairFamily& family, RandomStream stream) {
  const int n = family.dim;
  if (n < 1) throw Error(ErrorCode::InvalidDim, "dimension must be >= 1");
  Sampler s(stream);

  switch (family.tag) {
    case FamilyTag::GeneralHermitian: {
      auto a = s.gue(n);
      return {std::move(a), s.gue(n)};
    }
    case FamilyTag::GeneralComplex: {
      auto a = s.ginibre(n);
      return {std::move(a), s.ginibre(n)};
    }
    case FamilyTag::Commuting: {
      const auto q = s.haar_unitary(n);
      const auto u = uniform_vector(s, n, -5.0, 5.0);
      const auto v = uniform_vector(s, n, -5.0, 5.0);
      return {rotated_diagonal(q, u), rotated_diagonal(q, v)};
    }
    case FamilyTag::Anticommuting: {
      if (n % 2 != 0) throw Error(ErrorCode::InvalidDim, "anticommuting family needs even dimension");
      const int m = n / 2;
      const auto q = s.haar_unitary(m);
      const auto x = uniform_vector(s, m, -5.0, 5.0);
      const auto y = uniform_vector(s, m, -5.0, 5.0);
      ComplexMatrix pauli_z(2, 2), pauli_x(2, 2);
      pauli_z << 1.0, 0.0, 0.0, -1.0;
      pauli_x << 0.0, 1.0, 1.0, 0.0;
      return {kron(rotated_diagonal(q, x), pauli_z), kron(rotated_diagonal(q, y), pauli_x)};
    }
    case FamilyTag::Unitary: {
      auto u = s.haar_unitary(n);
      return {std::move(u), s.haar_unitary(n)};
    }
    case FamilyTag::OrderedPsd: {
      const auto g = s.ginibre(n);
      const auto h = s.ginibre(n);
      ComplexMatrix b = hermitian_part(g.adjoint() * g);
      ComplexMatrix a = hermitian_part(b + h.adjoint() * h);
      return {std::move(a), std::move(b)};
    }
    case FamilyTag::Contraction: {
      ComplexMatrix b = s.gue(n);
      const auto h = s.ginibre(n);
      const double eps = 1.0 - s.uniform();
      ComplexMatrix a = hermitian_part(h.adjoint() * h) + (spectral_norm(b) + eps) * identity(n);
      return {std::move(a), std::move(b)};
    }
    case FamilyTag::HannerPositive: {
      const auto g = s.ginibre(n);
      const auto h = s.ginibre(n);
      const ComplexMatrix x = g.adjoint() * g;
      const ComplexMatrix y = h.adjoint() * h;
      return {hermitian_part(0.5 * (x + y)), hermitian_part(0.5 * (x - y))};
    }
  }
  throw Error(ErrorCode::InvalidConfig, "unhandled family");
}

bool satisfies_family(const PairFamily& family, const MatrixPair& pair, double tol) {
  const auto& a = pair.a;
  const auto& b = pair.b;
  if (a.rows() != family.dim || b.rows() != family.dim || a.cols() != a.rows() || b.cols() != b.rows()) return false;
  const bool hermitian = is_hermitian(a) && is_hermitian(b);
  const double scale = a.norm() * b.norm();

  switch (family.tag) {
    case FamilyTag::GeneralHermitian:
      return hermitian;
    case FamilyTag::GeneralComplex:
      return true;
    case FamilyTag::Commuting:
      return hermitian && (a * b - b * a).norm() <= tol * std::max(1.0, scale);
    case FamilyTag::Anticommuting:
      return hermitian && family.dim % 2 == 0 && (a * b + b * a).norm() <= tol * std::max(1.0, scale);
    case FamilyTag::Unitary:
      return is_unitary(a, 1e-9) && is_unitary(b, 1e-9);
    case FamilyTag::OrderedPsd:
      return hermitian && psd_scaled(b, tol) && psd_scaled(a - b, tol);
    case FamilyTag::Contraction: {
      if (!hermitian || !psd_scaled(a + b, tol) || !psd_scaled(a - b, tol)) return false;
      const auto sa = singular_values(a).values;
      return sa.back() >= spectral_norm(b) - tol * std::max(1.0, sa.front());
    }
    case FamilyTag::HannerPositive:
      return hermitian && psd_scaled(a + b, tol) && psd_scaled(a - b, tol);
  }
  return false;
}

ComplexMatrix double_selfadjoint(const ComplexMatrix& x) {
  require_valid(x);
  const auto n = x.rows();
  ComplexMatrix out = ComplexMatrix::Zero(2 * n, 2 * n);
  out.topRightCorner(n, n) = x;
  out.bottomLeftCorner(n, n) = x.adjoint();
  return out;
}

MatrixPair fixture_pair(std::string_view name) {
  ComplexMatrix a(2, 2), b(2, 2);
  if (name == "ce1") {
    a << 6.0, 0.0, 0.0, 5.0;
    b << 0.0, 1.0, 1.0, 0.0;
  } else if (name == "ce2") {
    a << 6.0, 0.0, 0.0, -1.0;
    b << -1.97035, 1.72243, 1.72243, 1.79035;
  } else {
    throw Error(ErrorCode::UnknownFixture, "unknown fixture '" + std::string(name) + "'");
  }
  return {std::move(a), std::move(b)};
}

}  // namespace schatten
