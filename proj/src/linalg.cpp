#include "schatten/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace schatten {

namespace {

constexpr int kMaxSweeps = 64;
constexpr double kOffDiagonalTol = 1e-14;

bool exactly_hermitian(const ComplexMatrix& x) {
  const auto n = x.rows();
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = j; i < n; ++i)
      if (x(i, j) != std::conj(x(j, i))) return false;
  return true;
}

double off_diagonal_norm(const ComplexMatrix& w) {
  double s = 0.0;
  const auto n = w.rows();
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i)
      if (i != j) s += std::norm(w(i, j));
  return std::sqrt(s);
}

// Annihilates w(p,q) with J = diag(1, e^{-i phi}) * [[c, s], [-s, c]] acting
// on the (p,q) plane: W <- J* W J, V <- V J.
void rotate(ComplexMatrix& w, ComplexMatrix& v, Eigen::Index p, Eigen::Index q) {
  const Complex z = w(p, q);
  const double r = std::abs(z);
  if (r == 0.0) return;
  const Complex phase = z / r;
  const double a = w(p, p).real();
  const double b = w(q, q).real();

  const double theta = (b - a) / (2.0 * r);
  double t;
  if (std::abs(theta) > 1e150) {
    t = 0.5 / theta;
  } else {
    t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  }
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const Complex e_minus = std::conj(phase);

  const auto n = w.rows();
  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex wkp = w(k, p);
    const Complex wkq = w(k, q);
    w(k, p) = c * wkp - s * e_minus * wkq;
    w(k, q) = s * wkp + c * e_minus * wkq;
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex wpk = w(p, k);
    const Complex wqk = w(q, k);
    w(p, k) = c * wpk - s * phase * wqk;
    w(q, k) = s * wpk + c * phase * wqk;
  }
  w(p, q) = 0.0;
  w(q, p) = 0.0;
  w(p, p) = a - t * r;
  w(q, q) = b + t * r;

  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = c * vkp - s * e_minus * vkq;
    v(k, q) = s * vkp + c * e_minus * vkq;
  }
}

std::vector<double> top_half_descending(std::vector<double> values, std::size_t n) {
  std::sort(values.begin(), values.end(), std::greater<>());
  values.resize(n);
  for (auto& x : values) x = std::max(x, 0.0);
  return values;
}

}  // namespace

Spectrum Spectrum::reversed() const {
  Spectrum out{values, order == Order::Descending ? Order::Ascending : Order::Descending};
  std::reverse(out.values.begin(), out.values.end());
  return out;
}

double inf_norm(const ComplexMatrix& x) {
  if (x.size() == 0) return 0.0;
  return x.cwiseAbs().rowwise().sum().maxCoeff();
}

double default_tol(const ComplexMatrix& x) { return 1e-9 * std::max(1.0, inf_norm(x)); }

void require_valid(const ComplexMatrix& x, const char* what) {
  if (x.rows() == 0 || x.rows() != x.cols())
    throw Error(ErrorCode::InvalidDim, std::string(what) + " must be square and nonempty");
  if (!x.allFinite()) throw Error(ErrorCode::DomainViolation, std::string(what) + " has non-finite entries");
}

bool is_hermitian(const ComplexMatrix& x, double tol) {
  if (x.rows() != x.cols()) return false;
  return (x - x.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_psd(const ComplexMatrix& x, double tol) {
  if (!is_hermitian(x, tol)) return false;
  const auto ev = hermitian_eigenvalues(hermitian_part(x), std::numeric_limits<double>::infinity());
  return ev.back() >= -tol;
}

bool is_unitary(const ComplexMatrix& u, double tol) {
  if (u.rows() != u.cols() || u.rows() == 0) return false;
  return (u.adjoint() * u - identity(u.rows())).cwiseAbs().maxCoeff() <= tol;
}

ComplexMatrix identity(Eigen::Index n) { return ComplexMatrix::Identity(n, n); }

ComplexMatrix diagonal(std::span<const double> d) {
  const auto n = static_cast<Eigen::Index>(d.size());
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) out(i, i) = d[static_cast<std::size_t>(i)];
  return out;
}

ComplexMatrix hermitian_part(const ComplexMatrix& x) { return 0.5 * (x + x.adjoint()); }

ComplexMatrix HermitianEigensystem::reconstruct() const {
  const Eigen::VectorXd lam = Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
  return vectors * lam.cast<Complex>().asDiagonal() * vectors.adjoint();
}

HermitianEigensystem hermitian_eigensystem(const ComplexMatrix& x, double tol) {
  require_valid(x);
  if (!is_hermitian(x, tol)) throw Error(ErrorCode::NotHermitian, "eigensolver input is not Hermitian");

  const auto n = x.rows();
  ComplexMatrix w = hermitian_part(x);
  ComplexMatrix v = identity(n);
  const double scale = w.norm();

  if (scale > 0.0) {
    int sweep = 0;
    while (off_diagonal_norm(w) > kOffDiagonalTol * scale) {
      if (++sweep > kMaxSweeps) throw Error(ErrorCode::NoConvergence, "Jacobi sweep cap exceeded");
      for (Eigen::Index p = 0; p + 1 < n; ++p)
        for (Eigen::Index q = p + 1; q < n; ++q) rotate(w, v, p, q);
    }
  }

  std::vector<std::size_t> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) {
    return w(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real() >
           w(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)).real();
  });

  HermitianEigensystem sys;
  sys.values.reserve(idx.size());
  sys.vectors.resize(n, n);
  for (std::size_t k = 0; k < idx.size(); ++k) {
    const auto src = static_cast<Eigen::Index>(idx[k]);
    sys.values.push_back(w(src, src).real());
    sys.vectors.col(static_cast<Eigen::Index>(k)) = v.col(src);
  }
  return sys;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& x, double tol) {
  return hermitian_eigensystem(x, tol).values;
}

Spectrum singular_values(const ComplexMatrix& x, Order order) {
  require_valid(x);
  const auto n = x.rows();
  Spectrum s;
  if (exactly_hermitian(x)) {
    s.values = hermitian_eigenvalues(x, std::numeric_limits<double>::infinity());
    for (auto& v : s.values) v = std::abs(v);
    std::sort(s.values.begin(), s.values.end(), std::greater<>());
  } else {
    // Eigenvalues of [[0, X], [X*, 0]] are +-sigma_i(X).
    ComplexMatrix doubled = ComplexMatrix::Zero(2 * n, 2 * n);
    doubled.topRightCorner(n, n) = x;
    doubled.bottomLeftCorner(n, n) = x.adjoint();
    s.values = top_half_descending(hermitian_eigenvalues(doubled, std::numeric_limits<double>::infinity()),
                                   static_cast<std::size_t>(n));
  }
  s.order = Order::Descending;
  return order == Order::Descending ? s : s.reversed();
}

double spectral_norm(const ComplexMatrix& x) { return singular_values(x).values.front(); }

double power_sum(std::span<const double> v, double p) {
  double s = 0.0;
  for (double x : v) s += std::pow(std::abs(x), p);
  return s;
}

double schatten_power(const ComplexMatrix& x, double p) {
  if (!(p >= 1.0)) throw Error(ErrorCode::InvalidP, "Schatten exponent must be >= 1");
  require_valid(x);
  if (p == 2.0) return x.squaredNorm();
  return power_sum(singular_values(x).values, p);
}

SpectralMap SpectralMap::identity() { return {[](double x) { return x; }, -std::numeric_limits<double>::infinity(), false, "x"}; }

SpectralMap SpectralMap::power(double s) {
  SpectralMap m;
  m.fn = [s](double x) { return std::pow(x, s); };
  m.lower = 0.0;
  m.lower_open = s < 0.0;
  m.name = "x^" + std::to_string(s);
  return m;
}

SpectralMap SpectralMap::shifted_inverse(double t) {
  return {[t](double x) { return 1.0 / (x + t); }, -t, true, "1/(x+t)"};
}

ComplexMatrix apply_spectral(const HermitianEigensystem& sys, const SpectralMap& f, double tol) {
  const auto n = static_cast<Eigen::Index>(sys.values.size());
  Eigen::VectorXcd fl(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double lam = sys.values[static_cast<std::size_t>(i)];
    if (f.lower_open ? !(lam > f.lower) : !(lam >= f.lower)) {
      if (!f.lower_open && lam >= f.lower - tol) {
        lam = f.lower;
      } else {
        throw Error(ErrorCode::DomainViolation,
                    "eigenvalue " + std::to_string(lam) + " outside the domain of " + f.name);
      }
    }
    const double y = f.fn(lam);
    if (!std::isfinite(y)) throw Error(ErrorCode::DomainViolation, f.name + " is not finite on the spectrum");
    fl(i) = y;
  }
  return hermitian_part(sys.vectors * fl.asDiagonal() * sys.vectors.adjoint());
}

ComplexMatrix hermitian_function(const ComplexMatrix& x, const SpectralMap& f, double tol) {
  return apply_spectral(hermitian_eigensystem(x, tol), f, tol);
}

}  // namespace schatten
