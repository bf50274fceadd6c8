#pragma once

// Dense complex matrix kernels: Hermitian eigensolver, singular values,
// Schatten powers, and spectral matrix functions.

#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "schatten/error.hpp"

namespace schatten {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

enum class Order { Descending, Ascending };

/// Nonnegative singular values with a declared sort order.
struct Spectrum {
  std::vector<double> values;
  Order order = Order::Descending;

  std::size_t size() const { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }

  /// Same multiset in the opposite order.
  Spectrum reversed() const;
};

/// Structural predicate tolerance: 1e-9 scaled by max(1, ||X||_inf).
double default_tol(const ComplexMatrix& x);

/// Throws InvalidDim / DomainViolation unless `x` is a nonempty, square, finite matrix.
void require_valid(const ComplexMatrix& x, const char* what = "matrix");

/// Max row-sum norm.
double inf_norm(const ComplexMatrix& x);

/// max_{ij} |X_ij - conj(X_ji)| <= tol.
bool is_hermitian(const ComplexMatrix& x, double tol);
inline bool is_hermitian(const ComplexMatrix& x) { return is_hermitian(x, default_tol(x)); }

/// Hermitian within tol and smallest eigenvalue >= -tol.
bool is_psd(const ComplexMatrix& x, double tol);
inline bool is_psd(const ComplexMatrix& x) { return is_psd(x, default_tol(x)); }

/// max_{ij} |(U*U - I)_ij| <= tol.
bool is_unitary(const ComplexMatrix& u, double tol = 1e-9);

ComplexMatrix identity(Eigen::Index n);
ComplexMatrix diagonal(std::span<const double> d);

/// Hermitian part (X + X*) / 2.
ComplexMatrix hermitian_part(const ComplexMatrix& x);

struct HermitianEigensystem {
  std::vector<double> values;  ///< descending
  ComplexMatrix vectors;       ///< column i pairs with values[i]

  ComplexMatrix reconstruct() const;
};

/// Cyclic complex Jacobi. Converges when the off-diagonal Frobenius mass is
/// at most 1e-14 * ||X||_F.
HermitianEigensystem hermitian_eigensystem(const ComplexMatrix& x, double tol);
inline HermitianEigensystem hermitian_eigensystem(const ComplexMatrix& x) {
  return hermitian_eigensystem(x, default_tol(x));
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& x, double tol);
inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& x) {
  return hermitian_eigenvalues(x, default_tol(x));
}

Spectrum singular_values(const ComplexMatrix& x, Order order = Order::Descending);

/// Largest singular value.
double spectral_norm(const ComplexMatrix& x);

/// sum_i |v_i|^p over a plain vector.
double power_sum(std::span<const double> v, double p);

/// ||X||_p^p. For p == 2 this is the entrywise sum of squares.
double schatten_power(const ComplexMatrix& x, double p);

/// Scalar map applied to a Hermitian spectrum, with its domain declared as a
/// half-line [lower, inf) or (lower, inf).
struct SpectralMap {
  std::function<double(double)> fn;
  double lower = -std::numeric_limits<double>::infinity();
  bool lower_open = false;
  std::string name = "f";

  static SpectralMap identity();
  /// x -> x^s; domain [0, inf) for s > 0, (0, inf) for s < 0.
  static SpectralMap power(double s);
  /// x -> 1 / (x + t), domain (-t, inf).
  static SpectralMap shifted_inverse(double t);
  static SpectralMap inverse_sqrt() { return power(-0.5); }
};

/// Q f(Lambda) Q*. Eigenvalues within `tol` below a closed domain edge are
/// clamped onto it; anything else outside the domain is a DomainViolation.
ComplexMatrix hermitian_function(const ComplexMatrix& x, const SpectralMap& f, double tol);
inline ComplexMatrix hermitian_function(const ComplexMatrix& x, const SpectralMap& f) {
  return hermitian_function(x, f, default_tol(x));
}

/// Same as hermitian_function on a precomputed decomposition.
ComplexMatrix apply_spectral(const HermitianEigensystem& sys, const SpectralMap& f, double tol);

}  // namespace schatten
