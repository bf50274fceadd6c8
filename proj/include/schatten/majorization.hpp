#pragma once

// Majorization relations on real vectors and the executable forms of the
// lemmas built on them. Every relation re-sorts its inputs descending;
// callers never pre-sort.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "schatten/linalg.hpp"

namespace schatten {

enum class MajorizationKind { Weak, Strong, WeakLog, Log };

struct MajorizationVerdict {
  bool holds = false;
  /// Partial-sum (or product) length k, 1-based, with the smallest slack.
  std::size_t worst_index = 0;
  /// Signed slack at worst_index: rhs - lhs for the partial sums, or the
  /// difference of log-sums for log kinds. Total-equality kinds report
  /// -|rhs - lhs| at k = n.
  double margin = 0.0;
  /// Absolute slack the verdict was judged against; holds <=> margin >= -tolerance.
  double tolerance = 0.0;
};

/// a is majorized by b in the requested sense. Partial sums compare with
/// slack tol * max(1, ||b||_1); log kinds compare sums of logs (entries
/// clamped below at 1e-300) with slack tol.
MajorizationVerdict majorization_relation(std::span<const double> a, std::span<const double> b,
                                          MajorizationKind kind, double tol);

struct SumComparison {
  double lhs = 0.0;
  double rhs = 0.0;
};

/// (sum f(a_i), sum f(b_i)).
SumComparison hlp_sum_compare(std::span<const double> a, std::span<const double> b,
                              const std::function<double(double)>& f);

/// a <_w b  =>  a^s <_w b^s for s >= 1. Throws HypothesisViolated when a is not
/// weakly majorized by b.
bool power_lemma_check(std::span<const double> a, std::span<const double> b, double s, double tol);

/// x <_w y and a <_w b (nonnegative, descending)  =>  x a <_w y b entrywise.
bool product_majorization_check(std::span<const double> x, std::span<const double> y,
                                std::span<const double> a, std::span<const double> b, double tol);

/// a <_(log) b and a < b  =>  a is a permutation of b.
bool log_equality_permutation_check(std::span<const double> a, std::span<const double> b, double tol);

/// lambda(A + B) < lambda(A) + lambda(B) for Hermitian A, B.
MajorizationVerdict fan_check(const ComplexMatrix& a, const ComplexMatrix& b, double tol);

/// sigma(AB) <_(log) sigma(A) sigma(B). Singular values of AB below
/// 1e-13 * n * sigma_1(A) sigma_1(B) count as zero; with any zero present
/// the check falls back to weak-log on the nonzero prefix.
MajorizationVerdict gelfand_naimark_check(const ComplexMatrix& a, const ComplexMatrix& b, double tol);

}  // namespace schatten
