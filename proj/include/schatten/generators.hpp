#pragma once

// Seedable generators for every hypothesis class, plus the fixed matrices of
// the two published counterexamples.

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <utility>

#include "schatten/linalg.hpp"

namespace schatten {

enum class FamilyTag {
  GeneralHermitian,
  GeneralComplex,
  Commuting,
  Anticommuting,
  Unitary,
  OrderedPsd,
  Contraction,
  HannerPositive,
};

std::string_view to_string(FamilyTag tag);
FamilyTag parse_family(std::string_view s);

struct PairFamily {
  FamilyTag tag = FamilyTag::GeneralHermitian;
  int dim = 2;
};

/// Identifies one draw. Equal (seed, index) give bit-identical output.
struct RandomStream {
  std::uint64_t seed = 0;
  std::uint64_t index = 0;

  RandomStream child(std::uint64_t sub) const;
};

/// Portable sampler: mt19937_64 bits with hand-rolled uniform and normal
/// transforms, so draws do not depend on the standard library vendor.
class Sampler {
 public:
  explicit Sampler(RandomStream stream);

  double uniform();  ///< [0, 1)
  double uniform(double lo, double hi);
  double normal();
  Complex complex_normal();  ///< E|z|^2 = 1

  ComplexMatrix ginibre(int n);
  ComplexMatrix gue(int n);
  ComplexMatrix haar_unitary(int n);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

struct MatrixPair {
  ComplexMatrix a;
  ComplexMatrix b;
};

MatrixPair random_pair(const PairFamily& family, RandomStream stream);

/// Checks the family invariants on a concrete pair.
bool satisfies_family(const PairFamily& family, const MatrixPair& pair, double tol = 1e-8);

/// [[0, X], [X*, 0]].
ComplexMatrix double_selfadjoint(const ComplexMatrix& x);

/// "ce1" or "ce2". Throws UnknownFixture.
MatrixPair fixture_pair(std::string_view name);

}  // namespace schatten
