#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "epb/curve.hpp"
#include "epb/mpoly.hpp"

namespace epb {

/// Antisymmetric bracket table over an ordered variable list: only pairs
/// i < j are stored, each entry a homogeneous quadratic in the x-variables.
/// Symbolic tables additionally have parameter-degree <= 1 per entry.
struct BracketTable {
  int n = 0;
  Parity parity = Parity::Even;
  Rational alpha;
  bool symbolic = true;
  std::vector<int> vars;                       // ascending x-indices
  std::map<std::pair<int, int>, MPoly> entries;  // keys i < j only

  const MPoly& entry(int i, int j) const;
  /// entry with antisymmetry applied; zero when i == j.
  MPoly signed_entry(int i, int j) const;
};

class ClosureViolation : public std::runtime_error {
public:
  ClosureViolation(int i_, int j_, int index_)
      : std::runtime_error("build_table: {x" + std::to_string(i_) + ",x" +
                           std::to_string(j_) + "} produced x" +
                           std::to_string(index_) + " outside {0, 2..n}"),
        i(i_), j(j_), index(index_) {}
  int i, j, index;
};

/// {x_i, x_j} for the n-variable family, evaluated from the fully reduced
/// Case 1-3 expressions with every explicit n replaced by alpha.
QuadForm pair_bracket(int n, int i, int j, const Rational& alpha);
inline QuadForm pair_bracket(int n, int i, int j) {
  return pair_bracket(n, i, j, Rational(n));
}

/// Full symbolic table; throws ClosureViolation when alpha != n makes an
/// out-of-range generator survive.
BracketTable build_table(int n, const Rational& alpha, int jobs = 1);
inline BracketTable build_table(int n, int jobs = 1) {
  return build_table(n, Rational(n), jobs);
}

/// The nine-way split: base = all parameters at zero, one direction per
/// parameter (a0..a4/b0..b2 for even n; a0..a3/b0..b2/c for odd n).
struct NineSplit {
  BracketTable base;
  std::vector<std::pair<std::string, BracketTable>> directions;

  /// base followed by the eight directions.
  std::vector<const BracketTable*> nine() const;
};

NineSplit split_nine(const BracketTable& table);

/// Exact reconstruction base + sum(param * direction); inverse of split_nine.
BracketTable reconstruct(const NineSplit& split);

/// The 3-variable bracket {x_s1, x_s2} = dP/dx_s3 over even permutations;
/// P must be a homogeneous cubic in x1, x2, x3.
BracketTable nambu3(const MPoly& P);

/// The 4-variable bracket given by the 2x2 Jacobian determinant of (P, R)
/// over even permutations; P, R homogeneous quadratics in x1..x4.
BracketTable jacobian4(const MPoly& P, const MPoly& R);

/// Legal parameter set for a parity: a0..a4, b0..b2 (even) or
/// a0..a3, b0..b2, c (odd).
std::vector<VarId> legal_params(Parity parity);

/// Substitutes rational parameter values into every entry.
BracketTable instantiate(const BracketTable& table, const std::map<VarId, Rational>& values);

/// c1 * t1 + c2 * t2 (same variable universe).
BracketTable table_lincomb(const Rational& c1, const BracketTable& t1,
                           const Rational& c2, const BracketTable& t2);

}  // namespace epb
