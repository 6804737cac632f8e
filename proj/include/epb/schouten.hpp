#pragma once

#include <array>
#include <map>
#include <vector>

#include "epb/brackets.hpp"

namespace epb {

/// Totally antisymmetric trivector: entries over triples i < j < k.
struct Trivector {
  std::vector<int> vars;
  std::map<std::array<int, 3>, MPoly> entries;

  bool is_zero() const;
  /// Smallest triple with a nonzero entry, or nullptr.
  const MPoly* first_nonzero(std::array<int, 3>* triple = nullptr) const;
};

/// Entry (i,j,k) = sum_l [B1(i,l) d_l B2(j,k) + B2(i,l) d_l B1(j,k)]
/// + cyclic permutations of (i,j,k). With B1 = B2 this is twice the
/// Jacobiator; compatibility of two Poisson brackets is its vanishing.
Trivector mixed_jacobiator(const BracketTable& b1, const BracketTable& b2, int jobs = 1);

/// True iff the Jacobi identity holds identically (in parameters too, for
/// symbolic tables).
bool is_poisson(const BracketTable& b, int jobs = 1);

bool are_compatible(const BracketTable& b1, const BracketTable& b2, int jobs = 1);

struct SolveOptions {
  int jobs = 1;
  long long row_budget = -1;  // < 0: unlimited
};

struct CompatReport {
  int n = 0;
  int degree = 0;
  long long unknowns = 0;
  long long rank = 0;
  long long solution_dim = 0;
  bool conclusive = true;  // false: row budget hit, rank is for the truncated system
  std::vector<BracketTable> basis;
};

/// Dimension of the space of antisymmetric brackets with homogeneous
/// degree-d polynomial entries whose mixed Jacobiator with every basis table
/// vanishes. Exact rational rank (modular pre-filter, exact certification);
/// the returned basis spans the solution space.
CompatReport compatible_space_dim(const std::vector<const BracketTable*>& basis, int degree,
                                  const SolveOptions& options = {});

/// Stacks tables into exact coefficient vectors and returns the rank of their
/// span (used for the nine-ness and fixture-span checks).
long long table_span_rank(const std::vector<const BracketTable*>& tables);

}  // namespace epb
