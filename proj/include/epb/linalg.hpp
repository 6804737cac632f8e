#pragma once

#include <cstdint>
#include <vector>

#include "epb/rational.hpp"

namespace epb {

/// Sparse integer row: (column, value) pairs sorted by column, values nonzero.
struct SparseRow {
  std::vector<std::pair<std::int32_t, long long>> e;

  bool operator==(const SparseRow&) const = default;
  /// Divides by the gcd and normalizes the leading sign.
  void make_primitive();
  std::size_t hash() const;
};

/// Exact rank and nullspace of an integer constraint matrix. A mod-p
/// elimination selects pivot rows; a fraction-free (Bareiss) echelon of those
/// rows plus exact verification that every input row annihilates the computed
/// nullspace certifies the result (bad primes are detected and retried).
struct RankNullspace {
  long long rank = 0;
  /// Primitive integer vectors (as Rationals), one per free column.
  std::vector<std::vector<Rational>> nullspace;
};

RankNullspace certified_rank_nullspace(const std::vector<SparseRow>& rows, int ncols,
                                       int jobs = 1);

/// Rank mod p; optionally reports which original rows/columns carry pivots.
long long modular_rank(const std::vector<SparseRow>& rows, int ncols, std::uint64_t p,
                       std::vector<std::size_t>* pivot_rows = nullptr,
                       std::vector<std::int32_t>* pivot_cols = nullptr);

/// Exact rank of a small dense rational matrix (fraction-free elimination).
long long exact_rank(const std::vector<std::vector<Rational>>& rows);

}  // namespace epb
