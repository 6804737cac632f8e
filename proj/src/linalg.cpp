#include "epb/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "epb/parallel.hpp"

namespace epb {

void SparseRow::make_primitive() {
  if (e.empty()) return;
  unsigned long long g = 0;
  for (auto& [c, v] : e) g = std::gcd(g, static_cast<unsigned long long>(v < 0 ? -v : v));
  long long div = static_cast<long long>(g);
  if (e.front().second < 0) div = -div;
  if (div != 1)
    for (auto& [c, v] : e) v /= div;
}

std::size_t SparseRow::hash() const {
  std::size_t h = 1469598103934665603ull;
  for (auto& [c, v] : e) {
    h = (h ^ static_cast<std::size_t>(c)) * 1099511628211ull;
    h = (h ^ static_cast<std::size_t>(v)) * 1099511628211ull;
  }
  return h;
}

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return (a * b) % p;  // p < 2^31, operands reduced
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

std::uint64_t reduce_mod(long long v, std::uint64_t p) {
  long long m = v % static_cast<long long>(p);
  if (m < 0) m += static_cast<long long>(p);
  return static_cast<std::uint64_t>(m);
}

// 31-bit primes for the modular pre-pass.
constexpr std::uint64_t kPrimes[] = {2147483647ull, 2147483629ull, 2147483587ull,
                                     2147483579ull, 2147483563ull, 2147483549ull,
                                     2147483543ull, 2147483497ull};

}  // namespace

long long modular_rank(const std::vector<SparseRow>& rows, int ncols, std::uint64_t p,
                       std::vector<std::size_t>* pivot_rows,
                       std::vector<std::int32_t>* pivot_cols) {
  std::size_t m = rows.size();
  std::vector<std::vector<std::uint32_t>> w(m, std::vector<std::uint32_t>(ncols, 0));
  for (std::size_t i = 0; i < m; ++i)
    for (auto& [c, v] : rows[i].e) w[i][c] = static_cast<std::uint32_t>(reduce_mod(v, p));

  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);

  long long rank = 0;
  std::size_t next = 0;
  for (int col = 0; col < ncols && next < m; ++col) {
    std::size_t pivot = next;
    while (pivot < m && w[order[pivot]][col] == 0) ++pivot;
    if (pivot == m) continue;
    std::swap(order[next], order[pivot]);
    std::size_t pr = order[next];
    if (pivot_rows) pivot_rows->push_back(pr);
    if (pivot_cols) pivot_cols->push_back(col);
    std::uint64_t inv = powmod(w[pr][col], p - 2, p);
    for (std::size_t i = next + 1; i < m; ++i) {
      std::size_t ri = order[i];
      std::uint64_t head = w[ri][col];
      if (head == 0) continue;
      std::uint64_t factor = mulmod(head, inv, p);
      auto* dst = w[ri].data();
      const auto* src = w[pr].data();
      for (int c = col; c < ncols; ++c) {
        if (src[c] == 0) continue;
        std::uint64_t sub = mulmod(factor, src[c], p);
        std::uint64_t val = dst[c] + p - sub;
        if (val >= p) val -= p;
        dst[c] = static_cast<std::uint32_t>(val);
      }
    }
    ++next;
    ++rank;
  }
  return rank;
}

namespace {

// Fraction-free echelon of the selected rows along the given pivot columns.
// Pivot nonsingularity is guaranteed by the mod-p witness.
std::vector<std::vector<BigInt>> bareiss_echelon(const std::vector<SparseRow>& rows,
                                                 const std::vector<std::size_t>& pivot_rows,
                                                 const std::vector<std::int32_t>& pivot_cols,
                                                 int ncols, int jobs) {
  std::size_t r = pivot_rows.size();
  std::vector<std::vector<BigInt>> w(r, std::vector<BigInt>(ncols));
  for (std::size_t i = 0; i < r; ++i)
    for (auto& [c, v] : rows[pivot_rows[i]].e) w[i][c] = static_cast<long>(v);

  BigInt prev(1);
  for (std::size_t k = 0; k < r; ++k) {
    int pc = pivot_cols[k];
    // Mod-p chose this pivot order, but exact cancellation patterns can
    // differ; swap in a row with a nonzero entry if needed.
    if (sgn(w[k][pc]) == 0) {
      for (std::size_t i = k + 1; i < r; ++i)
        if (sgn(w[i][pc]) != 0) {
          std::swap(w[k], w[i]);
          break;
        }
      if (sgn(w[k][pc]) == 0)
        throw std::runtime_error("bareiss_echelon: unexpected zero pivot");
    }
    const BigInt pivot = w[k][pc];
    parallel_for(r - k - 1, jobs, [&](std::size_t off) {
      std::size_t i = k + 1 + off;
      const BigInt head = w[i][pc];
      for (int c = 0; c < ncols; ++c) {
        BigInt t = w[i][c] * pivot - head * w[k][c];
        mpz_divexact(w[i][c].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    });
    prev = pivot;
  }
  return w;
}

std::vector<Rational> back_substitute(const std::vector<std::vector<BigInt>>& ech,
                                      const std::vector<std::int32_t>& pivot_cols,
                                      int ncols, int free_col) {
  std::size_t r = pivot_cols.size();
  std::vector<Rational> v(ncols, Rational(0));
  v[free_col] = Rational(1);
  for (std::size_t ki = r; ki-- > 0;) {
    int pc = pivot_cols[ki];
    Rational sum(0);
    // Earlier pivot columns are exactly zero in this row; every other column
    // (free columns on either side, later pivots) already has its value.
    for (int c = 0; c < ncols; ++c) {
      if (c == pc || sgn(ech[ki][c]) == 0 || v[c].is_zero()) continue;
      sum += Rational(ech[ki][c]) * v[c];
    }
    v[pc] = -sum / Rational(ech[ki][pc]);
  }
  // Scale to a primitive integer vector.
  BigInt lcm(1);
  for (auto& x : v)
    if (!x.is_zero()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.den().get_mpz_t());
  BigInt content(0);
  std::vector<BigInt> ints(ncols);
  for (int c = 0; c < ncols; ++c) {
    ints[c] = v[c].num() * (lcm / v[c].den());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), ints[c].get_mpz_t());
  }
  if (sgn(content) != 0)
    for (int c = 0; c < ncols; ++c) v[c] = Rational(BigInt(ints[c] / content));
  return v;
}

}  // namespace

RankNullspace certified_rank_nullspace(const std::vector<SparseRow>& rows, int ncols,
                                       int jobs) {
  RankNullspace out;
  if (rows.empty() || ncols == 0) {
    out.rank = 0;
    for (int c = 0; c < ncols; ++c) {
      std::vector<Rational> v(ncols, Rational(0));
      v[c] = Rational(1);
      out.nullspace.push_back(std::move(v));
    }
    return out;
  }

  for (std::uint64_t p : kPrimes) {
    std::vector<std::size_t> pivot_rows;
    std::vector<std::int32_t> pivot_cols;
    long long r = modular_rank(rows, ncols, p, &pivot_rows, &pivot_cols);

    std::vector<std::vector<Rational>> nullspace;
    if (r < ncols) {
      auto ech = bareiss_echelon(rows, pivot_rows, pivot_cols, ncols, jobs);
      std::vector<bool> is_pivot(ncols, false);
      for (int c : pivot_cols) is_pivot[c] = true;
      std::vector<int> free_cols;
      for (int c = 0; c < ncols; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
      nullspace.resize(free_cols.size());
      parallel_for(free_cols.size(), jobs, [&](std::size_t k) {
        nullspace[k] = back_substitute(ech, pivot_cols, ncols, free_cols[k]);
      });
    }

    // Certify: every row must annihilate every nullspace vector. Rank >= r is
    // witnessed by the pivot rows; rows ⟂ an (ncols - r)-dimensional space
    // bounds the rank above by r.
    std::vector<char> ok(rows.size(), 1);
    parallel_for(rows.size(), jobs, [&](std::size_t i) {
      for (auto& v : nullspace) {
        Rational dot(0);
        for (auto& [c, val] : rows[i].e) {
          if (v[c].is_zero()) continue;
          dot += Rational(static_cast<long>(val)) * v[c];
        }
        if (!dot.is_zero()) {
          ok[i] = 0;
          return;
        }
      }
    });
    if (std::find(ok.begin(), ok.end(), 0) == ok.end()) {
      out.rank = r;
      out.nullspace = std::move(nullspace);
      return out;
    }
    // Unlucky prime: retry with the next one.
  }
  throw std::runtime_error("certified_rank_nullspace: certification failed for all primes");
}

long long exact_rank(const std::vector<std::vector<Rational>>& rows) {
  if (rows.empty()) return 0;
  int ncols = static_cast<int>(rows[0].size());
  std::vector<SparseRow> sparse;
  for (auto& row : rows) {
    BigInt lcm(1);
    for (auto& x : row)
      if (!x.is_zero()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.den().get_mpz_t());
    SparseRow sr;
    for (int c = 0; c < ncols; ++c) {
      if (row[c].is_zero()) continue;
      BigInt scaled = row[c].num() * (lcm / row[c].den());
      if (!scaled.fits_slong_p())
        throw std::runtime_error("exact_rank: entry too large for sparse row");
      sr.e.push_back({c, scaled.get_si()});
    }
    if (!sr.e.empty()) sparse.push_back(std::move(sr));
  }
  return certified_rank_nullspace(sparse, ncols).rank;
}

}  // namespace epb
