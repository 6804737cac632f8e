#include "epb/schouten.hpp"

#include <algorithm>
#include <unordered_set>

#include "epb/linalg.hpp"
#include "epb/parallel.hpp"

namespace epb {

bool Trivector::is_zero() const {
  for (auto& [key, poly] : entries)
    if (!poly.is_zero()) return false;
  return true;
}

const MPoly* Trivector::first_nonzero(std::array<int, 3>* triple) const {
  for (auto& [key, poly] : entries)
    if (!poly.is_zero()) {
      if (triple) *triple = key;
      return &poly;
    }
  return nullptr;
}

Trivector mixed_jacobiator(const BracketTable& b1, const BracketTable& b2, int jobs) {
  if (b1.vars != b2.vars)
    throw std::invalid_argument("mixed_jacobiator: variable universes differ");
  const auto& vars = b1.vars;

  std::vector<std::array<int, 3>> triples;
  for (std::size_t a = 0; a < vars.size(); ++a)
    for (std::size_t b = a + 1; b < vars.size(); ++b)
      for (std::size_t c = b + 1; c < vars.size(); ++c)
        triples.push_back({vars[a], vars[b], vars[c]});

  std::vector<MPoly> results(triples.size());
  parallel_for(triples.size(), jobs, [&](std::size_t t) {
    auto [i, j, k] = triples[t];
    MPoly sum;
    for (auto [a, b, c] : {std::array<int, 3>{i, j, k}, {j, k, i}, {k, i, j}}) {
      for (int l : vars) {
        if (l == a) continue;
        MPoly d2 = b2.signed_entry(b, c).partial(VarId::x(l));
        MPoly d1 = b1.signed_entry(b, c).partial(VarId::x(l));
        if (!d2.is_zero()) sum += b1.signed_entry(a, l) * d2;
        if (!d1.is_zero()) sum += b2.signed_entry(a, l) * d1;
      }
    }
    results[t] = std::move(sum);
  });

  Trivector out;
  out.vars = vars;
  for (std::size_t t = 0; t < triples.size(); ++t)
    if (!results[t].is_zero()) out.entries.emplace(triples[t], std::move(results[t]));
  return out;
}

bool is_poisson(const BracketTable& b, int jobs) {
  return mixed_jacobiator(b, b, jobs).is_zero();
}

bool are_compatible(const BracketTable& b1, const BracketTable& b2, int jobs) {
  return mixed_jacobiator(b1, b2, jobs).is_zero();
}

namespace {

void enumerate_monomials_rec(const std::vector<int>& vars, std::size_t idx, int remaining,
                             Monomial current, std::vector<Monomial>& out) {
  if (idx + 1 == vars.size()) {
    out.push_back(current.times(
        Monomial::var(VarId::x(vars[idx]), static_cast<std::uint32_t>(remaining))));
    return;
  }
  for (int e = remaining; e >= 0; --e)
    enumerate_monomials_rec(
        vars, idx + 1, remaining - e,
        current.times(Monomial::var(VarId::x(vars[idx]), static_cast<std::uint32_t>(e))), out);
}

std::vector<Monomial> monomials_of_degree(const std::vector<int>& vars, int d) {
  std::vector<Monomial> out;
  if (vars.empty()) return out;
  enumerate_monomials_rec(vars, 0, d, Monomial::one(), out);
  std::sort(out.begin(), out.end());
  return out;
}

struct RowHash {
  std::size_t operator()(const SparseRow& r) const { return r.hash(); }
};

}  // namespace

CompatReport compatible_space_dim(const std::vector<const BracketTable*>& basis, int degree,
                                  const SolveOptions& options) {
  if (basis.empty()) throw std::invalid_argument("compatible_space_dim: empty basis");
  if (degree < 0 || degree > 4)
    throw std::invalid_argument("compatible_space_dim: degree must be in 0..4");
  const auto& vars = basis[0]->vars;
  for (auto* b : basis)
    if (b->vars != vars)
      throw std::invalid_argument("compatible_space_dim: variable universes differ");

  std::vector<std::pair<int, int>> pairs;
  for (std::size_t a = 0; a < vars.size(); ++a)
    for (std::size_t b = a + 1; b < vars.size(); ++b)
      pairs.push_back({vars[a], vars[b]});
  std::vector<Monomial> monos = monomials_of_degree(vars, degree);

  const long long ncols = static_cast<long long>(pairs.size()) *
                          static_cast<long long>(monos.size());

  // Unknown bracket with one E-class symbol per coefficient.
  BracketTable unknown;
  unknown.n = basis[0]->n;
  unknown.parity = basis[0]->parity;
  unknown.alpha = basis[0]->alpha;
  unknown.symbolic = false;
  unknown.vars = vars;
  {
    int col = 0;
    for (auto& pr : pairs) {
      MPoly entry;
      for (auto& m : monos) {
        entry += MPoly::term(m.times(Monomial::var(VarId::e(col + 1))), 1);
        ++col;
      }
      unknown.entries.emplace(pr, std::move(entry));
    }
  }

  CompatReport report;
  report.n = basis[0]->n;
  report.degree = degree;
  report.unknowns = ncols;

  // Stream constraint rows: one linear equation per (basis table, triple,
  // x-monomial) with nonzero coefficients.
  std::vector<SparseRow> rows;
  std::unordered_set<SparseRow, RowHash> seen;
  bool budget_hit = false;
  for (auto* bt : basis) {
    Trivector t = mixed_jacobiator(*bt, unknown, options.jobs);
    for (auto& [triple, poly] : t.entries) {
      for (auto& [xmono, coeffs] : poly.split_by_class(VarClass::X)) {
        SparseRow row;
        BigInt lcm(1);
        for (auto& [emono, c] : coeffs.terms())
          mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.den().get_mpz_t());
        for (auto& [emono, c] : coeffs.terms()) {
          auto evars = emono.factors();
          if (evars.size() != 1 || evars[0].first.cls != VarClass::E || evars[0].second != 1)
            throw std::logic_error("compatible_space_dim: constraint not linear in unknowns");
          BigInt scaled = c.num() * (lcm / c.den());
          if (!scaled.fits_slong_p())
            throw std::runtime_error("compatible_space_dim: coefficient overflow");
          row.e.push_back({evars[0].first.index - 1, scaled.get_si()});
        }
        if (row.e.empty()) continue;
        std::sort(row.e.begin(), row.e.end());
        row.make_primitive();
        if (!seen.count(row)) {
          if (options.row_budget >= 0 &&
              static_cast<long long>(rows.size()) >= options.row_budget) {
            budget_hit = true;
            break;
          }
          seen.insert(row);
          rows.push_back(std::move(row));
        }
      }
      if (budget_hit) break;
    }
    if (budget_hit) break;
  }

  RankNullspace rn = certified_rank_nullspace(rows, static_cast<int>(ncols), options.jobs);
  report.rank = rn.rank;
  report.solution_dim = ncols - rn.rank;
  report.conclusive = !budget_hit;

  if (report.conclusive) {
    for (auto& vec : rn.nullspace) {
      BracketTable sol;
      sol.n = unknown.n;
      sol.parity = unknown.parity;
      sol.alpha = unknown.alpha;
      sol.symbolic = false;
      sol.vars = vars;
      int col = 0;
      for (auto& pr : pairs) {
        MPoly entry;
        for (auto& m : monos) {
          if (!vec[col].is_zero()) entry += MPoly::term(m, vec[col]);
          ++col;
        }
        sol.entries.emplace(pr, std::move(entry));
      }
      report.basis.push_back(std::move(sol));
    }
  }
  return report;
}

long long table_span_rank(const std::vector<const BracketTable*>& tables) {
  if (tables.empty()) return 0;
  // Common coordinate system: every (pair, monomial) seen in any table.
  std::map<std::pair<std::pair<int, int>, Monomial>, int> coord;
  for (auto* t : tables)
    for (auto& [key, poly] : t->entries)
      for (auto& [m, c] : poly.terms())
        coord.try_emplace({key, m}, 0);
  int ncols = 0;
  for (auto& [key, idx] : coord) idx = ncols++;

  std::vector<std::vector<Rational>> rows;
  for (auto* t : tables) {
    std::vector<Rational> row(ncols, Rational(0));
    for (auto& [key, poly] : t->entries)
      for (auto& [m, c] : poly.terms()) row[coord.at({key, m})] = c;
    rows.push_back(std::move(row));
  }
  return exact_rank(rows);
}

}  // namespace epb
