#include "epb/brackets.hpp"

#include <algorithm>
#include <optional>

#include "epb/parallel.hpp"

namespace epb {

const MPoly& BracketTable::entry(int i, int j) const {
  auto it = entries.find({i, j});
  if (it == entries.end()) throw std::out_of_range("BracketTable: no such pair");
  return it->second;
}

MPoly BracketTable::signed_entry(int i, int j) const {
  if (i == j) return MPoly::zero();
  if (i < j) return entry(i, j);
  return -entry(j, i);
}

namespace {

// Assembles the bilinear element A + B g1 + C g2 + D g1g2 from the final
// (fully reduced) case expressions, one per index-type pairing.
struct CaseBuilder {
  Parity parity;
  Rational alpha;
  VarId f1 = VarId::f(1), f2 = VarId::f(2);
  std::vector<MPoly> P, Q, dP, dQ;
  MPoly Pf1, Pf2, Qf1, Qf2, dPf1, dPf2, dQf1, dQf2, diffQ;
  MPoly fc1, fc2;  // f1 + c, f2 + c (odd only)
  MPoly b2;

  explicit CaseBuilder(Parity par, Rational al) : parity(par), alpha(std::move(al)) {
    P = curve_P(parity);
    Q = curve_Q();
    dP = poly_derivative(P);
    dQ = poly_derivative(Q);
    Pf1 = poly_at_var(P, f1);
    Pf2 = poly_at_var(P, f2);
    Qf1 = poly_at_var(Q, f1);
    Qf2 = poly_at_var(Q, f2);
    dPf1 = poly_at_var(dP, f1);
    dPf2 = poly_at_var(dP, f2);
    dQf1 = poly_at_var(dQ, f1);
    dQf2 = poly_at_var(dQ, f2);
    diffQ = diff_quotient(Q, f1, f2);
    if (parity == Parity::Odd) {
      fc1 = MPoly::variable(f1) + MPoly::variable(VarId::c());
      fc2 = MPoly::variable(f2) + MPoly::variable(VarId::c());
    }
    b2 = MPoly::variable(VarId::b(2));
  }

  MPoly fpow(int which, int e) const {
    return MPoly::term(Monomial::var(which == 1 ? f1 : f2, static_cast<std::uint32_t>(e)), 1);
  }

  // R = f^r, T = f^t building blocks.
  MPoly r1t2(int r, int t) const { return fpow(1, r) * fpow(2, t); }
  MPoly r2t1(int r, int t) const { return fpow(2, r) * fpow(1, t); }
  MPoly asym(int r, int t) const { return r1t2(r, t) - r2t1(r, t); }
  // R(f2)T'(f1) - T(f2)R'(f1)
  MPoly w1(int r, int t) const {
    MPoly out;
    if (t > 0) out += Rational(t) * (fpow(1, t - 1) * fpow(2, r));
    if (r > 0) out -= Rational(r) * (fpow(1, r - 1) * fpow(2, t));
    return out;
  }
  MPoly w2(int r, int t) const { return swap_12(w1(r, t)); }
  MPoly cq(int r, int t) const { return cross_quotient(r, t, f1, f2); }
  // (R(f1)T(f2)P(f2) - R(f2)T(f1)P(f1)) / (f1 - f2)
  MPoly p_quot(int r, int t) const {
    MPoly out;
    for (std::size_t k = 0; k < P.size(); ++k)
      out += P[k] * cross_quotient(r, t + static_cast<int>(k), f1, f2);
    return out;
  }

  // Case 1: phi = f^r, psi = f^t.
  BiElem case1(int r, int t) const {
    MPoly CQ = cq(r, t), W1 = w1(r, t), W2 = w2(r, t);
    Rational half(1, 2);
    MPoly A, B, C, D;
    if (parity == Parity::Even) {
      A = -half * alpha * CQ * (Qf1 + Qf2) - W1 * Qf1 - W2 * Qf2;
      B = alpha * CQ + Rational(2) * W1;
      C = alpha * CQ + Rational(2) * W2;
    } else {
      MPoly AS = asym(r, t);
      MPoly df = MPoly::variable(f1) - MPoly::variable(f2);
      A = -half * alpha * CQ * (Qf1 + Qf2) + half * b2 * df * AS - W1 * Qf1 - W2 * Qf2;
      B = alpha * CQ * fc1 - AS + Rational(2) * fc1 * W1;
      C = alpha * CQ * fc2 + AS + Rational(2) * fc2 * W2;
    }
    return BiElem(parity, A, B, C, D);
  }

  // Case 2: phi = f^r, psi = f^t g.
  BiElem case2(int r, int t) const {
    MPoly CQ = cq(r, t);
    MPoly R1T2 = r1t2(r, t), R2T1 = r2t1(r, t);
    MPoly dR1T2, dR2T1, R1dT2, R2dT1;
    if (r > 0) {
      dR1T2 = Rational(r) * (fpow(1, r - 1) * fpow(2, t));
      dR2T1 = Rational(r) * (fpow(2, r - 1) * fpow(1, t));
    }
    if (t > 0) {
      R1dT2 = Rational(t) * (fpow(1, r) * fpow(2, t - 1));
      R2dT1 = Rational(t) * (fpow(2, r) * fpow(1, t - 1));
    }
    Rational half(1, 2);
    MPoly A = alpha * p_quot(r, t) + R1T2 * dPf2 + R2T1 * dPf1 +
              Rational(2) * (R1dT2 * Pf2 + R2dT1 * Pf1);
    MPoly B = -half * alpha * diffQ * R2T1 + R2T1 * dQf1 + dR2T1 * Qf2 + R2dT1 * Qf1;
    MPoly C = -half * alpha * diffQ * R1T2 + R1T2 * dQf2 + dR1T2 * Qf1 + R1dT2 * Qf2;
    MPoly D;
    if (parity == Parity::Even) {
      D = alpha * CQ - Rational(2) * dR1T2 - Rational(2) * dR2T1;
    } else {
      MPoly df = MPoly::variable(f1) - MPoly::variable(f2);
      B -= half * b2 * df * R2T1;
      C += half * b2 * df * R1T2;
      MPoly f1f2_2c = MPoly::variable(f1) + MPoly::variable(f2) +
                      Rational(2) * MPoly::variable(VarId::c());
      D = half * alpha * CQ * f1f2_2c + half * (alpha - Rational(2)) * (R1T2 + R2T1) -
          Rational(2) * fc1 * dR1T2 - Rational(2) * fc2 * dR2T1;
    }
    return BiElem(parity, A, B, C, D);
  }

  // Case 3: phi = f^r g, psi = f^t g.
  BiElem case3(int r, int t) const {
    MPoly CQ = cq(r, t), W1 = w1(r, t), W2 = w2(r, t), AS = asym(r, t);
    Rational half(1, 2);
    MPoly A;
    MPoly B = alpha * CQ * Pf2 + Rational(2) * W2 * Pf2 + AS * dPf2;
    MPoly C = alpha * CQ * Pf1 + Rational(2) * W1 * Pf1 - AS * dPf1;
    MPoly D = half * alpha * CQ * (Qf1 + Qf2) + W1 * Qf1 + W2 * Qf2 + AS * (dQf2 - dQf1);
    if (parity == Parity::Odd) {
      MPoly df = MPoly::variable(f1) - MPoly::variable(f2);
      D += half * b2 * AS * df;
    }
    return BiElem(parity, A, B, C, D);
  }
};

bool is_r_type(int index) { return index % 2 == 0; }  // x_{2i}; odd indices are x_{2i+3}

int exponent_of(int index) { return is_r_type(index) ? index / 2 : (index - 3) / 2; }

void validate_index(int n, int i) {
  if (i == 0 || (i >= 2 && i <= n)) return;
  throw std::invalid_argument("pair_bracket: index " + std::to_string(i) +
                              " not in {0, 2.." + std::to_string(n) + "}");
}

}  // namespace

QuadForm pair_bracket(int n, int i, int j, const Rational& alpha) {
  if (n < 3) throw std::invalid_argument("pair_bracket: n must be >= 3");
  validate_index(n, i);
  validate_index(n, j);
  if (i == j) return QuadForm{n, MPoly::zero()};
  Parity parity = parity_of(n);
  if (!is_r_type(i) && is_r_type(j)) {
    QuadForm q = pair_bracket(n, j, i, alpha);
    return QuadForm{n, -q.poly};
  }
  CaseBuilder cb(parity, alpha);
  int r = exponent_of(i), t = exponent_of(j);
  BiElem elem = is_r_type(i) ? (is_r_type(j) ? cb.case1(r, t) : cb.case2(r, t))
                             : cb.case3(r, t);
  return identify(elem, n);
}

BracketTable build_table(int n, const Rational& alpha, int jobs) {
  if (n < 3) throw std::invalid_argument("build_table: n must be >= 3");
  BracketTable table;
  table.n = n;
  table.parity = parity_of(n);
  table.alpha = alpha;
  table.symbolic = true;
  table.vars.push_back(0);
  for (int i = 2; i <= n; ++i) table.vars.push_back(i);

  std::vector<std::pair<int, int>> pairs;
  for (std::size_t a = 0; a < table.vars.size(); ++a)
    for (std::size_t b = a + 1; b < table.vars.size(); ++b)
      pairs.push_back({table.vars[a], table.vars[b]});

  std::vector<MPoly> results(pairs.size());
  std::vector<std::optional<ClosureViolation>> failures(pairs.size());
  parallel_for(pairs.size(), jobs, [&](std::size_t k) {
    auto [i, j] = pairs[k];
    try {
      results[k] = pair_bracket(n, i, j, alpha).poly;
    } catch (const IndexOutOfRange& e) {
      failures[k] = ClosureViolation(i, j, e.index);
    }
  });
  for (auto& f : failures)
    if (f) throw *f;

  for (std::size_t k = 0; k < pairs.size(); ++k) {
    if (results[k].degree_in(VarClass::Param) > 1)
      throw std::logic_error("build_table: entry not linear in parameters");
    table.entries.emplace(pairs[k], std::move(results[k]));
  }
  return table;
}

std::vector<const BracketTable*> NineSplit::nine() const {
  std::vector<const BracketTable*> all{&base};
  for (auto& [label, t] : directions) all.push_back(&t);
  return all;
}

std::vector<VarId> legal_params(Parity parity) {
  std::vector<VarId> out;
  int amax = parity == Parity::Even ? 4 : 3;
  for (int k = 0; k <= amax; ++k) out.push_back(VarId::a(k));
  for (int k = 0; k <= 2; ++k) out.push_back(VarId::b(k));
  if (parity == Parity::Odd) out.push_back(VarId::c());
  return out;
}

NineSplit split_nine(const BracketTable& table) {
  if (!table.symbolic) throw std::invalid_argument("split_nine: table not symbolic");
  std::map<VarId, MPoly> zeros;
  for (VarId p : legal_params(table.parity)) zeros[p] = MPoly::zero();

  NineSplit split;
  auto skeleton = [&]() {
    BracketTable t;
    t.n = table.n;
    t.parity = table.parity;
    t.alpha = table.alpha;
    t.symbolic = false;
    t.vars = table.vars;
    return t;
  };

  split.base = skeleton();
  for (auto& [key, poly] : table.entries)
    split.base.entries.emplace(key, poly.substitute(zeros));

  for (VarId p : legal_params(table.parity)) {
    BracketTable dir = skeleton();
    for (auto& [key, poly] : table.entries) {
      MPoly d = poly.partial(p);
      if (d.degree_in(VarClass::Param) > 0)
        throw std::logic_error("split_nine: entry not linear in parameters");
      dir.entries.emplace(key, std::move(d));
    }
    split.directions.emplace_back(p.name(), std::move(dir));
  }
  return split;
}

BracketTable reconstruct(const NineSplit& split) {
  BracketTable out = split.base;
  out.symbolic = true;
  for (auto& [label, dir] : split.directions) {
    MPoly pvar = MPoly::variable(*VarId::parse(label));
    for (auto& [key, poly] : dir.entries) out.entries[key] += pvar * poly;
  }
  return out;
}

namespace {

int permutation_sign(const std::vector<int>& perm) {
  int inversions = 0;
  for (std::size_t a = 0; a < perm.size(); ++a)
    for (std::size_t b = a + 1; b < perm.size(); ++b)
      if (perm[a] > perm[b]) ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

}  // namespace

BracketTable nambu3(const MPoly& P) {
  if (!P.is_homogeneous_in(VarClass::X, 3) || P.is_zero())
    throw std::invalid_argument("nambu3: P must be a nonzero homogeneous cubic");
  BracketTable t;
  t.n = 3;
  t.parity = Parity::Odd;
  t.alpha = Rational(3);
  t.symbolic = false;
  t.vars = {1, 2, 3};
  for (int i = 1; i <= 3; ++i)
    for (int j = i + 1; j <= 3; ++j) {
      int k = 6 - i - j;
      int sign = permutation_sign({i, j, k});
      t.entries[{i, j}] = Rational(sign) * P.partial(VarId::x(k));
    }
  return t;
}

BracketTable jacobian4(const MPoly& P, const MPoly& R) {
  if (!P.is_homogeneous_in(VarClass::X, 2) || !R.is_homogeneous_in(VarClass::X, 2))
    throw std::invalid_argument("jacobian4: P, R must be homogeneous quadratics");
  BracketTable t;
  t.n = 4;
  t.parity = Parity::Even;
  t.alpha = Rational(4);
  t.symbolic = false;
  t.vars = {1, 2, 3, 4};
  for (int i = 1; i <= 4; ++i)
    for (int j = i + 1; j <= 4; ++j) {
      std::vector<int> rest;
      for (int m = 1; m <= 4; ++m)
        if (m != i && m != j) rest.push_back(m);
      int k = rest[0], l = rest[1];
      if (permutation_sign({i, j, k, l}) < 0) std::swap(k, l);
      t.entries[{i, j}] = P.partial(VarId::x(k)) * R.partial(VarId::x(l)) -
                          P.partial(VarId::x(l)) * R.partial(VarId::x(k));
    }
  return t;
}

BracketTable instantiate(const BracketTable& table, const std::map<VarId, Rational>& values) {
  auto legal = legal_params(table.parity);
  std::map<VarId, MPoly> subst;
  for (auto& [v, val] : values) {
    if (std::find(legal.begin(), legal.end(), v) == legal.end())
      throw std::invalid_argument("instantiate: " + v.name() +
                                  " is not a parameter of this parity");
    subst[v] = MPoly::constant(val);
  }
  for (VarId p : legal)
    if (!subst.count(p)) subst[p] = MPoly::zero();

  BracketTable out = table;
  out.symbolic = false;
  for (auto& [key, poly] : out.entries) poly = poly.substitute(subst);
  return out;
}

BracketTable table_lincomb(const Rational& c1, const BracketTable& t1,
                           const Rational& c2, const BracketTable& t2) {
  if (t1.vars != t2.vars) throw std::invalid_argument("table_lincomb: variable mismatch");
  BracketTable out = t1;
  for (auto& [key, poly] : out.entries) {
    poly = c1 * poly + c2 * t2.entry(key.first, key.second);
  }
  return out;
}

}  // namespace epb
