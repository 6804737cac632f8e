#include "epb/casimir.hpp"

#include <map>

#include "epb/parallel.hpp"

namespace epb {

CurveElem laurent_x(Parity parity, int index) {
  bool even_index = (index % 2 == 0);
  int base = even_index ? index / 2 : (index - 3) / 2;
  return CurveElem::term(parity, base, even_index ? 0 : 1, MPoly::constant(1),
                         CurveElem::Mode::Localized);
}

namespace {

MPoly as_x_combination(const CurveElem& e) {
  MPoly out;
  for (auto& [key, coeff] : e.terms()) {
    auto [k, b] = key;
    if (b > 1) throw std::logic_error("as_x_combination: unreduced g-power");
    out += coeff * MPoly::variable(VarId::x(b == 0 ? 2 * k : 2 * k + 3));
  }
  return out;
}

}  // namespace

MPoly frac_product_x(Parity parity, int i, int j) {
  return as_x_combination(laurent_x(parity, i) * laurent_x(parity, j));
}

namespace {

// Product of two generator-linear combinations, multiplying generators in
// Frac(F) and keeping parameter coefficients along.
MPoly combo_product(Parity parity, const MPoly& va, const MPoly& vb) {
  MPoly out;
  for (auto& [ma, ca] : va.terms())
    for (auto& [mb, cb] : vb.terms()) {
      Monomial xa = ma.part(VarClass::X), xb = mb.part(VarClass::X);
      if (xa.factors().size() != 1 || xb.factors().size() != 1 ||
          xa.factors()[0].second != 1 || xb.factors()[0].second != 1)
        throw std::logic_error("combo_product: entries must be generator-linear");
      MPoly params = MPoly::term(ma.part_excluding(VarClass::X), ca) *
                     MPoly::term(mb.part_excluding(VarClass::X), cb);
      out += params * frac_product_x(parity, xa.factors()[0].first.index,
                                     xb.factors()[0].first.index);
    }
  return out;
}

using Vec = std::vector<MPoly>;

std::vector<std::vector<MPoly>> gram(Parity parity, const Vec& v, const Vec& w) {
  if (v.size() != w.size()) throw std::logic_error("gram: vector length mismatch");
  std::vector<std::vector<MPoly>> m(v.size(), std::vector<MPoly>(w.size()));
  for (std::size_t a = 0; a < v.size(); ++a)
    for (std::size_t b = 0; b < w.size(); ++b) m[a][b] = combo_product(parity, v[a], w[b]);
  return m;
}

MPoly det_of(Parity parity, const Vec& v, const Vec& w) {
  return sym_det(gram(parity, v, w));
}

MPoly xgen(int index) { return MPoly::variable(VarId::x(index)); }

/// [first indices...], then the consecutive run lo..hi (empty when lo > hi).
Vec xrun(std::vector<int> head, int lo, int hi, std::vector<int> tail = {}) {
  Vec out;
  for (int i : head) out.push_back(xgen(i));
  for (int i = lo; i <= hi; ++i) out.push_back(xgen(i));
  for (int i : tail) out.push_back(xgen(i));
  return out;
}

void append(Vec& v, MPoly combo) { v.push_back(std::move(combo)); }

void check_range(const MPoly& p, int n, bool allow_m2) {
  for (auto& [m, c] : p.terms())
    for (auto& [var, e] : m.factors()) {
      if (var.cls != VarClass::X) continue;
      int idx = var.index;
      if (idx == 0 || (idx >= 2 && idx <= n)) continue;
      if (allow_m2 && idx == -2) continue;
      throw CancellationFailure(idx);
    }
}

}  // namespace

MPoly sym_det(const std::vector<std::vector<MPoly>>& m) {
  std::size_t s = m.size();
  if (s == 0) return MPoly::constant(1);
  for (auto& row : m)
    if (row.size() != s) throw std::logic_error("sym_det: not square");
  // Cofactor expansion memoized over column subsets: minors[mask] is the
  // determinant of the first popcount(mask) rows and the columns of mask.
  std::vector<MPoly> minors(std::size_t(1) << s);
  minors[0] = MPoly::constant(1);
  for (std::uint32_t mask = 1; mask < (1u << s); ++mask) {
    int k = __builtin_popcount(mask);
    MPoly det;
    int pos = 0;  // position of the column within the mask
    for (std::size_t c = 0; c < s; ++c) {
      if (!(mask & (1u << c))) continue;
      const MPoly& entry = m[k - 1][c];
      if (!entry.is_zero()) {
        MPoly term = entry * minors[mask & ~(1u << c)];
        det += ((k - 1 + pos) % 2 == 0) ? term : -term;
      }
      ++pos;
    }
    minors[mask] = std::move(det);
  }
  return minors[(1u << s) - 1];
}

std::pair<MPoly, MPoly> casimir_even(int n) {
  if (n < 4 || n % 2 != 0) throw std::invalid_argument("casimir_even: n must be even, >= 4");
  const Parity par = Parity::Even;
  const int m = n / 2;
  MPoly a0 = MPoly::variable(VarId::a(0)), a4 = MPoly::variable(VarId::a(4));
  MPoly b0 = MPoly::variable(VarId::b(0)), b2 = MPoly::variable(VarId::b(2));
  MPoly combo_hi = a4 * xgen(m + 2) + b2 * xgen(m + 1);   // a4 x_{m+2} + b2 x_{m+1}
  MPoly combo_lo = a0 * xgen(-2) + b0 * xgen(1);          // a0 x_{-2} + b0 x_1

  MPoly c0, c1;
  if (n == 4) {
    Vec x02 = xrun({0}, 2, 2);
    c0 = det_of(par, x02, x02);
    Vec w1 = xrun({}, 2, 2);
    append(w1, combo_hi);
    Vec v2;
    append(v2, combo_lo);
    v2.push_back(xgen(0));
    c1 = det_of(par, xrun({0, 1}, 1, 0), xrun({}, 2, 3)) -
         det_of(par, x02, w1) - det_of(par, v2, x02);
  } else if (m % 2 == 0) {
    Vec v0 = xrun({0}, 2, m);
    c0 = det_of(par, v0, v0);

    Vec vA = xrun({}, 0, m - 1);
    Vec wA = xrun({}, 2, m + 1);
    Vec vB = xrun({}, 0, m - 2, {m});
    Vec wB = xrun({}, 2, m);
    append(wB, combo_hi);
    Vec vC;
    append(vC, combo_lo);
    vC.push_back(xgen(0));
    for (int i = 2; i <= m - 1; ++i) vC.push_back(xgen(i));
    Vec wC = xrun({0, 2}, 4, m + 1);
    Vec vD;
    append(vD, combo_lo);
    vD.push_back(xgen(0));
    for (int i = 2; i <= m - 2; ++i) vD.push_back(xgen(i));
    vD.push_back(xgen(m));
    Vec wD = xrun({0, 2}, 4, m);
    append(wD, combo_hi);
    c1 = det_of(par, vA, wA) - det_of(par, vB, wB) - det_of(par, vC, wC) +
         det_of(par, vD, wD);
  } else {
    Vec v0 = xrun({0}, 2, m);
    Vec v1 = xrun({0}, 2, m - 1, {m + 1});
    Vec w1 = xrun({0}, 2, m - 1);
    append(w1, b2 * xgen(m) + a4 * xgen(m + 1));
    c0 = det_of(par, v0, v0) - det_of(par, v1, w1);

    Vec v2 = xrun({}, 2, m + 1);
    Vec w2 = xrun({}, 0, m - 1);
    Vec v3 = xrun({-2, 0}, 2, m - 1);
    Vec w3;
    append(w3, a0 * xgen(0) + b0 * xgen(3));
    w3.push_back(xgen(2));
    for (int i = 4; i <= m + 1; ++i) w3.push_back(xgen(i));
    c1 = det_of(par, v2, w2) - det_of(par, v3, w3);
  }

  check_range(c0, n, false);
  check_range(c1, n, false);
  if (!c0.is_homogeneous_in(VarClass::X, m) || !c1.is_homogeneous_in(VarClass::X, m))
    throw std::logic_error("casimir_even: result not homogeneous of degree n/2");
  return {c0, c1};
}

std::pair<MPoly, MPoly> casimir_odd_dets(int n) {
  if (n < 3 || n % 2 != 1) throw std::invalid_argument("casimir_odd: n must be odd, >= 3");
  const Parity par = Parity::Odd;
  const int m = (n + 1) / 2;
  MPoly a3 = MPoly::variable(VarId::a(3)), b2 = MPoly::variable(VarId::b(2));
  MPoly c = MPoly::variable(VarId::c());
  // Q(-c) = b0 - b1 c + b2 c^2, evaluated literally as a parameter polynomial.
  MPoly q_minus_c = MPoly::variable(VarId::b(0)) - MPoly::variable(VarId::b(1)) * c +
                    MPoly::variable(VarId::b(2)) * c * c;

  MPoly c0, c1;
  if (n == 3) {
    Vec y02 = {xgen(0), xgen(2)}, y03 = {xgen(0), xgen(3)}, ym20 = {xgen(-2), xgen(0)};
    c0 = det_of(par, y02, ym20);
    Vec w1 = {xgen(0), a3 * xgen(2) + b2 * xgen(3)};
    Vec v2 = {q_minus_c * xgen(0), xgen(3)};
    c1 = det_of(par, y03, y03) - det_of(par, y02, w1) + det_of(par, v2, ym20);
  } else if (m % 2 == 0) {
    int half_lo = (n - 1) / 2, half_mid = (n + 1) / 2, half_hi = (n + 3) / 2;
    MPoly combo = a3 * xgen(half_mid) + b2 * xgen(half_hi);

    Vec v0 = xrun({0, 2}, 4, half_hi);
    Vec w0 = xrun({-2, 0}, 2, half_lo);
    c0 = det_of(par, v0, w0);

    Vec vA = xrun({0}, 2, half_lo, {half_hi});
    Vec vB = xrun({0}, 2, half_mid);
    Vec wB = xrun({0}, 2, half_lo);
    append(wB, combo);
    Vec vC = {q_minus_c * xgen(0)};
    for (int i = 2; i <= half_lo; ++i) vC.push_back(xgen(i));
    vC.push_back(xgen(half_hi));
    Vec wC = xrun({-2, 0, 2}, 4, half_lo, {half_hi});
    Vec vD = {q_minus_c * xgen(0)};
    for (int i = 2; i <= half_mid; ++i) vD.push_back(xgen(i));
    Vec wD = xrun({-2, 0, 2}, 4, half_lo);
    append(wD, combo);
    c1 = det_of(par, vA, vA) - det_of(par, vB, wB) - det_of(par, vC, wC) +
         det_of(par, vD, wD);
  } else {
    int lo = (n - 3) / 2, mid = (n + 1) / 2, hi4 = (n + 3) / 2, hi = (n + 5) / 2;
    Vec v0 = xrun({0, 2}, 4, mid, {hi});
    Vec w0 = xrun({-2, 0}, 2, lo, {mid});
    Vec v1 = xrun({0, 2}, 4, hi4);
    Vec w1 = xrun({-2, 0}, 2, lo);
    append(w1, b2 * xgen(mid) + a3 * xgen((n - 1) / 2));
    c0 = det_of(par, v0, w0) - det_of(par, v1, w1);

    Vec v2 = xrun({0}, 2, mid);
    Vec v3 = xrun({-2, 0, 2}, 4, mid);
    Vec w3 = {q_minus_c * xgen(0)};
    for (int i = 2; i <= mid; ++i) w3.push_back(xgen(i));
    c1 = det_of(par, v2, v2) - det_of(par, v3, w3);
  }

  check_range(c0, n, true);
  check_range(c1, n, true);
  if (!c0.is_homogeneous_in(VarClass::X, m) || !c1.is_homogeneous_in(VarClass::X, m))
    throw std::logic_error("casimir_odd: determinant not homogeneous of degree (n+1)/2");
  return {c0, c1};
}

MPoly casimir_odd(int n) {
  auto [c0, c1] = casimir_odd_dets(n);
  const VarId ym2 = VarId::x(-2);
  if (c0.degree_in_var(ym2) > 1 || c1.degree_in_var(ym2) > 1) throw NotLinearInYm2();
  MPoly a0 = c0.coefficient_of(ym2, 0), b0 = c0.coefficient_of(ym2, 1);
  MPoly a1 = c1.coefficient_of(ym2, 0), b1 = c1.coefficient_of(ym2, 1);
  MPoly cy = a0 * b1 - a1 * b0;

  // y -> x: y_{2i} = (f+c)^i = sum C(i,j) c^{i-j} x_{2j}, same shape for
  // y_{2i+3}; only nonnegative powers remain after the split.
  std::map<VarId, MPoly> bindings;
  for (VarId v : cy.variables_in(VarClass::X)) {
    int idx = v.index;
    bool even_index = (idx % 2 == 0);
    int i = even_index ? idx / 2 : (idx - 3) / 2;
    if (i < 0) throw std::logic_error("casimir_odd: negative power after split");
    MPoly sum;
    Rational binom(1);  // C(i, j), walking j from i down: C(i,j-1) = C(i,j) * j/(i-j+1)
    for (int j = i; j >= 0; --j) {
      sum += binom * MPoly::variable(VarId::c()).pow(static_cast<unsigned>(i - j)) *
             MPoly::variable(VarId::x(even_index ? 2 * j : 2 * j + 3));
      binom *= Rational(j, i - j + 1);
    }
    bindings[v] = sum;
  }
  MPoly cx = cy.substitute(bindings);
  check_range(cx, n, false);
  if (!cx.is_homogeneous_in(VarClass::X, n))
    throw std::logic_error("casimir_odd: result not homogeneous of degree n");
  return cx;
}

MPoly poisson_extend(const BracketTable& table, const MPoly& F, const MPoly& G) {
  MPoly out;
  for (auto& [key, entry] : table.entries) {
    auto [i, j] = key;
    if (entry.is_zero()) continue;
    MPoly fi = F.partial(VarId::x(i)), gj = G.partial(VarId::x(j));
    MPoly fj = F.partial(VarId::x(j)), gi = G.partial(VarId::x(i));
    MPoly w = fi * gj - fj * gi;
    if (!w.is_zero()) out += w * entry;
  }
  return out;
}

bool verify_central(const BracketTable& table, const MPoly& C, int jobs) {
  std::vector<char> central(table.vars.size(), 1);
  parallel_for(table.vars.size(), jobs, [&](std::size_t k) {
    MPoly xi = MPoly::variable(VarId::x(table.vars[k]));
    if (!poisson_extend(table, C, xi).is_zero()) central[k] = 0;
  });
  for (char c : central)
    if (!c) return false;
  return true;
}

}  // namespace epb
