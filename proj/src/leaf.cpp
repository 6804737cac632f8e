#include "epb/leaf.hpp"

#include <map>

#include "epb/casimir.hpp"
#include "epb/parallel.hpp"

namespace epb {

namespace {

VarId base_var(Parity parity, int i) {
  return parity == Parity::Even ? VarId::f(i) : VarId::u(i);
}

struct LeafRing {
  Parity parity;
  std::vector<MPoly> P, Q, dP, dQ;  // in the base variable's argument

  explicit LeafRing(Parity par) : parity(par) {
    if (parity == Parity::Even) {
      P = curve_P(Parity::Even);
      Q = curve_Q();
    } else {
      MPoly minus_c = -MPoly::variable(VarId::c());
      P = poly_shift(curve_P(Parity::Odd), minus_c);  // P_od(u - c) in u
      Q = poly_shift(curve_Q(), minus_c);             // Q(u - c) in u
    }
    dP = poly_derivative(P);
    dQ = poly_derivative(Q);
  }

  // D on index i: D(f) = 2g - Q(f) / D(u) = 2ug - Q(u-c);
  // D(g) = P' + Q' g (- g^2 when odd).
  MPoly d_base(int i) const {
    MPoly g = MPoly::variable(VarId::g(i));
    MPoly two_g = parity == Parity::Even
                      ? Rational(2) * g
                      : Rational(2) * MPoly::variable(base_var(parity, i)) * g;
    return two_g - poly_at_var(Q, base_var(parity, i));
  }
  MPoly d_g(int i) const {
    MPoly g = MPoly::variable(VarId::g(i));
    MPoly out = poly_at_var(dP, base_var(parity, i)) +
                poly_at_var(dQ, base_var(parity, i)) * g;
    if (parity == Parity::Odd) out -= g * g;
    return out;
  }
  MPoly derive(int i, const MPoly& h) const {
    return h.partial(base_var(parity, i)) * d_base(i) +
           h.partial(VarId::g(i)) * d_g(i);
  }
};

}  // namespace

MPoly leaf_reduce(Parity parity, const MPoly& poly) {
  LeafRing ring(parity);
  MPoly work = poly;
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<MPoly::Term> kept;
    MPoly rewritten;
    for (auto& [mono, coeff] : work.terms()) {
      int idx = 0;
      for (auto& [v, e] : mono.factors()) {
        if (v.cls != VarClass::G || e < 2) continue;
        if (parity == Parity::Odd &&
            mono.exponent(VarId::u(v.index)) == 0) continue;  // pure g-power
        idx = v.index;
        break;
      }
      if (idx == 0) {
        kept.push_back({mono, coeff});
        continue;
      }
      VarId gi = VarId::g(idx), bi = base_var(parity, idx);
      Monomial rest = mono.with_exponent(gi, mono.exponent(gi) - 2);
      if (parity == Parity::Odd)
        rest = rest.with_exponent(bi, rest.exponent(bi) - 1);
      MPoly repl = poly_at_var(ring.P, bi) +
                   poly_at_var(ring.Q, bi) * MPoly::variable(gi);
      rewritten += MPoly::term(rest, coeff) * repl;
      changed = true;
    }
    if (changed) work = MPoly::from_terms(std::move(kept)) + rewritten;
  }
  return work;
}

MPoly phi_image(Parity parity, int p, const MPoly& F) {
  if (p < 1) throw std::invalid_argument("phi_image: p must be >= 1");
  std::map<VarId, MPoly> bindings;
  for (VarId v : F.variables_in(VarClass::X)) {
    int idx = v.index;
    bool even_index = (idx % 2 == 0);
    int j = even_index ? idx / 2 : (idx - 3) / 2;
    if (j < 0) throw std::invalid_argument("phi_image: negative generator power");
    MPoly sum;
    for (int i = 1; i <= p; ++i) {
      MPoly base = MPoly::variable(base_var(parity, i));
      if (parity == Parity::Odd) base -= MPoly::variable(VarId::c());  // f_i = u_i - c
      MPoly h = base.pow(static_cast<unsigned>(j));
      if (!even_index) h *= MPoly::variable(VarId::g(i));
      sum += h * MPoly::variable(VarId::e(i));
    }
    bindings[v] = sum;
  }
  return leaf_reduce(parity, F.substitute(bindings));
}

bool verify_kernel(int n) {
  if (n < 3) throw std::invalid_argument("verify_kernel: n must be >= 3");
  Parity parity = parity_of(n);
  int p = parity == Parity::Even ? n / 2 - 1 : (n - 1) / 2;
  if (parity == Parity::Even) {
    auto [c0, c1] = casimir_even(n);
    return phi_image(parity, p, c0).is_zero() && phi_image(parity, p, c1).is_zero();
  }
  return phi_image(parity, p, casimir_odd(n)).is_zero();
}

namespace {

// Fraction num / (f1 - f2)^dpow; only the p = 2 cross terms carry a
// denominator.
struct LeafFrac {
  MPoly num;
  int dpow = 0;
};

MPoly denom_atom(Parity parity) {
  return MPoly::variable(base_var(parity, 1)) - MPoly::variable(base_var(parity, 2));
}

LeafFrac add(Parity parity, const LeafFrac& a, const LeafFrac& b) {
  if (a.dpow == b.dpow) return {a.num + b.num, a.dpow};
  const LeafFrac& lo = a.dpow < b.dpow ? a : b;
  const LeafFrac& hi = a.dpow < b.dpow ? b : a;
  return {lo.num * denom_atom(parity).pow(static_cast<unsigned>(hi.dpow - lo.dpow)) + hi.num,
          hi.dpow};
}

// {h1 e_i, h2 e_j} per the leaf-algebra rules, as a fraction over (f1 - f2)^dpow.
LeafFrac leaf_bracket_component(const LeafRing& ring, int n, const MPoly& h1, int i,
                                const MPoly& h2, int j) {
  Parity parity = ring.parity;
  MPoly ee = MPoly::variable(VarId::e(i)) * MPoly::variable(VarId::e(j));
  if (i == j) {
    // (n-2)/2 (D_i(h1) h2 - h1 D_i(h2)) e_i^2
    MPoly num = Rational(n - 2, 2) * (ring.derive(i, h1) * h2 - h1 * ring.derive(i, h2)) * ee;
    return {num, 0};
  }
  // Lambda_{12} numerator over the canonical atom (f1 - f2); Lambda_{21} is
  // its negative.
  MPoly g1 = MPoly::variable(VarId::g(1)), g2 = MPoly::variable(VarId::g(2));
  MPoly lambda_num;
  if (parity == Parity::Even) {
    lambda_num = Rational(n) * (g1 + g2 -
                                Rational(1, 2) * (poly_at_var(ring.Q, VarId::f(1)) +
                                                  poly_at_var(ring.Q, VarId::f(2))));
  } else {
    MPoly u1 = MPoly::variable(VarId::u(1)), u2 = MPoly::variable(VarId::u(2));
    MPoly sym = u1 * g1 + u2 * g2 -
                Rational(1, 2) * (poly_at_var(ring.Q, VarId::u(1)) +
                                  poly_at_var(ring.Q, VarId::u(2)));
    MPoly extra = Rational(1, 2) * MPoly::variable(VarId::b(2)) * (u1 - u2) + g2 - g1;
    lambda_num = Rational(n) * sym + extra * (u1 - u2);
  }
  Rational sign(i < j ? 1 : -1);
  LeafFrac lambda_part{sign * (h1 * h2 * lambda_num * ee), 1};
  LeafFrac deriv_part{(h1 * ring.derive(j, h2) - h2 * ring.derive(i, h1)) * ee, 0};
  return add(parity, lambda_part, deriv_part);
}

// phi_p(x_index) split into per-leaf components h_i (so phi = sum h_i e_i).
std::vector<MPoly> phi_components(Parity parity, int p, int index) {
  bool even_index = (index % 2 == 0);
  int j = even_index ? index / 2 : (index - 3) / 2;
  std::vector<MPoly> out;
  for (int i = 1; i <= p; ++i) {
    MPoly base = MPoly::variable(base_var(parity, i));
    if (parity == Parity::Odd) base -= MPoly::variable(VarId::c());
    MPoly h = base.pow(static_cast<unsigned>(j));
    if (!even_index) h *= MPoly::variable(VarId::g(i));
    out.push_back(std::move(h));
  }
  return out;
}

}  // namespace

bool verify_leaf_homomorphism(int n, int p, int jobs) {
  if (!(2 * p < n) || p < 1 || p > 2 || n > 6)
    throw std::invalid_argument("verify_leaf_homomorphism: requires 2p < n, p <= 2, n <= 6");
  Parity parity = parity_of(n);
  LeafRing ring(parity);
  BracketTable table = build_table(n);

  std::vector<std::pair<int, int>> pairs;
  for (std::size_t a = 0; a < table.vars.size(); ++a)
    for (std::size_t b = a + 1; b < table.vars.size(); ++b)
      pairs.push_back({table.vars[a], table.vars[b]});

  std::vector<char> ok(pairs.size(), 1);
  parallel_for(pairs.size(), jobs, [&](std::size_t k) {
    auto [r, s] = pairs[k];
    auto hr = phi_components(parity, p, r);
    auto hs = phi_components(parity, p, s);
    LeafFrac rhs{MPoly::zero(), 0};
    for (int i = 1; i <= p; ++i)
      for (int j = 1; j <= p; ++j)
        rhs = add(parity, rhs, leaf_bracket_component(ring, n, hr[i - 1], i, hs[j - 1], j));
    MPoly lhs = phi_image(parity, p, table.entry(r, s));
    MPoly cleared = lhs * denom_atom(parity).pow(static_cast<unsigned>(rhs.dpow)) - rhs.num;
    if (!leaf_reduce(parity, cleared).is_zero()) ok[k] = 0;
  });
  for (char c : ok)
    if (!c) return false;
  return true;
}

}  // namespace epb
