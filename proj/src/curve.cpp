#include "epb/curve.hpp"

#include <algorithm>

namespace epb {

std::vector<MPoly> curve_P(Parity parity) {
  int deg = parity == Parity::Even ? 4 : 3;
  std::vector<MPoly> p;
  p.reserve(deg + 1);
  for (int k = 0; k <= deg; ++k) p.push_back(MPoly::variable(VarId::a(k)));
  return p;
}

std::vector<MPoly> curve_Q() {
  std::vector<MPoly> q;
  for (int k = 0; k <= 2; ++k) q.push_back(MPoly::variable(VarId::b(k)));
  return q;
}

std::vector<MPoly> poly_derivative(std::span<const MPoly> coeffs) {
  std::vector<MPoly> d;
  for (std::size_t k = 1; k < coeffs.size(); ++k)
    d.push_back(Rational(static_cast<long>(k)) * coeffs[k]);
  return d;
}

std::vector<MPoly> poly_shift(std::span<const MPoly> coeffs, const MPoly& delta) {
  // H(t + delta) = sum_k c_k (t + delta)^k, collected in powers of t.
  std::size_t n = coeffs.size();
  std::vector<MPoly> out(n);
  std::vector<MPoly> delta_pow{MPoly::constant(1)};
  for (std::size_t k = 1; k < n; ++k) delta_pow.push_back(delta_pow.back() * delta);
  for (std::size_t k = 0; k < n; ++k) {
    Rational binom(1);
    for (std::size_t j = 0; j <= k; ++j) {
      // coefficient of t^j in (t + delta)^k is C(k, j) delta^{k-j}
      out[j] += binom * coeffs[k] * delta_pow[k - j];
      binom *= Rational(static_cast<long>(k - j), static_cast<long>(j + 1));
    }
  }
  while (!out.empty() && out.back().is_zero()) out.pop_back();
  return out;
}

MPoly poly_at_var(std::span<const MPoly> coeffs, VarId v) {
  MPoly r;
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    r += coeffs[k] * MPoly::term(Monomial::var(v, static_cast<std::uint32_t>(k)), 1);
  return r;
}

MPoly diff_quotient(std::span<const MPoly> coeffs, VarId z1, VarId z2) {
  MPoly r;
  for (std::size_t m = 1; m < coeffs.size(); ++m) {
    // (z1^m - z2^m)/(z1 - z2) = sum_{a+b=m-1} z1^a z2^b
    for (std::size_t a = 0; a < m; ++a) {
      Monomial mono = Monomial::var(z1, static_cast<std::uint32_t>(a))
                          .times(Monomial::var(z2, static_cast<std::uint32_t>(m - 1 - a)));
      r += coeffs[m] * MPoly::term(mono, 1);
    }
  }
  return r;
}

MPoly cross_quotient(int r, int t, VarId z1, VarId z2) {
  if (r == t) return MPoly::zero();
  // z1^r z2^t - z1^t z2^r = -z1^r z2^r (z1^{t-r} - z2^{t-r}) for r < t.
  int lo = std::min(r, t), hi = std::max(r, t);
  Rational sign(r < t ? -1 : 1);
  MPoly out;
  for (int a = 0; a < hi - lo; ++a) {
    Monomial mono = Monomial::var(z1, static_cast<std::uint32_t>(lo + a))
                        .times(Monomial::var(z2, static_cast<std::uint32_t>(hi - 1 - a)));
    out += MPoly::term(mono, sign);
  }
  return out;
}

CurveElem CurveElem::term(Parity p, int base_exp, int g_exp, MPoly coeff, Mode m) {
  CurveElem e(p, m);
  if (g_exp < 0) throw std::logic_error("CurveElem: negative g exponent");
  e.insert_term(base_exp, g_exp, coeff);
  e.reduce();
  return e;
}

void CurveElem::insert_term(int base_exp, int g_exp, const MPoly& coeff) {
  if (coeff.is_zero()) return;
  auto key = std::make_pair(base_exp, g_exp);
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(key, coeff);
  } else {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void CurveElem::reduce() {
  // Even: g^2 = P_ev(f) + Q(f) g rewrites every g-power >= 2.
  // Odd:  u g^2 = P_od(u-c) + Q(u-c) g rewrites terms carrying a u-factor;
  //       Localized mode also rewrites base-degree <= 0 (u is invertible).
  static thread_local std::vector<MPoly> p_even, p_odd_u, q_even, q_odd_u;
  if (p_even.empty()) {
    p_even = curve_P(Parity::Even);
    q_even = curve_Q();
    MPoly minus_c = -MPoly::variable(VarId::c());
    auto p = curve_P(Parity::Odd);
    p_odd_u = poly_shift(p, minus_c);
    q_odd_u = poly_shift(q_even, minus_c);
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto it = terms_.begin(); it != terms_.end(); ++it) {
      auto [k, b] = it->first;
      if (b < 2) continue;
      bool reducible = parity_ == Parity::Even || mode_ == Mode::Localized || k >= 1;
      if (!reducible) continue;
      MPoly coeff = std::move(it->second);
      terms_.erase(it);
      if (parity_ == Parity::Even) {
        // f^k g^b -> f^k g^{b-2} (P_ev(f) + Q(f) g)
        for (std::size_t j = 0; j < p_even.size(); ++j)
          insert_term(k + static_cast<int>(j), b - 2, coeff * p_even[j]);
        for (std::size_t j = 0; j < q_even.size(); ++j)
          insert_term(k + static_cast<int>(j), b - 1, coeff * q_even[j]);
      } else {
        // u^k g^b -> u^{k-1} g^{b-2} (P_od(u-c) + Q(u-c) g)
        for (std::size_t j = 0; j < p_odd_u.size(); ++j)
          insert_term(k - 1 + static_cast<int>(j), b - 2, coeff * p_odd_u[j]);
        for (std::size_t j = 0; j < q_odd_u.size(); ++j)
          insert_term(k - 1 + static_cast<int>(j), b - 1, coeff * q_odd_u[j]);
      }
      changed = true;
      break;
    }
  }
}

CurveElem operator+(const CurveElem& a, const CurveElem& b) {
  if (a.parity_ != b.parity_ || a.mode_ != b.mode_)
    throw std::logic_error("CurveElem: parity/mode mismatch");
  CurveElem r = a;
  for (auto& [key, coeff] : b.terms_) r.insert_term(key.first, key.second, coeff);
  return r;
}

CurveElem operator-(const CurveElem& a, const CurveElem& b) { return a + (-b); }

CurveElem CurveElem::operator-() const {
  CurveElem r(parity_, mode_);
  for (auto& [key, coeff] : terms_) r.terms_.emplace(key, -coeff);
  return r;
}

CurveElem operator*(const CurveElem& a, const CurveElem& b) {
  if (a.parity_ != b.parity_ || a.mode_ != b.mode_)
    throw std::logic_error("CurveElem: parity/mode mismatch");
  CurveElem r(a.parity_, a.mode_);
  for (auto& [ka, ca] : a.terms_)
    for (auto& [kb, cb] : b.terms_)
      r.insert_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
  r.reduce();
  return r;
}

CurveElem operator*(const MPoly& c, const CurveElem& e) {
  CurveElem r(e.parity_, e.mode_);
  if (c.is_zero()) return r;
  for (auto& [key, coeff] : e.terms_) r.insert_term(key.first, key.second, c * coeff);
  return r;
}

CurveElem operator*(const Rational& c, const CurveElem& e) {
  return MPoly::constant(c) * e;
}

namespace {

// The derivation on the generators, fixed per parity (mode only affects
// reduction and neither element needs any).
std::pair<CurveElem, CurveElem> make_generator_derivatives(Parity parity,
                                                           CurveElem::Mode mode) {
  CurveElem d_base(parity, mode), d_g(parity, mode);
  if (parity == Parity::Even) {
    auto p = curve_P(Parity::Even);
    auto q = curve_Q();
    // D(f) = 2g - Q(f)
    d_base += CurveElem::term(parity, 0, 1, MPoly::constant(2), mode);
    for (std::size_t j = 0; j < q.size(); ++j)
      d_base += CurveElem::term(parity, static_cast<int>(j), 0, -q[j], mode);
    // D(g) = P_ev'(f) + Q'(f) g
    auto dp = poly_derivative(p);
    auto dq = poly_derivative(q);
    for (std::size_t j = 0; j < dp.size(); ++j)
      d_g += CurveElem::term(parity, static_cast<int>(j), 0, dp[j], mode);
    for (std::size_t j = 0; j < dq.size(); ++j)
      d_g += CurveElem::term(parity, static_cast<int>(j), 1, dq[j], mode);
  } else {
    MPoly minus_c = -MPoly::variable(VarId::c());
    auto p = poly_shift(curve_P(Parity::Odd), minus_c);  // P_od(u-c) in u
    auto q = poly_shift(curve_Q(), minus_c);             // Q(u-c) in u
    // D(u) = D(f) = 2(f+c)g - Q(f) = 2 u g - Q(u-c)
    d_base += CurveElem::term(parity, 1, 1, MPoly::constant(2), mode);
    for (std::size_t j = 0; j < q.size(); ++j)
      d_base += CurveElem::term(parity, static_cast<int>(j), 0, -q[j], mode);
    // D(g) = P_od'(f) + Q'(f) g - g^2, with '(f) = d/du of the shifted form
    auto dp = poly_derivative(p);
    auto dq = poly_derivative(q);
    for (std::size_t j = 0; j < dp.size(); ++j)
      d_g += CurveElem::term(parity, static_cast<int>(j), 0, dp[j], mode);
    for (std::size_t j = 0; j < dq.size(); ++j)
      d_g += CurveElem::term(parity, static_cast<int>(j), 1, dq[j], mode);
    CurveElem g2(parity, mode);
    if (mode == CurveElem::Mode::Localized) {
      // -g^2 reduces through the relation in the localized form
      g2 = CurveElem::term(parity, 0, 1, MPoly::constant(1), mode);
      g2 = MPoly::constant(-1) * (g2 * g2);
    } else {
      g2 = CurveElem::term(parity, 0, 2, MPoly::constant(-1), mode);
    }
    d_g += g2;
  }
  return {std::move(d_base), std::move(d_g)};
}

const std::pair<CurveElem, CurveElem>& generator_derivatives(Parity parity,
                                                             CurveElem::Mode mode) {
  static const std::pair<CurveElem, CurveElem> even_alg =
      make_generator_derivatives(Parity::Even, CurveElem::Mode::Algebra);
  static const std::pair<CurveElem, CurveElem> even_loc =
      make_generator_derivatives(Parity::Even, CurveElem::Mode::Localized);
  static const std::pair<CurveElem, CurveElem> odd_alg =
      make_generator_derivatives(Parity::Odd, CurveElem::Mode::Algebra);
  static const std::pair<CurveElem, CurveElem> odd_loc =
      make_generator_derivatives(Parity::Odd, CurveElem::Mode::Localized);
  if (parity == Parity::Even)
    return mode == CurveElem::Mode::Algebra ? even_alg : even_loc;
  return mode == CurveElem::Mode::Algebra ? odd_alg : odd_loc;
}

}  // namespace

CurveElem CurveElem::derived() const {
  // D(base^k g^b) = k base^{k-1} g^b D(base) + b base^k g^{b-1} D(g).
  const auto& [d_base, d_g] = generator_derivatives(parity_, mode_);

  CurveElem out(parity_, mode_);
  for (auto& [key, coeff] : terms_) {
    auto [k, b] = key;
    if (k != 0) {
      CurveElem shifted(parity_, mode_);
      shifted.insert_term(k - 1, b, Rational(k) * coeff);
      out += shifted * d_base;
    }
    if (b != 0) {
      CurveElem shifted(parity_, mode_);
      shifted.insert_term(k, b - 1, Rational(b) * coeff);
      out += shifted * d_g;
    }
  }
  out.reduce();
  return out;
}

std::string CurveElem::str() const {
  if (terms_.empty()) return "0";
  std::string base = parity_ == Parity::Even ? "f" : "u";
  std::string s;
  for (auto& [key, coeff] : terms_) {
    if (!s.empty()) s += " + ";
    auto [k, b] = key;
    s += "(" + coeff.str() + ")";
    if (k != 0) s += "*" + base + "^" + std::to_string(k);
    if (b == 1) s += "*g";
    else if (b > 1) s += "*g^" + std::to_string(b);
  }
  return s;
}

MPoly swap_12(const MPoly& p) {
  std::map<VarId, MPoly> swap;
  swap[VarId::f(1)] = MPoly::variable(VarId::f(2));
  swap[VarId::f(2)] = MPoly::variable(VarId::f(1));
  swap[VarId::g(1)] = MPoly::variable(VarId::g(2));
  swap[VarId::g(2)] = MPoly::variable(VarId::g(1));
  swap[VarId::u(1)] = MPoly::variable(VarId::u(2));
  swap[VarId::u(2)] = MPoly::variable(VarId::u(1));
  return p.substitute(swap);
}

BiElem::BiElem(Parity par, MPoly a_, MPoly b_, MPoly c_, MPoly d_)
    : parity(par), a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {
  if (swap_12(a) != a || swap_12(d) != d || swap_12(b) != c) throw AsymmetricInput();
}

namespace {

void check_x_index(int idx, int n) {
  if (idx == 0 || (idx >= 2 && idx <= n)) return;
  throw IndexOutOfRange(idx);
}

}  // namespace

QuadForm identify(const BiElem& elem, int n) {
  const VarId f1 = VarId::f(1), f2 = VarId::f(2);
  MPoly out;

  // A and D parts: iterate monomial pairs once (i >= j); symmetry guarantees
  // the mirror term. Diagonal picks up the 1/2 forced by (id) at i = j.
  auto symmetric_part = [&](const MPoly& comp, int index_shift) {
    for (auto& [mono, coeff] : comp.terms()) {
      int i = static_cast<int>(mono.exponent(f1));
      int j = static_cast<int>(mono.exponent(f2));
      if (i < j) continue;  // mirror of an (i > j) term
      int xi = 2 * i + index_shift, xj = 2 * j + index_shift;
      check_x_index(xi, n);
      check_x_index(xj, n);
      Monomial rest = mono.with_exponent(f1, 0).with_exponent(f2, 0);
      Monomial xm = rest.times(Monomial::var(VarId::x(xi)).times(Monomial::var(VarId::x(xj))));
      Rational c = (i == j) ? coeff * Rational(1, 2) : coeff;
      out += MPoly::term(xm, c);
    }
  };
  symmetric_part(elem.a, 0);
  symmetric_part(elem.d, 3);

  // B part (coefficient of g1): f1^j f2^i -> x_{2i} x_{2j+3}; the C part is
  // its mirror and is consumed implicitly.
  for (auto& [mono, coeff] : elem.b.terms()) {
    int j = static_cast<int>(mono.exponent(f1));
    int i = static_cast<int>(mono.exponent(f2));
    int xi = 2 * i, xj = 2 * j + 3;
    check_x_index(xi, n);
    check_x_index(xj, n);
    Monomial rest = mono.with_exponent(f1, 0).with_exponent(f2, 0);
    Monomial xm = rest.times(Monomial::var(VarId::x(xi)).times(Monomial::var(VarId::x(xj))));
    out += MPoly::term(xm, coeff);
  }

  return QuadForm{n, out};
}

}  // namespace epb
