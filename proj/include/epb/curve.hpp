#pragma once

#include <map>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "epb/mpoly.hpp"

namespace epb {

/// Even selects the relation g^2 = P_ev(f) + Q(f) g with deg P_ev <= 4;
/// Odd selects (f+c) g^2 = P_od(f) + Q(f) g with deg P_od <= 3 plus the
/// extra parameter c.
enum class Parity { Even, Odd };

inline Parity parity_of(int n) { return n % 2 == 0 ? Parity::Even : Parity::Odd; }

/// Coefficient lists (index = power of the argument) for the defining
/// polynomials, with symbolic parameter coefficients.
std::vector<MPoly> curve_P(Parity parity);  // a0..a4 (even) / a0..a3 (odd)
std::vector<MPoly> curve_Q();               // b0, b1, b2

std::vector<MPoly> poly_derivative(std::span<const MPoly> coeffs);
/// Coefficients of H(t + delta) as a polynomial in t.
std::vector<MPoly> poly_shift(std::span<const MPoly> coeffs, const MPoly& delta);
/// Sum c_k v^k.
MPoly poly_at_var(std::span<const MPoly> coeffs, VarId v);

/// (H(z1) - H(z2)) / (z1 - z2), computed by the closed form
/// sum z1^a z2^b over a + b = m - 1 per monomial; always a polynomial.
MPoly diff_quotient(std::span<const MPoly> coeffs, VarId z1, VarId z2);

/// (z1^r z2^t - z1^t z2^r) / (z1 - z2) in closed form.
MPoly cross_quotient(int r, int t, VarId z1, VarId z2);

/// Normal-form element of the curve algebra F: Laurent in the base variable
/// (f for even parity, u = f + c for odd) with g-degree <= 1, except that odd
/// parity keeps pure g-powers (base-degree 0) as basis elements in Algebra
/// mode. Localized mode treats u as invertible and reduces every g-power,
/// which is the Frac(F) arithmetic the Casimir construction uses.
class CurveElem {
public:
  enum class Mode { Algebra, Localized };

  explicit CurveElem(Parity parity, Mode mode = Mode::Algebra)
      : parity_(parity), mode_(mode) {}

  static CurveElem zero(Parity p, Mode m = Mode::Algebra) { return CurveElem(p, m); }
  static CurveElem one(Parity p, Mode m = Mode::Algebra) {
    return term(p, 0, 0, MPoly::constant(1), m);
  }
  static CurveElem base_power(Parity p, int k, Mode m = Mode::Algebra) {
    return term(p, k, 0, MPoly::constant(1), m);
  }
  static CurveElem g(Parity p, Mode m = Mode::Algebra) {
    return term(p, 0, 1, MPoly::constant(1), m);
  }
  static CurveElem term(Parity p, int base_exp, int g_exp, MPoly coeff,
                        Mode m = Mode::Algebra);

  Parity parity() const { return parity_; }
  Mode mode() const { return mode_; }
  bool is_zero() const { return terms_.empty(); }
  /// Map (base_exp, g_exp) -> parameter-polynomial coefficient.
  const std::map<std::pair<int, int>, MPoly>& terms() const { return terms_; }

  friend CurveElem operator+(const CurveElem& a, const CurveElem& b);
  friend CurveElem operator-(const CurveElem& a, const CurveElem& b);
  friend CurveElem operator*(const CurveElem& a, const CurveElem& b);
  CurveElem operator-() const;
  friend CurveElem operator*(const MPoly& c, const CurveElem& e);
  friend CurveElem operator*(const Rational& c, const CurveElem& e);
  CurveElem& operator+=(const CurveElem& o) { *this = *this + o; return *this; }
  CurveElem& operator-=(const CurveElem& o) { *this = *this - o; return *this; }

  friend bool operator==(const CurveElem& a, const CurveElem& b) {
    return a.parity_ == b.parity_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const CurveElem& a, const CurveElem& b) { return !(a == b); }

  /// The derivation D extended by the Leibniz rule, in normal form.
  CurveElem derived() const;

  std::string str() const;

private:
  void insert_term(int base_exp, int g_exp, const MPoly& coeff);
  void reduce();

  Parity parity_;
  Mode mode_;
  std::map<std::pair<int, int>, MPoly> terms_;
};

class AsymmetricInput : public std::logic_error {
public:
  AsymmetricInput() : std::logic_error("BiElem: symmetry invariant violated") {}
};

class IndexOutOfRange : public std::runtime_error {
public:
  explicit IndexOutOfRange(int idx)
      : std::runtime_error("identify: x-index " + std::to_string(idx) +
                           " outside {0, 2..n}"),
        index(idx) {}
  int index;
};

/// Swap f1 <-> f2 (and g1 <-> g2, u1 <-> u2).
MPoly swap_12(const MPoly& p);

/// Symmetric bilinear element A + B g1 + C g2 + D g1 g2, with A, B, C, D
/// polynomials in f1, f2 and the parameters. Symmetry (A, D invariant under
/// the swap, C the swap of B) is checked eagerly on construction.
struct BiElem {
  Parity parity;
  MPoly a, b, c, d;

  BiElem(Parity par, MPoly a_, MPoly b_, MPoly c_, MPoly d_);
};

/// Homogeneous quadratic form in the x-variables {x0, x2..xn}.
struct QuadForm {
  int n;
  MPoly poly;
};

/// The identification of symmetric bilinear elements with quadratic forms:
/// f1^i f2^j + f1^j f2^i -> x_{2i} x_{2j} (diagonal halved), the g1-part
/// monomial f1^j f2^i -> x_{2i} x_{2j+3}, g1 g2 pairs -> x_{2i+3} x_{2j+3}.
/// Throws IndexOutOfRange when an index outside {0, 2..n} is produced.
QuadForm identify(const BiElem& b, int n);

}  // namespace epb
