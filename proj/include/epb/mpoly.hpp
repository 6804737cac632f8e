#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "epb/rational.hpp"

namespace epb {

/// Variable namespaces. Param holds the curve coefficients a0..a4, b0..b2, c;
/// X the generators x_i (index may be negative during Casimir expansion);
/// F/G/U the curve variables f_i, g_i, u_i = f_i + c; E the leaf variables e_i
/// (also reused as unknown-coefficient symbols by the maximality solver).
enum class VarClass : std::uint8_t { Param = 0, X = 1, F = 2, G = 3, U = 4, E = 5 };

struct VarId {
  VarClass cls;
  std::int32_t index;

  static VarId x(int i) { return {VarClass::X, i}; }
  static VarId a(int k) { return {VarClass::Param, k}; }       // a0..a4 -> 0..4
  static VarId b(int k) { return {VarClass::Param, 5 + k}; }   // b0..b2 -> 5..7
  static VarId c() { return {VarClass::Param, 8}; }
  static VarId f(int i) { return {VarClass::F, i}; }
  static VarId g(int i) { return {VarClass::G, i}; }
  static VarId u(int i) { return {VarClass::U, i}; }
  static VarId e(int i) { return {VarClass::E, i}; }

  /// Order-preserving packed key: class major, index minor.
  std::uint64_t key() const {
    return (static_cast<std::uint64_t>(cls) << 32) |
           (static_cast<std::uint32_t>(index) ^ 0x80000000u);
  }
  friend bool operator==(VarId a, VarId b) { return a.key() == b.key(); }
  friend bool operator!=(VarId a, VarId b) { return a.key() != b.key(); }
  friend bool operator<(VarId a, VarId b) { return a.key() < b.key(); }

  std::string name() const;
  static std::optional<VarId> parse(std::string_view s);
};

/// Monomial: sorted (variable, exponent) list with strictly positive exponents.
class Monomial {
public:
  using Factor = std::pair<VarId, std::uint32_t>;

  Monomial() = default;
  static Monomial one() { return Monomial(); }
  static Monomial var(VarId v, std::uint32_t e = 1) {
    Monomial m;
    if (e > 0) m.f_.push_back({v, e});
    return m;
  }
  /// Factors must be sorted by VarId with positive exponents.
  static Monomial from_sorted(std::vector<Factor> f) {
    Monomial m;
    m.f_ = std::move(f);
    return m;
  }

  bool is_one() const { return f_.empty(); }
  int degree() const {
    int d = 0;
    for (auto& [v, e] : f_) d += static_cast<int>(e);
    return d;
  }
  int degree_in(VarClass c) const {
    int d = 0;
    for (auto& [v, e] : f_)
      if (v.cls == c) d += static_cast<int>(e);
    return d;
  }
  std::uint32_t exponent(VarId v) const {
    for (auto& [w, e] : f_)
      if (w == v) return e;
    return 0;
  }

  Monomial times(const Monomial& o) const;
  /// Componentwise quotient; nullopt when not divisible.
  std::optional<Monomial> divided_by(const Monomial& o) const;
  /// Copy with the exponent of v replaced (0 removes the variable).
  Monomial with_exponent(VarId v, std::uint32_t e) const;
  /// The sub-monomial over one class / over everything but that class.
  Monomial part(VarClass c) const;
  Monomial part_excluding(VarClass c) const;

  /// Graded lexicographic, smaller VarId more significant: negative when a < b.
  static int compare(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.f_ == b.f_; }
  friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }
  friend bool operator<(const Monomial& a, const Monomial& b) { return compare(a, b) < 0; }

  std::size_t hash() const {
    std::size_t h = 1469598103934665603ull;
    for (auto& [v, e] : f_) {
      h = (h ^ v.key()) * 1099511628211ull;
      h = (h ^ e) * 1099511628211ull;
    }
    return h;
  }

  const std::vector<Factor>& factors() const { return f_; }
  std::string str() const;  // "x0*x2^2"; "1" when empty

private:
  std::vector<Factor> f_;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

class NotDivisible : public std::runtime_error {
public:
  NotDivisible() : std::runtime_error("MPoly: exact division failed") {}
};

/// Sparse multivariate polynomial over Rational. Terms are kept in ascending
/// graded-lex order with no zero coefficients; the zero polynomial is empty.
class MPoly {
public:
  using Term = std::pair<Monomial, Rational>;

  MPoly() = default;
  static MPoly zero() { return MPoly(); }
  static MPoly constant(Rational c);
  static MPoly variable(VarId v) { return term(Monomial::var(v), 1); }
  static MPoly term(Monomial m, Rational c);
  /// Normalizes an arbitrary term list (sorts, merges, drops zeros).
  static MPoly from_terms(std::vector<Term> terms);

  bool is_zero() const { return t_.empty(); }
  std::size_t term_count() const { return t_.size(); }
  std::span<const Term> terms() const { return t_; }

  friend MPoly operator+(const MPoly& a, const MPoly& b);
  friend MPoly operator-(const MPoly& a, const MPoly& b);
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  MPoly operator-() const;
  MPoly& operator+=(const MPoly& o) { *this = *this + o; return *this; }
  MPoly& operator-=(const MPoly& o) { *this = *this - o; return *this; }
  MPoly& operator*=(const MPoly& o) { *this = *this * o; return *this; }
  friend MPoly operator*(const Rational& c, const MPoly& p);
  friend MPoly operator*(const MPoly& p, const Rational& c) { return c * p; }

  friend bool operator==(const MPoly& a, const MPoly& b) { return a.t_ == b.t_; }
  friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }

  MPoly pow(unsigned e) const;

  /// Formal partial derivative.
  MPoly partial(VarId v) const;

  /// Simultaneous substitution; variables not in the map stay themselves.
  MPoly substitute(const std::map<VarId, MPoly>& bindings) const;

  /// Exact quotient q with q*d == *this; throws NotDivisible otherwise.
  MPoly exact_div(const MPoly& d) const;

  int degree() const;
  int degree_in(VarClass c) const;
  std::uint32_t degree_in_var(VarId v) const;
  bool is_homogeneous_in(VarClass c, int deg) const;

  Rational coeff(const Monomial& m) const;
  /// Coefficient of v^k as a polynomial in the remaining variables.
  MPoly coefficient_of(VarId v, std::uint32_t k) const;
  /// Groups terms by their class-c sub-monomial.
  std::map<Monomial, MPoly> split_by_class(VarClass c) const;
  /// All variables of one class that occur.
  std::vector<VarId> variables_in(VarClass c) const;

  /// Canonical text form: ascending terms joined by " + ", negative
  /// coefficients parenthesized, e.g. "(-2)*x0*x3 + 1/2*b1*x0*x2".
  std::string str() const;
  static MPoly parse(const std::string& s);

  std::size_t hash() const {
    std::size_t h = 0;
    for (auto& [m, c] : t_) h = h * 1000003 + m.hash() * 31 + c.hash();
    return h;
  }

private:
  std::vector<Term> t_;
};

}  // namespace epb
