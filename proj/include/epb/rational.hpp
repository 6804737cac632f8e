#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace epb {

using BigInt = mpz_class;

/// Exact rational scalar. Always in lowest terms with positive denominator;
/// zero is 0/1. Every coefficient in the engine is one of these.
class Rational {
public:
  Rational() : v_(0) {}
  Rational(int n) : v_(n) {}
  Rational(long n) : v_(static_cast<signed long>(n)) {}
  Rational(long long n) : v_(BigInt(std::to_string(n))) {}
  Rational(long n, long d) : Rational(BigInt(n), BigInt(d)) {}
  Rational(const BigInt& n) : v_(n) {}
  Rational(const BigInt& n, const BigInt& d) {
    if (sgn(d) == 0) throw std::domain_error("Rational: zero denominator");
    v_ = mpq_class(n, d);
    v_.canonicalize();
  }
  explicit Rational(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) {
      v_ = mpq_class(BigInt(s));
    } else {
      *this = Rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
    }
  }

  const BigInt& num() const { return v_.get_num(); }
  const BigInt& den() const { return v_.get_den(); }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }
  int sign() const { return sgn(v_); }
  bool is_integer() const { return v_.get_den() == 1; }

  Rational operator-() const { return Rational(mpq_class(-v_)); }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  /// "n" when the denominator is 1, else "n/d".
  std::string str() const {
    if (is_integer()) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
  }

  Rational abs() const { return sign() < 0 ? -*this : *this; }

  static Rational pow(const Rational& base, long e) {
    if (e < 0) {
      if (base.is_zero()) throw std::domain_error("Rational: 0^negative");
      return pow(Rational(base.den(), base.num()), -e);
    }
    BigInt n, d;
    mpz_pow_ui(n.get_mpz_t(), base.num().get_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(d.get_mpz_t(), base.den().get_mpz_t(), static_cast<unsigned long>(e));
    return Rational(n, d);
  }

  std::size_t hash() const {
    auto fold = [](const BigInt& z) {
      std::size_t h = static_cast<std::size_t>(mpz_sgn(z.get_mpz_t())) + 0x9e3779b9u;
      std::size_t n = mpz_size(z.get_mpz_t());
      for (std::size_t i = 0; i < n; ++i)
        h = h * 1099511628211ull ^ mpz_getlimbn(z.get_mpz_t(), i);
      return h;
    };
    return fold(num()) * 31 + fold(den());
  }

private:
  explicit Rational(mpq_class v) : v_(std::move(v)) {}
  mpq_class v_;
};

}  // namespace epb
