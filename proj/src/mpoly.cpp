#include "epb/mpoly.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <unordered_map>

namespace epb {

namespace {

const char* param_names[9] = {"a0", "a1", "a2", "a3", "a4", "b0", "b1", "b2", "c"};

std::string index_str(int i) {
  return i < 0 ? "m" + std::to_string(-i) : std::to_string(i);
}

}  // namespace

std::string VarId::name() const {
  switch (cls) {
    case VarClass::Param:
      if (index < 0 || index > 8) throw std::logic_error("VarId: bad parameter index");
      return param_names[index];
    case VarClass::X: return "x" + index_str(index);
    case VarClass::F: return "f" + index_str(index);
    case VarClass::G: return "g" + index_str(index);
    case VarClass::U: return "u" + index_str(index);
    case VarClass::E: return "e" + index_str(index);
  }
  throw std::logic_error("VarId: bad class");
}

std::optional<VarId> VarId::parse(std::string_view s) {
  if (s.empty()) return std::nullopt;
  if (s == "c") return VarId::c();
  for (int k = 0; k < 8; ++k)
    if (s == param_names[k]) return VarId{VarClass::Param, k};
  VarClass cls;
  switch (s[0]) {
    case 'x': cls = VarClass::X; break;
    case 'f': cls = VarClass::F; break;
    case 'g': cls = VarClass::G; break;
    case 'u': cls = VarClass::U; break;
    case 'e': cls = VarClass::E; break;
    default: return std::nullopt;
  }
  std::string_view rest = s.substr(1);
  bool neg = false;
  if (!rest.empty() && rest[0] == 'm') {
    neg = true;
    rest = rest.substr(1);
  }
  if (rest.empty()) return std::nullopt;
  int idx = 0;
  auto [p, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), idx);
  if (ec != std::errc() || p != rest.data() + rest.size()) return std::nullopt;
  return VarId{cls, neg ? -idx : idx};
}

Monomial Monomial::times(const Monomial& o) const {
  Monomial r;
  r.f_.reserve(f_.size() + o.f_.size());
  auto a = f_.begin(), ae = f_.end();
  auto b = o.f_.begin(), be = o.f_.end();
  while (a != ae && b != be) {
    if (a->first < b->first) r.f_.push_back(*a++);
    else if (b->first < a->first) r.f_.push_back(*b++);
    else {
      r.f_.push_back({a->first, a->second + b->second});
      ++a; ++b;
    }
  }
  r.f_.insert(r.f_.end(), a, ae);
  r.f_.insert(r.f_.end(), b, be);
  return r;
}

std::optional<Monomial> Monomial::divided_by(const Monomial& o) const {
  Monomial r;
  auto a = f_.begin(), ae = f_.end();
  auto b = o.f_.begin(), be = o.f_.end();
  while (b != be) {
    while (a != ae && a->first < b->first) r.f_.push_back(*a++);
    if (a == ae || b->first < a->first || a->second < b->second) return std::nullopt;
    if (a->second > b->second) r.f_.push_back({a->first, a->second - b->second});
    ++a; ++b;
  }
  r.f_.insert(r.f_.end(), a, ae);
  return r;
}

Monomial Monomial::with_exponent(VarId v, std::uint32_t e) const {
  Monomial r;
  bool placed = false;
  for (auto& fac : f_) {
    if (fac.first == v) {
      if (e > 0) r.f_.push_back({v, e});
      placed = true;
    } else {
      if (!placed && e > 0 && v < fac.first) {
        r.f_.push_back({v, e});
        placed = true;
      }
      r.f_.push_back(fac);
    }
  }
  if (!placed && e > 0) r.f_.push_back({v, e});
  return r;
}

Monomial Monomial::part(VarClass c) const {
  Monomial r;
  for (auto& fac : f_)
    if (fac.first.cls == c) r.f_.push_back(fac);
  return r;
}

Monomial Monomial::part_excluding(VarClass c) const {
  Monomial r;
  for (auto& fac : f_)
    if (fac.first.cls != c) r.f_.push_back(fac);
  return r;
}

int Monomial::compare(const Monomial& a, const Monomial& b) {
  int da = a.degree(), db = b.degree();
  if (da != db) return da < db ? -1 : 1;
  auto i = a.f_.begin(), ie = a.f_.end();
  auto j = b.f_.begin(), je = b.f_.end();
  // Lex with the smallest VarId most significant: at the first variable where
  // exponents differ, the larger exponent wins.
  while (i != ie && j != je) {
    if (i->first < j->first) return 1;   // a has the earlier variable
    if (j->first < i->first) return -1;
    if (i->second != j->second) return i->second > j->second ? 1 : -1;
    ++i; ++j;
  }
  if (i != ie) return 1;
  if (j != je) return -1;
  return 0;
}

std::string Monomial::str() const {
  if (f_.empty()) return "1";
  std::string s;
  for (auto& [v, e] : f_) {
    if (!s.empty()) s += "*";
    s += v.name();
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s;
}

MPoly MPoly::constant(Rational c) {
  MPoly p;
  if (!c.is_zero()) p.t_.push_back({Monomial::one(), std::move(c)});
  return p;
}

MPoly MPoly::term(Monomial m, Rational c) {
  MPoly p;
  if (!c.is_zero()) p.t_.push_back({std::move(m), std::move(c)});
  return p;
}

MPoly MPoly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
    return Monomial::compare(a.first, b.first) < 0;
  });
  MPoly p;
  p.t_.reserve(terms.size());
  for (auto& t : terms) {
    if (!p.t_.empty() && p.t_.back().first == t.first) {
      p.t_.back().second += t.second;
      if (p.t_.back().second.is_zero()) p.t_.pop_back();
    } else if (!t.second.is_zero()) {
      p.t_.push_back(std::move(t));
    }
  }
  return p;
}

MPoly operator+(const MPoly& a, const MPoly& b) {
  MPoly r;
  r.t_.reserve(a.t_.size() + b.t_.size());
  auto i = a.t_.begin(), ie = a.t_.end();
  auto j = b.t_.begin(), je = b.t_.end();
  while (i != ie && j != je) {
    int c = Monomial::compare(i->first, j->first);
    if (c < 0) r.t_.push_back(*i++);
    else if (c > 0) r.t_.push_back(*j++);
    else {
      Rational s = i->second + j->second;
      if (!s.is_zero()) r.t_.push_back({i->first, std::move(s)});
      ++i; ++j;
    }
  }
  r.t_.insert(r.t_.end(), i, ie);
  r.t_.insert(r.t_.end(), j, je);
  return r;
}

MPoly operator-(const MPoly& a, const MPoly& b) {
  MPoly r;
  r.t_.reserve(a.t_.size() + b.t_.size());
  auto i = a.t_.begin(), ie = a.t_.end();
  auto j = b.t_.begin(), je = b.t_.end();
  while (i != ie && j != je) {
    int c = Monomial::compare(i->first, j->first);
    if (c < 0) r.t_.push_back(*i++);
    else if (c > 0) { r.t_.push_back({j->first, -j->second}); ++j; }
    else {
      Rational s = i->second - j->second;
      if (!s.is_zero()) r.t_.push_back({i->first, std::move(s)});
      ++i; ++j;
    }
  }
  r.t_.insert(r.t_.end(), i, ie);
  for (; j != je; ++j) r.t_.push_back({j->first, -j->second});
  return r;
}

MPoly MPoly::operator-() const {
  MPoly r;
  r.t_.reserve(t_.size());
  for (auto& [m, c] : t_) r.t_.push_back({m, -c});
  return r;
}

MPoly operator*(const Rational& c, const MPoly& p) {
  if (c.is_zero()) return MPoly();
  MPoly r;
  r.t_.reserve(p.t_.size());
  for (auto& [m, k] : p.t_) r.t_.push_back({m, c * k});
  return r;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
  if (a.is_zero() || b.is_zero()) return MPoly();
  if (a.t_.size() == 1 && a.t_[0].first.is_one()) return a.t_[0].second * b;
  if (b.t_.size() == 1 && b.t_[0].first.is_one()) return b.t_[0].second * a;
  if (a.t_.size() * b.t_.size() <= 32) {
    // small products: a sort-based merge beats the hash map
    std::vector<MPoly::Term> terms;
    terms.reserve(a.t_.size() * b.t_.size());
    for (auto& [ma, ca] : a.t_)
      for (auto& [mb, cb] : b.t_) terms.push_back({ma.times(mb), ca * cb});
    return MPoly::from_terms(std::move(terms));
  }
  std::unordered_map<Monomial, Rational, MonomialHash> acc;
  acc.reserve(a.t_.size() * 2 + b.t_.size() * 2);
  for (auto& [ma, ca] : a.t_)
    for (auto& [mb, cb] : b.t_) {
      auto [it, fresh] = acc.try_emplace(ma.times(mb), Rational(0));
      if (fresh) it->second = ca * cb;
      else it->second += ca * cb;
    }
  std::vector<MPoly::Term> terms;
  terms.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (!c.is_zero()) terms.push_back({m, std::move(c)});
  return MPoly::from_terms(std::move(terms));
}

MPoly MPoly::pow(unsigned e) const {
  MPoly r = constant(1);
  MPoly base = *this;
  while (e > 0) {
    if (e & 1u) r = r * base;
    e >>= 1u;
    if (e > 0) base = base * base;
  }
  return r;
}

MPoly MPoly::partial(VarId v) const {
  std::vector<Term> terms;
  for (auto& [m, c] : t_) {
    std::uint32_t e = m.exponent(v);
    if (e == 0) continue;
    terms.push_back({m.with_exponent(v, e - 1), c * Rational(static_cast<long>(e))});
  }
  return from_terms(std::move(terms));
}

MPoly MPoly::substitute(const std::map<VarId, MPoly>& bindings) const {
  // Simultaneous substitution. Each monomial splits into the substituted
  // part (expanded once, memoized) and the untouched part; everything
  // accumulates into one hash map so the cost stays linear in the number of
  // produced terms.
  if (bindings.empty()) return *this;
  std::map<std::pair<std::uint64_t, std::uint32_t>, MPoly> powers;
  auto power_of = [&](VarId v, std::uint32_t e) -> const MPoly& {
    auto key = std::make_pair(v.key(), e);
    auto it = powers.find(key);
    if (it != powers.end()) return it->second;
    return powers.emplace(key, bindings.at(v).pow(e)).first->second;
  };
  std::unordered_map<Monomial, MPoly, MonomialHash> expanded;
  std::unordered_map<Monomial, Rational, MonomialHash> acc;
  for (auto& [m, c] : t_) {
    std::vector<Monomial::Factor> touched, untouched;
    for (auto& f : m.factors())
      (bindings.count(f.first) ? touched : untouched).push_back(f);
    Monomial affected = Monomial::from_sorted(std::move(touched));
    Monomial rest = Monomial::from_sorted(std::move(untouched));
    auto it = expanded.find(affected);
    if (it == expanded.end()) {
      MPoly prod = MPoly::constant(1);
      for (auto& [v, e] : affected.factors()) prod = prod * power_of(v, e);
      it = expanded.emplace(affected, std::move(prod)).first;
    }
    for (auto& [tm, tc] : it->second.terms()) {
      auto [slot, fresh] = acc.try_emplace(rest.times(tm), Rational(0));
      if (fresh) slot->second = c * tc;
      else slot->second += c * tc;
    }
  }
  std::vector<Term> terms;
  terms.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (!c.is_zero()) terms.push_back({m, std::move(c)});
  return from_terms(std::move(terms));
}

MPoly MPoly::exact_div(const MPoly& d) const {
  if (d.is_zero()) throw std::domain_error("MPoly: division by zero polynomial");
  MPoly rem = *this;
  std::vector<Term> q;
  const Monomial& lead_m = d.t_.back().first;
  const Rational& lead_c = d.t_.back().second;
  while (!rem.is_zero()) {
    auto& [rm, rc] = rem.t_.back();
    auto qm = rm.divided_by(lead_m);
    if (!qm) throw NotDivisible();
    MPoly t = MPoly::term(*qm, rc / lead_c);
    q.push_back(t.t_[0]);
    rem -= t * d;
  }
  return from_terms(std::move(q));
}

int MPoly::degree() const {
  int d = 0;
  for (auto& [m, c] : t_) d = std::max(d, m.degree());
  return d;
}

int MPoly::degree_in(VarClass c) const {
  int d = 0;
  for (auto& [m, k] : t_) d = std::max(d, m.degree_in(c));
  return d;
}

std::uint32_t MPoly::degree_in_var(VarId v) const {
  std::uint32_t d = 0;
  for (auto& [m, k] : t_) d = std::max(d, m.exponent(v));
  return d;
}

bool MPoly::is_homogeneous_in(VarClass c, int deg) const {
  for (auto& [m, k] : t_)
    if (m.degree_in(c) != deg) return false;
  return true;
}

Rational MPoly::coeff(const Monomial& m) const {
  auto it = std::lower_bound(t_.begin(), t_.end(), m, [](const Term& t, const Monomial& mm) {
    return Monomial::compare(t.first, mm) < 0;
  });
  if (it != t_.end() && it->first == m) return it->second;
  return Rational(0);
}

MPoly MPoly::coefficient_of(VarId v, std::uint32_t k) const {
  std::vector<Term> terms;
  for (auto& [m, c] : t_)
    if (m.exponent(v) == k) terms.push_back({m.with_exponent(v, 0), c});
  return from_terms(std::move(terms));
}

std::map<Monomial, MPoly> MPoly::split_by_class(VarClass c) const {
  std::map<Monomial, std::vector<Term>> groups;
  for (auto& [m, k] : t_) groups[m.part(c)].push_back({m.part_excluding(c), k});
  std::map<Monomial, MPoly> r;
  for (auto& [key, terms] : groups) r.emplace(key, from_terms(std::move(terms)));
  return r;
}

std::vector<VarId> MPoly::variables_in(VarClass c) const {
  std::vector<VarId> vars;
  for (auto& [m, k] : t_)
    for (auto& [v, e] : m.factors())
      if (v.cls == c) vars.push_back(v);
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end(),
                         [](VarId a, VarId b) { return a == b; }),
             vars.end());
  return vars;
}

std::string MPoly::str() const {
  if (t_.empty()) return "0";
  std::string s;
  for (auto& [m, c] : t_) {
    if (!s.empty()) s += " + ";
    std::string cs = c.str();
    if (c.sign() < 0) cs = "(" + cs + ")";
    if (m.is_one()) s += cs;
    else if (c.is_one()) s += m.str();
    else s += cs + "*" + m.str();
  }
  return s;
}

namespace {

// Parser for the canonical text form (plus unparenthesized signs).
struct PolyParser {
  std::string_view s;
  std::size_t i = 0;

  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eat(char c) {
    skip_ws();
    if (i < s.size() && s[i] == c) { ++i; return true; }
    return false;
  }
  [[noreturn]] void fail(const std::string& what) {
    throw std::runtime_error("MPoly::parse: " + what + " at offset " + std::to_string(i));
  }

  std::string number() {
    skip_ws();
    std::size_t start = i;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == start) fail("expected number");
    return std::string(s.substr(start, i - start));
  }

  Rational coefficient() {
    bool paren = eat('(');
    std::string n = number();
    std::string d = "1";
    if (eat('/')) d = number();
    if (paren && !eat(')')) fail("expected ')'");
    return Rational(BigInt(n), BigInt(d));
  }

  VarId variable() {
    skip_ws();
    std::size_t start = i;
    while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])))) ++i;
    auto v = VarId::parse(s.substr(start, i - start));
    if (!v) fail("expected variable");
    return *v;
  }

  MPoly::Term term() {
    skip_ws();
    Rational coeff(1);
    bool saw_coeff = false;
    if (i < s.size() && (s[i] == '(' || s[i] == '-' || std::isdigit(static_cast<unsigned char>(s[i])))) {
      coeff = coefficient();
      saw_coeff = true;
    }
    std::vector<Monomial::Factor> factors;
    bool expect_var = !saw_coeff;
    while (true) {
      if (saw_coeff || !factors.empty() || expect_var) {
        skip_ws();
        if (factors.empty() && saw_coeff) {
          if (!eat('*')) break;
        } else if (!factors.empty()) {
          if (!eat('*')) break;
        }
      }
      VarId v = variable();
      std::uint32_t e = 1;
      if (eat('^')) e = static_cast<std::uint32_t>(std::stoul(number()));
      factors.push_back({v, e});
      expect_var = false;
    }
    std::sort(factors.begin(), factors.end(),
              [](auto& a, auto& b) { return a.first < b.first; });
    std::vector<Monomial::Factor> merged;
    for (auto& f : factors) {
      if (!merged.empty() && merged.back().first == f.first) merged.back().second += f.second;
      else merged.push_back(f);
    }
    return {Monomial::from_sorted(std::move(merged)), coeff};
  }

  MPoly parse() {
    std::vector<MPoly::Term> terms;
    skip_ws();
    if (i >= s.size()) return MPoly::zero();
    terms.push_back(term());
    while (true) {
      skip_ws();
      if (i >= s.size()) break;
      if (!eat('+')) fail("expected '+'");
      terms.push_back(term());
    }
    return MPoly::from_terms(std::move(terms));
  }
};

}  // namespace

MPoly MPoly::parse(const std::string& text) {
  if (text == "0") return MPoly::zero();
  PolyParser p{text};
  return p.parse();
}

}  // namespace epb
