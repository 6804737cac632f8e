#include "epb/json_io.hpp"

#include <algorithm>

namespace epb {

json rational_to_json(const Rational& r) {
  return json{{"num", r.num().get_str()}, {"den", r.den().get_str()}};
}

Rational rational_from_json(const json& j) {
  return Rational(BigInt(j.at("num").get<std::string>()),
                  BigInt(j.at("den").get<std::string>()));
}

json mpoly_to_json(const MPoly& p) {
  json out = json::array();
  for (auto& [m, c] : p.terms()) {
    json mono = json::object();
    for (auto& [v, e] : m.factors()) mono[v.name()] = e;
    out.push_back(json{{"coeff", rational_to_json(c)}, {"monomial", mono}});
  }
  return out;
}

MPoly mpoly_from_json(const json& j) {
  std::vector<MPoly::Term> terms;
  for (auto& t : j) {
    Rational c = rational_from_json(t.at("coeff"));
    std::vector<Monomial::Factor> factors;
    for (auto& [name, exp] : t.at("monomial").items()) {
      auto v = VarId::parse(name);
      if (!v) throw std::runtime_error("mpoly_from_json: bad variable " + name);
      factors.push_back({*v, exp.get<std::uint32_t>()});
    }
    std::sort(factors.begin(), factors.end(),
              [](auto& a, auto& b) { return a.first < b.first; });
    terms.push_back({Monomial::from_sorted(std::move(factors)), c});
  }
  return MPoly::from_terms(std::move(terms));
}

json table_to_json(const BracketTable& t) {
  json vars = json::array();
  for (int v : t.vars) vars.push_back(VarId::x(v).name());
  json entries = json::array();
  for (auto& [key, poly] : t.entries)
    entries.push_back(json{{"i", key.first}, {"j", key.second}, {"poly", mpoly_to_json(poly)}});
  return json{{"n", t.n},
              {"parity", t.parity == Parity::Even ? "even" : "odd"},
              {"alpha", rational_to_json(t.alpha)},
              {"variables", vars},
              {"entries", entries}};
}

BracketTable table_from_json(const json& j) {
  BracketTable t;
  t.n = j.at("n").get<int>();
  t.parity = j.at("parity").get<std::string>() == "even" ? Parity::Even : Parity::Odd;
  t.alpha = rational_from_json(j.at("alpha"));
  for (auto& name : j.at("variables")) {
    auto v = VarId::parse(name.get<std::string>());
    if (!v || v->cls != VarClass::X)
      throw std::runtime_error("table_from_json: bad variable name");
    t.vars.push_back(v->index);
  }
  bool symbolic = false;
  for (auto& e : j.at("entries")) {
    MPoly poly = mpoly_from_json(e.at("poly"));
    if (poly.degree_in(VarClass::Param) > 0) symbolic = true;
    t.entries.emplace(std::make_pair(e.at("i").get<int>(), e.at("j").get<int>()),
                      std::move(poly));
  }
  t.symbolic = symbolic;
  return t;
}

json compat_report_to_json(const CompatReport& r) {
  json basis = json::array();
  for (auto& b : r.basis) basis.push_back(table_to_json(b));
  return json{{"n", r.n},
              {"degree", r.degree},
              {"unknowns", r.unknowns},
              {"rank", r.rank},
              {"solution_dim", r.solution_dim},
              {"conclusive", r.conclusive},
              {"basis", basis}};
}

json golden_table_json(const BracketTable& t) {
  json j = table_to_json(t);
  j["schema_version"] = kGoldenSchemaVersion;
  return j;
}

std::map<VarId, Rational> params_from_json(const json& j, Parity parity) {
  auto legal = legal_params(parity);
  std::map<VarId, Rational> out;
  for (auto& [name, value] : j.items()) {
    auto v = VarId::parse(name);
    if (!v || std::find(legal.begin(), legal.end(), *v) == legal.end())
      throw std::runtime_error("params file: " + name +
                               " is not a parameter for this parity");
    out.emplace(*v, rational_from_json(value));
  }
  return out;
}

}  // namespace epb
