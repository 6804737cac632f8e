#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

#include "epb/casimir.hpp"
#include "epb/json_io.hpp"
#include "epb/leaf.hpp"
#include "epb/schouten.hpp"

using namespace epb;

namespace {

struct Options {
  int n = 0;
  int degree = -1;
  std::string alpha;
  std::string params_path;
  std::string output;
  std::string outdir = "data/golden";
  std::string format = "text";
  int jobs = 1;
  long long row_budget = -1;
};

std::ostream& out_stream(const Options& opt, std::ofstream& file) {
  if (opt.output.empty()) return std::cout;
  file.open(opt.output);
  if (!file) throw std::runtime_error("cannot open output file " + opt.output);
  return file;
}

Rational alpha_of(const Options& opt) {
  return opt.alpha.empty() ? Rational(opt.n) : Rational(opt.alpha);
}

std::optional<std::map<VarId, Rational>> load_params(const Options& opt, Parity parity) {
  if (opt.params_path.empty()) return std::nullopt;
  std::ifstream in(opt.params_path);
  if (!in) throw std::runtime_error("cannot open params file " + opt.params_path);
  json j;
  in >> j;
  return params_from_json(j, parity);
}

void print_table_text(std::ostream& os, const BracketTable& t) {
  os << "n = " << t.n << " (" << (t.parity == Parity::Even ? "even" : "odd")
     << "), alpha = " << t.alpha.str() << ", " << t.entries.size() << " entries\n";
  for (auto& [key, poly] : t.entries)
    os << "{x" << key.first << ",x" << key.second << "} = " << poly.str() << "\n";
}

int cmd_table(const Options& opt) {
  BracketTable t = build_table(opt.n, alpha_of(opt), opt.jobs);
  if (auto params = load_params(opt, t.parity)) t = instantiate(t, *params);
  std::ofstream file;
  std::ostream& os = out_stream(opt, file);
  if (opt.format == "json") os << table_to_json(t).dump(2) << "\n";
  else print_table_text(os, t);
  return 0;
}

int cmd_split(const Options& opt) {
  NineSplit split = split_nine(build_table(opt.n, Rational(opt.n), opt.jobs));
  std::ofstream file;
  std::ostream& os = out_stream(opt, file);
  if (opt.format == "json") {
    json dirs = json::array();
    for (auto& [label, dir] : split.directions)
      dirs.push_back(json{{"param", label}, {"table", table_to_json(dir)}});
    os << json{{"base", table_to_json(split.base)}, {"directions", dirs}}.dump(2) << "\n";
  } else {
    os << "base bracket:\n";
    print_table_text(os, split.base);
    for (auto& [label, dir] : split.directions) {
      os << "\ndirection " << label << ":\n";
      print_table_text(os, dir);
    }
  }
  return 0;
}

int report_trivector_failure(std::ostream& os, const Trivector& tv) {
  std::array<int, 3> triple{};
  const MPoly* witness = tv.first_nonzero(&triple);
  os << "FAIL: nonzero Jacobiator entry at (x" << triple[0] << ",x" << triple[1] << ",x"
     << triple[2] << "):\n  " << witness->str() << "\n";
  return 1;
}

int cmd_jacobi(const Options& opt) {
  BracketTable t = build_table(opt.n, Rational(opt.n), opt.jobs);
  bool symbolic = true;
  if (auto params = load_params(opt, t.parity)) {
    t = instantiate(t, *params);
    symbolic = false;
  }
  Trivector tv = mixed_jacobiator(t, t, opt.jobs);
  std::ofstream file;
  std::ostream& os = out_stream(opt, file);
  if (!tv.is_zero()) return report_trivector_failure(os, tv);
  if (opt.format == "json") {
    os << json{{"n", opt.n}, {"jacobi", true}, {"symbolic", symbolic}}.dump(2) << "\n";
  } else if (symbolic) {
    os << "Jacobi identity holds identically in " << legal_params(t.parity).size()
       << " parameters (n = " << opt.n << ")\n";
  } else {
    os << "Jacobi identity holds at the given parameter values (n = " << opt.n << ")\n";
  }
  return 0;
}

int cmd_compat(const Options& opt) {
  NineSplit split = split_nine(build_table(opt.n, Rational(opt.n), opt.jobs));
  auto nine = split.nine();
  std::ofstream file;
  std::ostream& os = out_stream(opt, file);
  int pairs = 0;
  for (std::size_t a = 0; a < nine.size(); ++a)
    for (std::size_t b = a + 1; b < nine.size(); ++b) {
      Trivector tv = mixed_jacobiator(*nine[a], *nine[b], opt.jobs);
      if (!tv.is_zero()) {
        os << "pair (" << a << "," << b << "): ";
        return report_trivector_failure(os, tv);
      }
      ++pairs;
    }
  if (opt.format == "json")
    os << json{{"n", opt.n}, {"pairs", pairs}, {"compatible", true}}.dump(2) << "\n";
  else
    os << "all " << pairs << " unordered pairs of the nine brackets are compatible (n = "
       << opt.n << ")\n";
  return 0;
}

int cmd_maximality(const Options& opt) {
  NineSplit split = split_nine(build_table(opt.n, Rational(opt.n), opt.jobs));
  SolveOptions sopt;
  sopt.jobs = opt.jobs;
  sopt.row_budget = opt.row_budget;
  CompatReport r = compatible_space_dim(split.nine(), opt.degree, sopt);
  std::ofstream file;
  std::ostream& os = out_stream(opt, file);
  if (opt.format == "json") {
    os << compat_report_to_json(r).dump(2) << "\n";
  } else {
    os << "n = " << r.n << ", degree = " << r.degree << ": unknowns = " << r.unknowns
       << ", rank = " << r.rank << ", solution_dim = " << r.solution_dim
       << (r.conclusive ? ""
                        : "  [INCONCLUSIVE: row budget hit, rank is for the truncated system]")
       << "\n";
  }
  return r.conclusive ? 0 : 1;
}

std::vector<MPoly> casimirs_of(int n) {
  if (n % 2 == 0) {
    auto [c0, c1] = casimir_even(n);
    return {c0, c1};
  }
  return {casimir_odd(n)};
}

int cmd_casimir(const Options& opt) {
  auto cs = casimirs_of(opt.n);
  std::ofstream file;
  std::ostream& os = out_stream(opt, file);
  if (opt.format == "json") {
    json arr = json::array();
    for (auto& c : cs) arr.push_back(mpoly_to_json(c));
    os << json{{"n", opt.n}, {"casimirs", arr}}.dump(2) << "\n";
  } else {
    for (std::size_t k = 0; k < cs.size(); ++k)
      os << "C" << k << " = " << cs[k].str() << "\n";
  }
  return 0;
}

int cmd_central(const Options& opt) {
  BracketTable t = build_table(opt.n, Rational(opt.n), opt.jobs);
  auto cs = casimirs_of(opt.n);
  if (auto params = load_params(opt, t.parity)) {
    // the Casimirs carry the same parameters as the table; instantiate both
    std::map<VarId, MPoly> subst;
    for (VarId v : legal_params(t.parity)) subst[v] = MPoly::zero();
    for (auto& [v, val] : *params) subst[v] = MPoly::constant(val);
    t = instantiate(t, *params);
    for (auto& c : cs) c = c.substitute(subst);
  }
  bool central = true;
  for (auto& c : cs)
    if (!verify_central(t, c, opt.jobs)) central = false;
  std::ofstream file;
  std::ostream& os = out_stream(opt, file);
  if (opt.format == "json") {
    json arr = json::array();
    for (auto& c : cs) arr.push_back(mpoly_to_json(c));
    os << json{{"n", opt.n}, {"casimirs", arr}, {"central", central}}.dump(2) << "\n";
  } else {
    os << (central ? "all Casimirs are central (checked identically in parameters)"
                   : "FAIL: a Casimir is not central")
       << " for n = " << opt.n << "\n";
  }
  return central ? 0 : 1;
}

int cmd_leaf(const Options& opt) {
  int p = opt.n % 2 == 0 ? opt.n / 2 - 1 : (opt.n - 1) / 2;
  bool kernel = verify_kernel(opt.n);
  std::optional<bool> homomorphism;
  if (p >= 1 && p <= 2 && opt.n <= 6) homomorphism = verify_leaf_homomorphism(opt.n, p);
  std::ofstream file;
  std::ostream& os = out_stream(opt, file);
  if (opt.format == "json") {
    json j{{"n", opt.n}, {"p", p}, {"kernel", kernel}};
    j["leaf_homomorphism"] = homomorphism ? json(*homomorphism) : json(nullptr);
    os << j.dump(2) << "\n";
  } else {
    os << "ker phi_" << p << " contains the Casimirs: " << (kernel ? "yes" : "NO") << "\n";
    if (homomorphism)
      os << "phi_" << p << " is a Poisson homomorphism: " << (*homomorphism ? "yes" : "NO")
         << "\n";
    else
      os << "phi_" << p << " homomorphism check skipped (needs p <= 2 and n <= 6)\n";
  }
  bool ok = kernel && (!homomorphism || *homomorphism);
  return ok ? 0 : 1;
}

int cmd_export_golden(const Options& opt) {
  for (int n : {4, 5, 6, 7}) {
    BracketTable t = build_table(n, Rational(n), opt.jobs);
    std::string path = opt.outdir + "/bracket_table_n" + std::to_string(n) + ".json";
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << golden_table_json(t).dump(2) << "\n";
    std::cout << "wrote " << path << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact construction and verification of the nine compatible quadratic "
               "Poisson brackets and their Casimirs"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub, bool needs_n) {
    if (needs_n) sub->add_option("--n", opt.n, "dimension (>= 3)")->required();
    sub->add_option("--jobs", opt.jobs, "worker threads (output is identical for any value)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--output", opt.output, "write the report to a file instead of stdout");
  };

  CLI::App* table = app.add_subcommand("table", "build the symbolic bracket table");
  add_common(table, true);
  table->add_option("--alpha", opt.alpha,
                    "general coefficient (default n; the generator span closes only for alpha = n)");
  table->add_option("--params", opt.params_path, "JSON file of rational parameter values");

  CLI::App* split = app.add_subcommand("split", "emit the nine compatible brackets");
  add_common(split, true);

  CLI::App* jacobi = app.add_subcommand("jacobi", "verify the Jacobi identity symbolically");
  add_common(jacobi, true);
  jacobi->add_option("--params", opt.params_path, "JSON file of rational parameter values");

  CLI::App* compat = app.add_subcommand("compat", "verify pairwise compatibility of the nine");
  add_common(compat, true);

  CLI::App* maximality = app.add_subcommand(
      "maximality", "dimension of brackets of a given degree compatible with all nine");
  add_common(maximality, true);
  maximality->add_option("--degree", opt.degree, "entry degree d in 0..4")
      ->required()
      ->check(CLI::Range(0, 4));
  maximality->add_option("--row-budget", opt.row_budget,
                         "abort (inconclusively) after this many constraint rows");

  CLI::App* casimir = app.add_subcommand("casimir", "construct the Casimir elements");
  add_common(casimir, true);

  CLI::App* central = app.add_subcommand("central", "verify the Casimirs are central");
  add_common(central, true);
  central->add_option("--params", opt.params_path, "JSON file of rational parameter values");

  CLI::App* leaf = app.add_subcommand(
      "leaf", "verify the symplectic-leaf kernel and bracket-homomorphism properties");
  add_common(leaf, true);

  CLI::App* golden = app.add_subcommand("export-golden", "write golden table files for n=4..7");
  add_common(golden, false);
  golden->add_option("--outdir", opt.outdir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (table->parsed()) return cmd_table(opt);
    if (split->parsed()) return cmd_split(opt);
    if (jacobi->parsed()) return cmd_jacobi(opt);
    if (compat->parsed()) return cmd_compat(opt);
    if (maximality->parsed()) return cmd_maximality(opt);
    if (casimir->parsed()) return cmd_casimir(opt);
    if (central->parsed()) return cmd_central(opt);
    if (leaf->parsed()) return cmd_leaf(opt);
    if (golden->parsed()) return cmd_export_golden(opt);
  } catch (const ClosureViolation& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
