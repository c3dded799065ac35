// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include "expl/centroid.hpp"
#include "expl/cli.hpp"
#include "expl/dioph.hpp"
#include "expl/explain.hpp"
#include "expl/library.hpp"
#include "expl/numeral.hpp"
#include "expl/proof_io.hpp"
#include "support.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

using namespace explainer;
using testsupport::uniform;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = true;
  std::string detail;
};

void require(Outcome& o, bool cond, const std::string& what) {
  if (!cond) {
    if (o.pass) o.detail = "failed: " + what;
    o.pass = false;
  }
}

std::string run_cli(std::vector<std::string> args, int* code = nullptr) {
  args.insert(args.begin(), "explainer");
  std::ostringstream out, err;
  int c = cli::run(args, out, err);
  if (code) *code = c;
  return out.str();
}

const kernel::Registry& lib_registry() { return library::Library::builtin().registry(); }

kernel::CheckOptions lib_opts() {
  kernel::CheckOptions o;
  o.registry = &lib_registry();
  return o;
}

// ---- 1 ----------------------------------------------------------------------

Outcome figures() {
  Outcome o;
  auto t0 = Clock::now();
  using testsupport::read_text;
  using testsupport::source_path;
  require(o, run_cli({"trick", "--digit", "4"}) == read_text(source_path("tests/golden/fig4.txt")), "figure 4");
  require(o, run_cli({"multiply", "7678", "3706"}) == read_text(source_path("tests/golden/fig5.txt")), "figure 5");
  require(o, run_cli({"divide", "111111111", "9", "--base", "10"}) == read_text(source_path("tests/golden/fig6.txt")),
          "figure 6");
  require(o, run_cli({"trick", "--base", "20", "--digit", "4"}) == read_text(source_path("tests/golden/fig7.txt")),
          "figure 7");

  numeral::MultTrace m = numeral::long_multiply_trace(7678, 3706, 10);
  std::vector<std::string> rows;
  for (const auto& r : m.partial_rows) rows.push_back(r.row.str());
  require(o, rows == std::vector<std::string>{"46068", "00000", "53746", "23034"}, "multiplication rows");
  require(o, m.result.str() == "28454668", "multiplication result");
  numeral::DivTrace d = numeral::long_divide_trace(111111111, 9, 10);
  for (int i = 0; i < 8; ++i) require(o, d.steps[i].partial_remainder == i + 1, "partial remainders");
  require(o, d.steps[8].partial_remainder == 0, "last remainder");
  numeral::TrickTable v = numeral::trick_table(20, 4, 1);
  require(o, numeral::to_digits(v.trace.multiplier, 20).str() == "3g", "base-20 multiplier");
  require(o, v.trace.result.str() == std::string(19, '4'), "nineteen 4s");
  double s = seconds_since(t0);
  require(o, s < 1.0, "runtime");
  if (o.pass) o.detail = "4 goldens byte-identical in " + std::to_string(s) + " s";
  return o;
}

// ---- 2 ----------------------------------------------------------------------

Outcome identity_grid() {
  Outcome o;
  auto t0 = Clock::now();
  const lang::Formula& stmt = library::Library::builtin().get("repunit_general").statement;
  int instances = 0;
  for (int b = 2; b <= 36; ++b)
    for (int p = 1; p <= 4; ++p) {
      // forall b . 2 <= b => forall p . 1 <= p => lhs = rhs
      lang::Formula f = lang::substitute(stmt->f, stmt->var, lang::lit(b));
      f = f->g;
      f = lang::substitute(f->f, f->var, lang::lit(p))->g;
      bool ok = lang::eval_formula(f, {}) &&
                lang::eval_term(f->r, {}) == testsupport::repunit_general_rhs(b, p) &&
                lang::eval_term(f->l, {}) == testsupport::repunit_general_lhs(b, p);
      require(o, ok, "identity at b=" + std::to_string(b) + " p=" + std::to_string(p));
      ++instances;
    }
  for (int b = 2; b <= 36; ++b)
    for (int dgt = 1; dgt < b; ++dgt)
      for (int p = 1; p <= 4; ++p) {
        numeral::TrickTable t = numeral::trick_table(b, dgt, p);
        bool all_d = t.trace.result.size() == static_cast<std::size_t>((b - 1) * p);
        for (int x : t.trace.result.digits()) all_d = all_d && x == dgt;
        require(o, all_d, "trick at b=" + std::to_string(b) + " d=" + std::to_string(dgt));
        ++instances;
      }
  double s = seconds_since(t0);
  require(o, s < 5.0, "runtime");
  if (o.pass) o.detail = std::to_string(instances) + " instances true in " + std::to_string(s) + " s";
  return o;
}

// ---- 3 ----------------------------------------------------------------------

Outcome mutations() {
  Outcome o;
  const library::Library& lib = library::Library::builtin();
  std::mt19937_64 rng(20240);
  int caught = 0, total = 0;
  int by_kind[3] = {0, 0, 0};
  std::string escaped;
  for (const auto& e : lib.entries()) {
    require(o, kernel::check(e.proof, e.statement, lib_opts()).accepted, "lemma " + e.name + " accepted");
    for (int i = 0; i < 20; ++i) {
      testsupport::Mutation m = testsupport::mutate(e.proof, rng);
      ++total;
      ++by_kind[m.kind];
      bool rejected = !m.proof || !kernel::check(m.proof, e.statement, lib_opts()).accepted;
      if (rejected) {
        ++caught;
      } else {
        if (escaped.empty()) escaped = e.name + " " + m.what;
      }
    }
  }
  require(o, caught == total, "uncaught mutation " + escaped);
  o.detail = (o.pass ? "" : o.detail + "; ") + std::to_string(caught) + "/" + std::to_string(total) +
             " mutations caught (" + std::to_string(by_kind[0]) +
             " literal flips, " + std::to_string(by_kind[1]) + " rule renames, " + std::to_string(by_kind[2]) +
             " axiom renames), 5/5 lemmas accepted";
  return o;
}

// ---- 4 ----------------------------------------------------------------------

std::uint64_t enumeration_cases(const kernel::Proof& p) {
  if (p->kind == kernel::ProofKind::RangeEnum)
    return p->generated ? static_cast<std::uint64_t>(lang::eval_term(p->hi, {}) - lang::eval_term(p->lo, {}) + 1)
                        : p->kids.size();
  std::uint64_t n = 0;
  for (const auto& k : kernel::children(p)) n += enumeration_cases(k);
  return n;
}

Outcome dioph_contrast() {
  Outcome o;
  auto t0 = Clock::now();
  dioph::IntPoly p = dioph::IntPoly::parse("x^2 - 1800");
  lang::Formula s = dioph::statement(p);
  kernel::Proof en = dioph::prove_no_solution_enum(p);
  kernel::Proof iv = dioph::prove_no_solution_interval(p);
  require(o, enumeration_cases(en) == 3601, "3601 enumeration cases");
  require(o, enumeration_cases(iv) == 0, "no enumeration in the interval proof");
  require(o, kernel::check(en, s).accepted, "enum proof accepted");
  require(o, kernel::check(iv, s).accepted, "interval proof accepted");
  require(o, lang::alpha_equal(kernel::conclusion(en), kernel::conclusion(iv)), "same conclusion");
  explain::ProofCategory ce = explain::classify_proof(en, 12);
  explain::ProofCategory ci = explain::classify_proof(iv, 12);
  require(o, ce.category == explain::Category::CaseAnalytic && ce.k == 3601, "CaseAnalytic(3601)");
  require(o, ci.category == explain::Category::Explanatory, "interval Explanatory");
  explain::RunResult re = explain::run_explanation({explain::ConstantProof{en}, nullptr, {}}, s);
  explain::RunResult ri = explain::run_explanation({explain::ConstantProof{iv}, nullptr, {}}, s);
  require(o, explain::dominates(ri.report, re.report), "interval dominates");
  for (auto prover : {&dioph::prove_no_solution_enum, &dioph::prove_no_solution_interval}) {
    try {
      prover(dioph::IntPoly::parse("x^2 - 1764"));
      require(o, false, "root 42 found");
    } catch (const dioph::RootFound& r) {
      require(o, r.root() == 42, "root 42 found");
    }
  }
  double secs = seconds_since(t0);
  require(o, secs < 30.0, "runtime");
  if (o.pass) {
    std::ostringstream d;
    d << "enum 3601 cases (" << re.report.program_bytes << " B, " << re.report.run_steps << " steps) vs interval 0 ("
      << ri.report.program_bytes << " B, " << ri.report.run_steps << " steps, k=" << ci.k << "); RootFound(42) x2; "
      << secs << " s";
    o.detail = d.str();
  }
  return o;
}

// ---- 5 ----------------------------------------------------------------------

Outcome cut_semantics() {
  Outcome o;
  const kernel::Registry* reg = &lib_registry();
  explain::Config cfg;
  cfg.registry = reg;
  lang::Formula target = lang::parse_formula("12345679 * 36 = 444444444");
  kernel::Proof inst = kernel::forall_elim(library::Library::builtin().get("digit_scaling").proof, lang::lit(4));
  kernel::Proof specialized =
      explain::fit_to(inst, lang::parse_formula("12345679 * 9 * 4 = 111111111 * 4"), target);
  require(o, kernel::check(specialized, target, lib_opts()).accepted, "specialized proof accepted");
  std::vector<explain::Cut> cuts = explain::detect_cuts(specialized, reg);
  require(o, cuts.size() == 1, "exactly one cut");
  if (cuts.size() == 1) {
    const explain::Cut& c = cuts.front();
    require(o, lang::print(c.input) == "4", "input 4");
    explain::RunResult r = explain::run_explanation({explain::TemplateProgram{c.tmpl}, c.input, {}}, target, cfg);
    require(o, kernel::check(r.proof, target, lib_opts()).accepted, "run reproduces an accepted proof");
    kernel::Proof reduced = c.tmpl.substituted(c.input);
    lang::Formula inst = lang::substitute(c.tmpl.schema_statement, c.tmpl.param, c.input);
    require(o, kernel::check(reduced, inst, lib_opts()).accepted, "pi[4] accepted");
    require(o, explain::detect_cuts(reduced, reg).empty(), "pi[4] has no cut");
  }
  if (o.pass) o.detail = "1 cut (input 4); template run and pi[4] accepted; pi[4] has 0 cuts";
  return o;
}

// ---- 6 ----------------------------------------------------------------------

struct Property {
  std::string name;
  std::function<std::pair<int, int>()> run;  // (cases, failures)
};

std::pair<int, int> prop_round_trip() {
  std::mt19937_64 rng(61);
  int fails = 0;
  for (int i = 0; i < 1000; ++i) {
    lang::Formula f = testsupport::random_formula(rng, uniform(rng, 0, 6), {"x", "y"});
    std::string text = lang::print(f);
    lang::Formula g = lang::parse_formula(text);
    if (lang::print(g) != text || !lang::alpha_equal(f, g)) ++fails;
  }
  return {1000, fails};
}

std::pair<int, int> prop_traces() {
  std::mt19937_64 rng(62);
  int fails = 0;
  for (int i = 0; i < 1000; ++i) {
    Integer x = testsupport::random_natural(rng, 50), y = testsupport::random_natural(rng, 50);
    int b = uniform(rng, 2, 36);
    numeral::MultTrace m = numeral::long_multiply_trace(x, y, b);
    Integer sum = 0;
    for (const auto& r : m.partial_rows) sum += r.row.value() * testsupport::ipow(b, static_cast<unsigned>(r.shift));
    if (sum != x * y || m.result.value() != x * y) ++fails;
    Integer d = testsupport::random_natural(rng, 20);
    numeral::DivTrace t = numeral::long_divide_trace(x, d, b);
    if (d * t.quotient + t.remainder != x || t.remainder >= d) ++fails;
  }
  return {1000, fails};
}

std::pair<int, int> prop_rewrites() {
  std::mt19937_64 rng(63);
  int cases = 0, fails = 0;
  std::function<void(const kernel::Proof&)> walk = [&](const kernel::Proof& p) {
    for (const auto& s : p->steps) {
      kernel::RewriteResult rr = kernel::apply_rewrite(s, lib_registry());
      if (!rr.ok) {
        ++fails;
        continue;
      }
      std::set<std::string> vars = lang::free_vars(s.before);
      for (const auto& v : lang::free_vars(s.after)) vars.insert(v);
      for (const auto& f : rr.side_conditions)
        for (const auto& v : lang::free_vars(f)) vars.insert(v);
      int good = 0;
      for (int attempt = 0; attempt < 3000 && good < 50; ++attempt) {
        lang::Env env;
        for (const auto& v : vars) env[v] = uniform(rng, -2, 6);
        try {
          bool sat = true;
          for (const auto& f : rr.side_conditions) sat = sat && lang::eval_formula(f, env);
          if (!sat) continue;
          if (lang::eval_term(s.before, env) != lang::eval_term(s.after, env)) ++fails;
          ++good;
          ++cases;
        } catch (const EvalError&) {
        }
      }
    }
    for (const auto& k : kernel::children(p)) walk(k);
  };
  for (const auto& e : library::Library::builtin().entries()) walk(e.proof);
  return {cases, fails};
}

std::pair<int, int> prop_bound() {
  std::mt19937_64 rng(64);
  std::uniform_int_distribution<long> coeff(-1000000, 1000000), offset(1, 1000000);
  int cases = 0, fails = 0;
  for (int i = 0; i < 500; ++i) {
    int n = uniform(rng, 1, 6);
    std::vector<Integer> c(n + 1);
    for (auto& a : c) a = coeff(rng);
    while (c.back() == 0) c.back() = coeff(rng);
    Integer b = dioph::bound(dioph::IntPoly(c));
    for (int j = 0; j < 50; ++j, ++cases) {
      Integer x = b + offset(rng);
      Integer rest = 0;
      for (int k = 0; k < n; ++k) rest += abs(c[k]) * testsupport::ipow(x, k);
      if (!(abs(c[n]) * testsupport::ipow(x, n) > rest)) ++fails;
    }
  }
  return {cases, fails};
}

std::pair<int, int> prop_substitution() {
  std::mt19937_64 rng(65);
  int fails = 0;
  for (int i = 0; i < 1000; ++i) {
    lang::Term t = testsupport::random_term(rng, uniform(rng, 1, 5), {"x", "y"});
    Integer c = uniform(rng, -9, 9), d = uniform(rng, -9, 9);
    if (lang::eval_term(lang::substitute(t, "x", lang::lit(c)), {{"y", d}}) != lang::eval_term(t, {{"x", c}, {"y", d}}))
      ++fails;
  }
  return {1000, fails};
}

std::pair<int, int> prop_pareto() {
  std::mt19937_64 rng(66);
  std::vector<explain::ExplanationReport> rs;
  for (int i = 0; i < 40; ++i)
    rs.push_back(explain::make_report(std::string(uniform(rng, 0, 5), 'p'), uniform(rng, 0, 3), "t",
                                      uniform(rng, 0, 5), Rational(1)));
  int cases = 0, fails = 0;
  for (const auto& a : rs) {
    if (explain::dominates(a, a)) ++fails;
    for (const auto& b : rs)
      for (const auto& c : rs)
        if (explain::dominates(a, b) && explain::dominates(b, c)) {
          ++cases;
          if (!explain::dominates(a, c)) ++fails;
        }
  }
  return {cases, fails};
}

Outcome properties() {
  Outcome o;
  std::vector<Property> props = {{"round-trip", prop_round_trip},   {"trace-oracle", prop_traces},
                                 {"rewrite-soundness", prop_rewrites}, {"bound-dominance", prop_bound},
                                 {"subst-eval", prop_substitution},  {"pareto-transitivity", prop_pareto}};
  std::ostringstream d;
  for (const auto& p : props) {
    auto [cases, fails] = p.run();
    require(o, cases >= 1000 && fails == 0, p.name);
    d << p.name << " " << cases << "/" << fails << "  ";
  }
  o.detail = (o.pass ? "" : o.detail + "; ") + "cases/failures: " + d.str();
  return o;
}

// ---- 7 ----------------------------------------------------------------------

std::string mean_oracle(const centroid::LabeledDataset& d, const centroid::Vec& q, bool& tie) {
  std::map<std::string, std::pair<Rational, int>> acc;
  for (const auto& [pt, label] : d.points) {
    Rational s = 0;
    for (std::size_t i = 0; i < pt.size(); ++i) s += (pt[i] - q[i]) * (pt[i] - q[i]);
    acc[label].first += s;
    acc[label].second++;
  }
  std::string best;
  Rational bv;
  tie = false;
  for (const auto& [label, sv] : acc) {
    Rational m = sv.first / sv.second;
    if (best.empty() || m < bv) {
      best = label, bv = m, tie = false;
    } else if (m == bv) {
      tie = true;
    }
  }
  return best;
}

Outcome centroid_demo() {
  Outcome o;
  centroid::LabeledDataset d =
      centroid::LabeledDataset::load_csv(testsupport::source_path("data/centroid_200.csv"));
  require(o, d.points.size() == 200, "200 points");
  std::mt19937_64 rng(77);
  int matched = 0;
  for (int i = 0; i < 50; ++i) {
    centroid::Vec q{Rational(uniform(rng, -10, 30), 2), Rational(uniform(rng, -10, 30), 2)};
    bool tie = false;
    std::string expect = mean_oracle(d, q, tie);
    try {
      bool ok = !tie && centroid::centroid_classify(d, q).label == expect;
      require(o, ok, "query " + centroid::format_point(q));
      matched += ok;
    } catch (const centroid::Tie&) {
      require(o, tie, "tie at " + centroid::format_point(q));
      matched += tie;
    }
  }
  centroid::CentroidResult r = centroid::centroid_classify(d, {Rational(9), Rational(9)});
  require(o, r.label == "dog", "(9, 9) is a dog");
  require(o, r.report.input_bytes > r.report.statement_bytes, "input larger than statement");
  require(o, r.report.alpha == 1 && !r.report.passes_threshold, "threshold fails at alpha 1");
  if (o.pass) {
    std::ostringstream s;
    s << matched << "/50 queries match; input_bytes " << r.report.input_bytes << " > statement_bytes "
      << r.report.statement_bytes << ", passes_threshold false";
    o.detail = s.str();
  }
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*fn)();
  };
  const Criterion criteria[] = {
      {"figure reproduction", figures},   {"identity grid", identity_grid}, {"kernel acceptance + mutation", mutations},
      {"diophantine contrast", dioph_contrast}, {"cut semantics", cut_semantics}, {"property suites", properties},
      {"centroid demo", centroid_demo},
  };
  int failed = 0, n = 0;
  for (const auto& c : criteria) {
    ++n;
    Outcome o;
    try {
      o = c.fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << n << "] " << c.name << ": " << o.detail << std::endl;
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
