#include "expl/library.hpp"

#include "expl/build.hpp"
#include "expl/proof_io.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace explainer::library {

using namespace build;
using kernel::Rule;

namespace {

const std::string kS = "sum(i, 0, b - 2, (b - 2 - i) * b^i)";
const std::string kA = "sum(i, 0, m - 1, x^i)";
const std::string kG = "sum(j, 0, p - 1, b^((b - 1) * j))";

Formula sides_of(const std::string& l, const std::string& r) { return lang::eq(T(l), T(r)); }

LemmaEntry entry(std::string name, std::string_view stmt, const Thm& t, std::vector<std::string> tags) {
  Formula s = F(stmt);
  if (!lang::alpha_equal(s, t.concl))
    throw Error("lemma " + name + " builds " + lang::print(t.concl) + ", not " + lang::print(s));
  return {std::move(name), s, t.proof, std::move(tags)};
}

std::string core_statement() {
  return "forall b . 2 <= b => (" + kS + " + 1) * (b - 1) = sum(i, 0, b - 2, b^i)";
}

std::string geom_body() { return kA + " * sum(j, 0, p - 1, x^(m * j)) = sum(k, 0, m * p - 1, x^k)"; }

std::string geom_statement() { return "forall x . forall m . 1 <= m => forall p . " + geom_body(); }

// forall u a n . Σ_{k=0}^{a-1} u^k + Σ_{k=a}^{a+n-1} u^k = Σ_{k=0}^{a+n-1} u^k, by induction on n.
Thm sum_concat() {
  Formula Q = F("sum(k, 0, a - 1, u^k) + sum(k, a, a + n - 1, u^k) = sum(k, 0, a + n - 1, u^k)");
  Formula Q0 = lang::replace_free(Q, "n", lang::lit(0));
  Formula Q1 = lang::replace_free(Q, "n", T("n + 1"));
  Thm base = Chain(Q0->l).step(Rule::RingNormalize, {}, Q0->r).done();

  Thm ha = assume("ha", F("0 <= a"));
  Thm hn = assume("hn", F("0 <= n"));
  Thm ih = assume("ih", Q);
  Thm side_a = add_le(hn, T("a"), T("a"), T("a + (n + 1) - 1"));
  Thm eq_a = Chain(Q1->l)
                 .step(Rule::SumSplitLast, {1}, "sum(k, a, a + n - 1, u^k) + u^(a + n)", {side_a})
                 .ring({}, "sum(k, 0, a - 1, u^k) + sum(k, a, a + n - 1, u^k) + u^(a + n)")
                 .done();
  Thm eq_b = eq_subst(ih, eq_a, {1, 0});
  Thm side_an = le_trans(hn, add_le(ha, T("n"), T("n"), T("a + n")));
  Thm eq_c = Chain(eq_b.concl->r)
                 .step(Rule::SumSplitLast, {}, "sum(k, 0, a + n, u^k)", {side_an})
                 .ring({1}, "a + (n + 1) - 1")
                 .done();
  Thm step = forall_i("n", imp_i("ih", Q, trans({eq_b, eq_c})), "hn");
  return forall_i("u", forall_i("a", induction("n", base, step), "ha"));
}

}  // namespace

LemmaEntry repunit_core() {
  Thm hb = assume("hb", F("2 <= b"));
  Thm side1 = add_le(hb, lang::lit(-1), T("1"), T("b - 1"));
  Thm side0 = add_le(hb, lang::lit(-2), T("0"), T("b - 2"));
  const std::string& S = kS;
  Thm chain = Chain(T("(" + S + " + 1) * (b - 1)"))
                  .step(Rule::Distribute, {}, S + " * (b - 1) + (b - 1)")
                  .step(Rule::Distribute, {0}, S + " * b - " + S)
                  .step(Rule::SumLinearity, {0, 0}, "sum(i, 0, b - 2, (b - 2 - i) * b^i * b)")
                  .ring({0, 0, 2}, "(b - 2 - i) * b^(i + 1)")
                  .shift({0, 0}, T("1"), "sum(i, 1, b - 1, (b - 1 - i) * b^i)")
                  .step(Rule::SumSplitLast, {0, 0}, "sum(i, 1, b - 2, (b - 1 - i) * b^i) + 0", {side1})
                  .step(Rule::SumSplitFirst, {0, 1}, "b - 2 + sum(i, 1, b - 2, (b - 2 - i) * b^i)", {side0})
                  .ring({}, "sum(i, 1, b - 2, (b - 1 - i) * b^i) - sum(i, 1, b - 2, (b - 2 - i) * b^i) + 1")
                  .step(Rule::SumLinearity, {0}, "sum(i, 1, b - 2, (b - 1 - i) * b^i - (b - 2 - i) * b^i)")
                  .ring({0, 2}, "b^i")
                  .ring({}, "1 + sum(i, 1, b - 2, b^i)")
                  .step(Rule::SumSplitFirst, {}, "sum(i, 0, b - 2, b^i)", {side0})
                  .done();
  Thm t = forall_i("b", imp_i("hb", F("2 <= b"), chain));
  return entry("repunit_core", core_statement(), t, {"generic"});
}

LemmaEntry geom_merge() {
  Formula P = F(geom_body());
  Formula P0 = lang::replace_free(P, "p", lang::lit(0));
  Formula P1 = lang::replace_free(P, "p", T("p + 1"));
  Thm base = Chain(P0->l).step(Rule::RingNormalize, {}, P0->r).done();

  Thm hx = assume("hx", F("0 <= x"));
  Thm hm0 = assume("hm0", F("0 <= m"));
  Thm hp = assume("hp", F("0 <= p"));
  Thm ih = assume("ih", P);
  Thm side_p = fit(hp, F("0 <= p + 1 - 1"));
  Thm eq1 = Chain(P1->l)
                .step(Rule::SumSplitLast, {1}, "sum(j, 0, p - 1, x^(m * j)) + x^(m * p)", {side_p})
                .step(Rule::Distribute, {}, kA + " * sum(j, 0, p - 1, x^(m * j)) + " + kA + " * x^(m * p)")
                .done();
  Thm eq2 = eq_subst(ih, eq1, {1, 0});
  Thm eq3 = Chain(eq2.concl->r)
                .step(Rule::SumLinearity, {1}, "sum(i, 0, m - 1, x^i * x^(m * p))")
                .ring({1, 2}, "x^(m * p + i)")
                .shift({1}, T("m * p"), "sum(k, m * p, m * p + m - 1, x^k)")
                .done();
  Thm h_mp = fit(apply("MulMonoLe", {{"x", T("0")}, {"y", T("m")}, {"z", T("p")}}, {hm0, hp}), F("0 <= m * p"));
  Thm concat = forall_e(forall_e(forall_e(sum_concat(), T("x"), hx), T("m * p"), h_mp), T("m"), hm0);
  Thm eq5 = Chain(concat.concl->r).ring({1}, "m * (p + 1) - 1").done();
  Thm step = forall_i("p", imp_i("ih", P, trans({eq2, eq3, concat, eq5})), "hp");

  Thm t = forall_i("x", forall_i("m", imp_i("hm", F("1 <= m"), induction("p", base, step)), "hm0"), "hx");
  return entry("geom_merge", geom_statement(), t, {"generic", "induction"});
}

LemmaEntry repunit_general() {
  Thm hb0 = assume("hb0", F("0 <= b"));
  Thm hb = assume("hb", F("2 <= b"));
  Thm hp0 = assume("hp0", F("0 <= p"));
  Thm core_b = mp(forall_e(lemma_ref("repunit_core", F(core_statement())), T("b"), hb0), hb);
  Thm h1 = add_le(hb, lang::lit(-1), T("1"), T("b - 1"));
  Thm h0 = le_trans(by_compute(F("0 <= 1")), h1);
  Thm g = forall_e(lemma_ref("geom_merge", F(geom_statement())), T("b"), hb0);
  g = forall_e(mp(forall_e(g, T("b - 1"), h0), h1), T("p"), hp0);

  std::string lhs = "(" + kS + " + 1) * " + kG + " * (b - 1)";
  Thm eq_a = Chain(T(lhs)).ring({}, "(" + kS + " + 1) * (b - 1) * " + kG).done();
  Thm eq_c = eq_subst(core_b, eq_a, {1, 0});
  Thm eq_d = Chain(eq_c.concl->r).ring({0, 1}, "b - 1 - 1").done();
  Thm body = trans({eq_c, eq_d, g});

  Thm t = forall_i("b", imp_i("hb", F("2 <= b"), forall_i("p", imp_i("hp", F("1 <= p"), body), "hp0")), "hb0");
  std::string stmt = "forall b . 2 <= b => forall p . 1 <= p => " + lhs + " = sum(k, 0, (b - 1) * p - 1, b^k)";
  return entry("repunit_general", stmt, t, {"generic"});
}

LemmaEntry digit_scaling() {
  Thm core10 = mp(forall_e(lemma_ref("repunit_core", F(core_statement())), lang::lit(10)), by_compute(F("2 <= 10")));
  Thm magic = fit(core10, sides_of("12345679 * 9", "111111111"));
  Thm refl = axiom("EqRefl", {{"x", T("12345679 * 9 * n")}});
  Thm body = eq_subst(magic, refl, {1, 0});
  Thm t = forall_range_i("n", lang::lit(1), lang::lit(9), body);
  return entry("digit_scaling", "forall n in [1, 9] . 12345679 * 9 * n = 111111111 * n", t, {"generic"});
}

LemmaEntry division_invariant_core() {
  Thm hn = assume("hn", F("1 <= n /\\ n <= 7"));
  Thm eqn = Chain(T("10 * n + 1")).ring({}, "9 * n + (n + 1)").done();
  Thm le = apply("AddMonoLe", {{"x", T("n")}, {"y", T("7")}, {"z", T("1")}}, {and_r(hn)});
  Thm lt = le_lt_trans(le, by_compute(F("7 + 1 < 9")));
  Thm part = forall_range_i("n", lang::lit(1), lang::lit(7), and_i(eqn, lt), "hn");
  Thm t = and_i(part, by_compute(F("10 * 8 + 1 = 9 * 9 + 0")));
  return entry("division_invariant_core",
               "(forall n in [1, 7] . 10 * n + 1 = 9 * n + (n + 1) /\\ n + 1 < 9) /\\ 10 * 8 + 1 = 9 * 9 + 0", t,
               {"generic"});
}

std::vector<LemmaEntry> build_all() {
  return {repunit_core(), geom_merge(), repunit_general(), digit_scaling(), division_invariant_core()};
}

// ---- Library -------------------------------------------------------------

void Library::admit(LemmaEntry e) {
  kernel::CheckOptions opts;
  opts.registry = &registry_;
  kernel::CheckReport r = kernel::check(e.proof, e.statement, opts);
  if (!r.accepted)
    throw Error("lemma " + e.name + " rejected at " + path_str(r.failure->path) + ": " + r.failure->message);
  registry_.add_lemma(e.name, e.statement);
  entries_.push_back(std::move(e));
}

const Library& Library::builtin() {
  static const Library lib = [] {
    Library l;
    for (auto& e : build_all()) l.admit(std::move(e));
    return l;
  }();
  return lib;
}

Library Library::load(const std::string& dir) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  for (const auto& de : fs::directory_iterator(dir))
    if (de.path().extension() == ".sexp") files.push_back(de.path());
  std::sort(files.begin(), files.end());
  std::vector<LemmaEntry> pending;
  for (const auto& f : files) {
    std::ifstream in(f);
    std::stringstream ss;
    ss << in.rdbuf();
    pending.push_back(read_lemma(ss.str()));
  }
  // Admit in dependency order: keep retrying until nothing more checks.
  Library lib;
  while (!pending.empty()) {
    std::vector<LemmaEntry> rest;
    std::string last;
    for (auto& e : pending) {
      try {
        lib.admit(e);
      } catch (const Error& err) {
        last = err.what();
        rest.push_back(std::move(e));
      }
    }
    if (rest.size() == pending.size()) throw Error(last);
    pending = std::move(rest);
  }
  return lib;
}

const LemmaEntry& Library::get(const std::string& name) const {
  for (const auto& e : entries_)
    if (e.name == name) return e;
  throw Error("no lemma named " + name);
}

std::string write_lemma(const LemmaEntry& e) {
  using kernel::sx_atom;
  kernel::SExpr tags = kernel::sx_list({sx_atom("tags")});
  for (const auto& t : e.tags) tags.items.push_back(sx_atom(t));
  kernel::SExpr s = kernel::sx_list(
      {sx_atom("lemma"), sx_atom(e.name), sx_atom(lang::print(e.statement)), tags, kernel::to_sexpr(e.proof)});
  return kernel::write_sexpr(s, true) + "\n";
}

LemmaEntry read_lemma(std::string_view text) {
  kernel::SExpr s = kernel::parse_sexpr(text);
  if (!s.is_list || s.items.size() != 5 || s.items[0].is_list || s.items[0].atom != "lemma")
    throw ParseError("expected (lemma NAME \"statement\" (tags ...) PROOF)", s.line, s.column);
  LemmaEntry e;
  e.name = s.items[1].atom;
  e.statement = lang::parse_formula(s.items[2].atom);
  for (std::size_t k = 1; k < s.items[3].items.size(); ++k) e.tags.push_back(s.items[3].items[k].atom);
  e.proof = kernel::from_sexpr(s.items[4]);
  return e;
}

std::vector<std::string> export_lemmas(const std::string& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::string> out;
  for (const auto& e : Library::builtin().entries()) {
    std::string path = (std::filesystem::path(dir) / (e.name + ".sexp")).string();
    std::ofstream f(path);
    f << write_lemma(e);
    if (!f) throw Error("cannot write " + path);
    out.push_back(path);
  }
  return out;
}

}  // namespace explainer::library
