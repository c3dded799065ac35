#include "expl/build.hpp"
#include "expl/dioph.hpp"
#include "expl/explain.hpp"
#include "expl/library.hpp"
#include "expl/proof_io.hpp"
#include "support.hpp"

#include <doctest.h>
#include <json.hpp>

using namespace explainer;
using namespace explainer::explain;
using build::F;
using build::T;
using kernel::ProofKind;
using testsupport::uniform;

namespace {

const kernel::Registry* lib_reg() { return &library::Library::builtin().registry(); }

Config lib_cfg() {
  Config c;
  c.registry = lib_reg();
  return c;
}

Template digit_template() { return make_template(library::Library::builtin().get("digit_scaling").proof, lib_reg()); }

// The generic proof of x * (x + 1) = x * x + x.
kernel::Proof square_plus_intro() {
  build::Thm body = build::Chain(T("x * (x + 1)")).step(kernel::Rule::Distribute, {}, "x * x + x").done();
  return kernel::forall_intro("x", body.proof);
}

kernel::Proof wrap_as_cut(const kernel::Proof& p) {
  return kernel::forall_elim(kernel::forall_intro("unused", p), lang::lit(0));
}

bool accepted(const kernel::Proof& p, const lang::Formula& f) {
  kernel::CheckOptions o;
  o.registry = lib_reg();
  return kernel::check(p, f, o).accepted;
}

}  // namespace

TEST_SUITE("explain") {
  TEST_CASE("cut detection") {
    kernel::Proof cut = kernel::forall_elim(square_plus_intro(), T("5"));
    std::vector<Cut> cuts = detect_cuts(cut);
    REQUIRE(cuts.size() == 1);
    CHECK(cuts[0].path.empty());
    CHECK(lang::print(cuts[0].input) == "5");
    CHECK(cuts[0].tmpl.param == "x");
    CHECK(lang::print(cuts[0].tmpl.schema_statement) == "x * (x + 1) = x * x + x");

    RunResult at4 = run_explanation({TemplateProgram{digit_template()}, T("4"), {}}, F("12345679 * 36 = 444444444"),
                                    lib_cfg());
    std::vector<Cut> c4 = detect_cuts(at4.proof, lib_reg());
    REQUIRE(c4.size() == 1);
    CHECK(lang::print(c4[0].input) == "4");

    kernel::Proof reduced = digit_template().substituted(T("4"));
    CHECK(accepted(reduced, F("12345679 * 9 * 4 = 111111111 * 4")));
    CHECK(detect_cuts(reduced, lib_reg()).empty());
  }

  TEST_CASE("cuts are reported outermost first") {
    kernel::Proof inner = kernel::forall_elim(square_plus_intro(), T("2"));
    kernel::Proof outer = kernel::forall_elim(kernel::forall_intro("z", inner), T("9"));
    kernel::Proof both = kernel::and_intro(outer, kernel::forall_elim(square_plus_intro(), T("3")));
    std::vector<Cut> cuts = detect_cuts(both);
    REQUIRE(cuts.size() == 3);
    CHECK(lang::print(cuts[0].input) == "9");
    CHECK(lang::print(cuts[1].input) == "2");
    CHECK(lang::print(cuts[2].input) == "3");
    CHECK(cuts[0].path == Path{0});
    CHECK(cuts[1].path.size() > cuts[0].path.size());
  }

  TEST_CASE("proofs without eliminations have no cuts") {
    for (const auto& e : library::Library::builtin().entries())
      if (kernel::count_kind(e.proof, ProofKind::ForallElim) == 0) CHECK(detect_cuts(e.proof, lib_reg()).empty());
    // the interval prover eliminates its own range lemma once
    CHECK(detect_cuts(dioph::prove_no_solution_interval(dioph::IntPoly::parse("x^2 - 1800"))).size() == 1);
    CHECK(detect_cuts(kernel::compute(F("1 = 1"))).empty());
  }

  TEST_CASE("running explanations") {
    Formula target = F("12345679 * 36 = 444444444");
    RunResult r = run_explanation({TemplateProgram{digit_template()}, T("4"), {}}, target, lib_cfg());
    CHECK(accepted(r.proof, target));
    CHECK(r.report.statement_bytes == lang::size_bytes(target));
    CHECK(r.report.input_bytes == 1);
    CHECK(r.report.run_steps > 0);

    Formula fig5 = F("7678 * 3706 = 28454668");
    RunResult m = run_explanation({TraceProgram{TraceKind::Multiply, 10}, T("7678 * 3706"), {}}, fig5);
    CHECK(m.proof->kind == ProofKind::Compute);
    CHECK(accepted(m.proof, fig5));

    Formula div = F("111111111 = 9 * 12345679 + 0");
    CHECK(accepted(run_explanation({TraceProgram{TraceKind::Divide, 10}, T("111111111 * 9"), {}}, div).proof, div));

    CHECK_THROWS_AS(run_explanation({TemplateProgram{digit_template()}, T("10"), {}}, target, lib_cfg()),
                    ProofMismatch);
    CHECK_THROWS_AS(run_explanation({TemplateProgram{digit_template()}, T("5"), {}}, target, lib_cfg()),
                    ProofMismatch);
    CHECK_THROWS_AS(run_explanation({TraceProgram{TraceKind::Multiply, 10}, T("7678 * 3706"), {}},
                                    F("7678 * 3706 = 28454669")),
                    ProofMismatch);
    Config tight = lib_cfg();
    tight.step_limit = 3;
    CHECK_THROWS_AS(run_explanation({TemplateProgram{digit_template()}, T("4"), {}}, target, tight), StepLimitExceeded);
    CHECK_THROWS_AS(run_explanation({TemplateProgram{digit_template()}, T("x"), {}}, target, lib_cfg()), DomainError);

    EnumGenerator g{"x", 0, 42, F("x^2 < 1800")};
    RunResult en = run_explanation({g, T("7"), {}}, F("7^2 < 1800"));
    CHECK(en.report.run_steps > 43);
  }

  TEST_CASE("template run and substitution agree") {
    std::mt19937_64 rng(7001);
    Template dt = digit_template();
    Template core = make_template(library::Library::builtin().get("repunit_core").proof, lib_reg());
    Template sq = make_template(square_plus_intro());
    for (int i = 0; i < 1000; ++i) {
      const Template* t = nullptr;
      Integer v;
      switch (i % 3) {
        case 0: t = &dt, v = uniform(rng, 1, 9); break;
        case 1: t = &core, v = uniform(rng, 2, 12); break;
        default: t = &sq, v = uniform(rng, 0, 500); break;
      }
      Formula s = lang::substitute(t->schema_statement, t->param, lang::lit(v));
      RunResult r = run_explanation({TemplateProgram{*t}, lang::lit(v), {}}, s, lib_cfg());
      CHECK(accepted(r.proof, s));
      CHECK(accepted(t->substituted(lang::lit(v)), s));
      CHECK(detect_cuts(r.proof, lib_reg()).size() == 1);
    }
  }

  TEST_CASE("classification examples") {
    RunResult at4 = run_explanation({TemplateProgram{digit_template()}, T("4"), {}}, F("12345679 * 36 = 444444444"),
                                    lib_cfg());
    ProofCategory c = classify_proof(at4.proof, 12, lib_reg());
    CHECK(c.category == Category::Explanatory);
    CHECK(c.k == 0);
    REQUIRE(c.cuts.size() == 1);

    kernel::Proof interval = dioph::prove_no_solution_interval(dioph::IntPoly::parse("x^2 - 1800"));
    ProofCategory ci = classify_proof(wrap_as_cut(interval), 2);
    CHECK(ci.category == Category::Explanatory);
    CHECK(ci.k == 2);
    CHECK(classify_proof(wrap_as_cut(interval), 1).category == Category::CaseAnalytic);
    CHECK(classify_proof(interval, 2).k == 2);

    kernel::Proof en = kernel::range_enum("x", T("0"), T("42"), F("x^2 < 1800"),
                                          kernel::expand_range_enum("x", 0, 42, F("x^2 < 1800")));
    ProofCategory ce = classify_proof(wrap_as_cut(en), 12);
    CHECK(ce.category == Category::CaseAnalytic);
    CHECK(ce.k == 43);

    ProofCategory cd = classify_proof(dioph::prove_no_solution_enum(dioph::IntPoly::parse("x^2 - 1800")), 12);
    CHECK(cd.category == Category::CaseAnalytic);
    CHECK(cd.k == 3601);

    kernel::Proof reduced = digit_template().substituted(T("4"));
    CHECK(classify_proof(reduced, 12, lib_reg()).category == Category::Opaque);
    CHECK(category_name(Category::Opaque) == "Opaque");
  }

  TEST_CASE("raising k_max never loses explanatory status") {
    std::vector<kernel::Proof> proofs;
    proofs.push_back(wrap_as_cut(dioph::prove_no_solution_interval(dioph::IntPoly::parse("x^2 - 1800"))));
    for (int hi : {0, 3, 11, 12, 13, 42})
      proofs.push_back(wrap_as_cut(kernel::range_enum(
          "x", T("0"), lang::lit(hi), F("x < 100"), kernel::expand_range_enum("x", 0, hi, F("x < 100")))));
    proofs.push_back(dioph::prove_no_solution_enum(dioph::IntPoly::parse("x + 1")));
    proofs.push_back(kernel::forall_elim(square_plus_intro(), T("3")));
    for (const auto& p : proofs) {
      bool was = false;
      for (std::uint64_t k = 0; k <= 60; ++k) {
        bool now = classify_proof(p, k).category == Category::Explanatory;
        CHECK((!was || now));
        was = now;
      }
    }
  }

  TEST_CASE("report arithmetic") {
    ExplanationReport r = make_report(std::string(30, 'p'), 7, "12345679 * 36 = 444444444", 99, Rational(1));
    CHECK(r.program_bytes == 30);
    CHECK(r.statement_bytes == 25);
    CHECK(r.ratio == Rational(37, 25));
    CHECK_FALSE(r.passes_threshold);
    CHECK(make_report("ab", 1, "abc", 0, Rational(1)).passes_threshold);
    CHECK_FALSE(make_report("ab", 1, "abc", 0, Rational(99, 100)).passes_threshold);

    std::mt19937_64 rng(7002);
    for (int i = 0; i < 1000; ++i) {
      std::string prog(uniform(rng, 0, 500), 'x'), target(uniform(rng, 1, 200), 'y');
      std::uint64_t in = uniform(rng, 0, 100);
      Rational alpha(uniform(rng, 1, 40), uniform(rng, 1, 10));
      ExplanationReport q = make_report(prog, in, target, 0, alpha);
      CHECK(q.ratio * Rational(q.statement_bytes) == Rational(q.program_bytes + q.input_bytes));
      CHECK(q.passes_threshold == (q.ratio <= alpha));
    }
  }

  TEST_CASE("ordering") {
    dioph::IntPoly p = dioph::IntPoly::parse("x^2 - 1800");
    Formula s = dioph::statement(p);
    RunResult iv = run_explanation({ConstantProof{dioph::prove_no_solution_interval(p)}, nullptr, {}}, s);
    RunResult en = run_explanation({ConstantProof{dioph::prove_no_solution_enum(p)}, nullptr, {}}, s);
    CHECK(dominates(iv.report, en.report));
    CHECK_FALSE(dominates(en.report, iv.report));
    CHECK(order_explanations({en.report, iv.report}) == std::vector<std::size_t>{1, 0});
    CHECK(order_explanations({iv.report}) == std::vector<std::size_t>{0});
    CHECK(order_explanations({iv.report, iv.report}) == std::vector<std::size_t>{0, 1});
    CHECK_FALSE(dominates(iv.report, iv.report));

    ExplanationReport other = iv.report;
    other.target = "something else";
    CHECK_THROWS_AS(order_explanations({iv.report, other}), DomainError);
  }

  TEST_CASE("dominance is a strict partial order") {
    std::mt19937_64 rng(7003);
    std::vector<ExplanationReport> rs;
    for (int i = 0; i < 60; ++i)
      rs.push_back(make_report(std::string(uniform(rng, 0, 6), 'p'), uniform(rng, 0, 3), "t", uniform(rng, 0, 6),
                               Rational(1)));
    int triples = 0;
    for (const auto& a : rs) {
      CHECK_FALSE(dominates(a, a));
      for (const auto& b : rs) {
        if (dominates(a, b)) CHECK_FALSE(dominates(b, a));
        for (const auto& c : rs)
          if (dominates(a, b) && dominates(b, c)) {
            CHECK(dominates(a, c));
            ++triples;
          }
      }
    }
    CHECK(triples > 1000);
    std::vector<std::size_t> order = order_explanations(rs);
    for (std::size_t i = 0; i < order.size(); ++i)
      for (std::size_t j = i + 1; j < order.size(); ++j) CHECK_FALSE(dominates(rs[order[j]], rs[order[i]]));
  }

  TEST_CASE("existential explanations") {
    ExistentialResult r = explain_existential(book_shop(), T("5"));
    CHECK(lang::print(r.witness) == "202");
    CHECK(accepted(r.proof, r.statement));
    CHECK(lang::eval_formula(r.statement, {}));
    RunResult run = run_explanation(r.explanation, r.statement);
    CHECK(run.report.input_bytes == 1);
    CHECK_THROWS_AS(explain_existential(book_shop(), T("4")), PreconditionFalse);

    WitnessMap root{"x", F("0 <= x /\\ x <= 3600"), "identity", "y", F("y^2 = 1764")};
    ExistentialResult d = explain_existential(root, T("42"));
    CHECK(lang::print(d.witness) == "42");
    CHECK(lang::print(d.statement) == "42^2 = 1764");
    CHECK(accepted(d.proof, d.statement));
    CHECK_THROWS_AS(explain_existential(root, T("4000")), PreconditionFalse);
    CHECK_THROWS(explain_existential(root, T("41")));

    register_witness_fn("double", [](const lang::Term& t) { return lang::mul(lang::lit(2), t); });
    WitnessMap dbl{"x", F("0 <= x"), "double", "y", F("y = 2 * 7")};
    CHECK(lang::print(explain_existential(dbl, T("7")).witness) == "14");
    CHECK_THROWS(witness_fn("nope"));
  }

  TEST_CASE("serialized programs") {
    CHECK(serialize(TraceProgram{TraceKind::Multiply, 10}) == "(trace multiply 10)");
    CHECK(serialize(CentroidProgram{}) == "(nearest-mean)");
    CHECK(serialize(EnumGenerator{"x", 0, 42, F("x^2 < 1800")}) == "(enum x 0 42 \"x^2 < 1800\")");
    Template t = digit_template();
    CHECK(serialize(TemplateProgram{t}) == kernel::write_proof(t.proof()));
  }

  TEST_CASE("report output") {
    Config cfg = lib_cfg();
    RunResult r = run_explanation({TemplateProgram{digit_template()}, T("4"), {}}, F("12345679 * 36 = 444444444"), cfg);
    ProofCategory c = classify_proof(r.proof, cfg.k_max, cfg.registry);
    nlohmann::ordered_json j = nlohmann::ordered_json::parse(report_json(&c, r.report, cfg));
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    CHECK(keys == std::vector<std::string>{"statement", "category", "k", "cuts", "program_bytes", "input_bytes",
                                           "statement_bytes", "run_steps", "ratio", "passes_threshold", "alpha",
                                           "k_max"});
    CHECK(j["category"] == "Explanatory");
    CHECK(j["cuts"][0]["input"] == "4");
    CHECK(j["k_max"] == 12);
    CHECK(j["input_bytes"] == 1);
    CHECK(j["statement_bytes"] == 25);
    std::string text = report_text(&c, r.report, cfg);
    CHECK(text.find("Explanatory") != std::string::npos);
    CHECK(text.find("program_bytes") != std::string::npos);
  }
}
