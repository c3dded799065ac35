#include "expl/kernel.hpp"

#include <algorithm>

namespace explainer::kernel {

using lang::FormulaKind;

namespace {

const char* const kAxioms[][2] = {
    {"EqRefl", "x = x"},
    {"EqSym", "x = y => y = x"},
    {"EqTrans", "x = y => y = z => x = z"},
    {"AddMonoLe", "x <= y => x + z <= y + z"},
    {"AddMonoLt", "x < y => x + z < y + z"},
    {"MulMonoLe", "x <= y => 0 <= z => x * z <= y * z"},
    {"PowMonoLe", "0 <= x => x <= y => 0 <= n => x^n <= y^n"},
    {"LeTrans", "x <= y => y <= z => x <= z"},
    {"LtLeTrans", "x < y => y <= z => x < z"},
    {"LeLtTrans", "x <= y => y < z => x < z"},
    {"SuccGt", "t < x => t + 1 <= x"},
    {"Trichotomy", "x <= t \\/ t < x"},
    {"LtNe", "x < y => x != y"},
    {"GtNe", "y < x => x != y"},
};

}  // namespace

const Registry& Registry::standard() {
  static const Registry reg = [] {
    Registry r;
    for (const auto& [name, text] : kAxioms) {
      Formula f = lang::parse_formula(text);
      auto fv = lang::free_vars(f);
      r.axioms_[name] = Axiom{f, std::vector<std::string>(fv.begin(), fv.end())};
    }
    return r;
  }();
  return reg;
}

const Registry::Axiom* Registry::axiom(const std::string& name) const {
  auto it = axioms_.find(name);
  return it == axioms_.end() ? nullptr : &it->second;
}

const Formula* Registry::lemma(const std::string& name) const {
  auto it = lemmas_.find(name);
  return it == lemmas_.end() ? nullptr : &it->second;
}

void Registry::add_lemma(const std::string& name, Formula statement) {
  if (axioms_.count(name)) throw Error("lemma name clashes with axiom " + name);
  lemmas_[name] = std::move(statement);
}

Formula Registry::instantiate(const std::string& name, const Instantiation& inst) const {
  if (const Axiom* ax = axiom(name)) {
    for (const auto& v : ax->vars)
      if (!inst.count(v)) throw KernelError("axiom " + name + ": variable " + v + " not instantiated");
    for (const auto& [v, t] : inst)
      if (std::find(ax->vars.begin(), ax->vars.end(), v) == ax->vars.end())
        throw KernelError("axiom " + name + " has no variable " + v);
    // Simultaneous substitution through fresh placeholders.
    Formula f = ax->schema;
    for (const auto& v : ax->vars) f = lang::replace_free(f, v, lang::var("#" + v));
    for (const auto& v : ax->vars) f = lang::replace_free(f, "#" + v, inst.at(v));
    return f;
  }
  if (const Formula* f = lemma(name)) {
    if (!inst.empty()) throw KernelError("lemma " + name + " takes no instantiation");
    return *f;
  }
  throw KernelError("unknown axiom or lemma " + name);
}

std::vector<Proof> expand_range_enum(const std::string& var, const Integer& lo, const Integer& hi,
                                     const Formula& body, const std::string& generator) {
  if (generator != "compute") throw Error("unregistered generator " + generator);
  if (hi < lo) throw Error("empty enumeration range");
  std::vector<Proof> out;
  for (Integer v = lo; v <= hi; ++v) out.push_back(compute(lang::substitute(body, var, lang::lit(v))));
  return out;
}

namespace {

struct StepLimit {};

class Checker {
 public:
  explicit Checker(const CheckOptions& o)
      : reg_(o.registry ? *o.registry : Registry::standard()), opts_(o) {}

  std::uint64_t steps = 0;
  Path path;

  Formula run(const Proof& p) {
    tick();
    Formula c = infer(p);
    if (opts_.conclusions) (*opts_.conclusions)[p.get()] = c;
    return c;
  }

 private:
  const Registry& reg_;
  const CheckOptions& opts_;
  std::vector<std::pair<std::string, Formula>> hyps_;
  std::vector<std::string> eigen_;

  void tick(std::uint64_t n = 1) {
    steps += n;
    if (opts_.step_limit && steps > *opts_.step_limit) throw StepLimit{};
  }

  [[noreturn]] void fail(const std::string& msg) const { throw KernelError(msg, path); }

  Formula child(const Proof& p, int i) {
    path.push_back(i);
    if (!p) fail("missing sub-proof");
    Formula f = run(p);
    path.pop_back();
    return f;
  }

  void expect(const Formula& got, const Formula& want, const std::string& what) const {
    if (!lang::alpha_equal(got, want))
      fail(what + ": expected " + lang::print(want) + ", got " + lang::print(got));
  }

  void need_kids(const Proof& p, std::size_t n) const {
    if (p->kids.size() != n) fail("malformed node: wrong number of sub-proofs");
    for (const auto& k : p->kids)
      if (!k) fail("malformed node: missing sub-proof");
  }

  bool holds(const Formula& f) const {
    if (!lang::is_closed(f)) return false;
    try {
      return lang::eval_formula(f, {});
    } catch (const EvalError&) {
      return false;
    }
  }

  Integer closed_int(const Term& t, const char* what) const {
    if (!t || !lang::is_closed(t)) fail(std::string(what) + " must be a closed term");
    try {
      return lang::eval_term(t, {});
    } catch (const EvalError& e) {
      fail(e.what());
    }
  }

  void eigen_check(const std::string& v) const {
    if (std::find(eigen_.begin(), eigen_.end(), v) != eigen_.end())
      fail("variable " + v + " shadows an enclosing generic variable");
    for (const auto& [label, h] : hyps_)
      if (lang::occurs_free(v, h)) fail("variable " + v + " occurs free in open hypothesis " + label);
  }

  Formula under(const Proof& body, const std::string& v, const std::string& label, const Formula& h) {
    eigen_check(v);
    eigen_.push_back(v);
    if (!label.empty()) hyps_.emplace_back(label, h);
    Formula c = child(body, 0);
    if (!label.empty()) hyps_.pop_back();
    eigen_.pop_back();
    return c;
  }

  Formula subst(const Formula& f, const std::string& v, const Term& t) const {
    try {
      return lang::replace_free(f, v, t);
    } catch (const Error& e) {
      fail(e.what());
    }
  }

  Formula infer(const Proof& p) {
    switch (p->kind) {
      case ProofKind::Compute: {
        if (!p->formula) fail("compute leaf without goal");
        if (!lang::is_closed(p->formula)) fail("compute goal is not closed: " + lang::print(p->formula));
        bool ok = false;
        try {
          ok = lang::eval_formula(p->formula, {});
        } catch (const EvalError& e) {
          fail(std::string("compute: ") + e.what());
        }
        if (!ok) fail("compute goal is false: " + lang::print(p->formula));
        return p->formula;
      }
      case ProofKind::Axiom:
        try {
          return reg_.instantiate(p->name, p->inst);
        } catch (const Error& e) {
          fail(e.what());
        }
      case ProofKind::ForallIntro: {
        need_kids(p, 1);
        const std::string& v = p->name;
        Formula c = under(p->kids[0], v, p->label, lang::le(lang::lit(0), lang::var(v)));
        return lang::forall_nat(v, c);
      }
      case ProofKind::ForallRangeIntro: {
        need_kids(p, 1);
        const std::string& v = p->name;
        if (!p->lo || !p->hi) fail("range introduction without bounds");
        if (lang::occurs_free(v, p->lo) || lang::occurs_free(v, p->hi)) fail("range bounds mention " + v);
        Formula h = lang::conj(lang::le(p->lo, lang::var(v)), lang::le(lang::var(v), p->hi));
        Formula c = under(p->kids[0], v, p->label, h);
        return lang::forall_range(v, p->lo, p->hi, c);
      }
      case ProofKind::ForallElim: {
        if (p->kids.empty() || p->kids.size() > 2 || !p->kids[0]) fail("malformed forall elimination");
        if (!p->witness) fail("forall elimination without witness");
        Formula u = child(p->kids[0], 0);
        const Term& w = p->witness;
        Formula dom;
        if (u->kind == FormulaKind::ForallNat)
          dom = lang::le(lang::lit(0), w);
        else if (u->kind == FormulaKind::ForallRange)
          dom = lang::conj(lang::le(u->l, w), lang::le(w, u->r));
        else
          fail("forall elimination of a non-universal statement: " + lang::print(u));
        if (p->kids.size() == 2) {
          expect(child(p->kids[1], 1), dom, "domain proof");
        } else if (!holds(dom)) {
          fail("witness outside the quantifier domain: " + lang::print(dom));
        }
        return subst(u->f, u->var, w);
      }
      case ProofKind::RangeEnum: {
        if (!p->formula) fail("enumeration without body");
        Integer lo = closed_int(p->lo, "enumeration lower bound");
        Integer hi = closed_int(p->hi, "enumeration upper bound");
        Integer n = hi < lo ? Integer(0) : Integer(hi - lo + 1);
        std::vector<Proof> cases = p->kids;
        if (p->generated) {
          if (!cases.empty()) fail("generated enumeration with explicit cases");
          if (n > 100'000'000) fail("enumeration too large");
          try {
            if (n > 0) cases = expand_range_enum(p->name, lo, hi, p->formula);
          } catch (const Error& e) {
            fail(e.what());
          }
        }
        if (Integer(cases.size()) != n) fail("enumeration has " + std::to_string(cases.size()) + " cases, expected " + n.str());
        for (std::size_t i = 0; i < cases.size(); ++i) {
          tick();
          Formula want = subst(p->formula, p->name, lang::lit(lo + static_cast<long>(i)));
          expect(child(cases[i], static_cast<int>(i)), want, "enumeration case");
        }
        return lang::forall_range(p->name, p->lo, p->hi, p->formula);
      }
      case ProofKind::Induction: {
        need_kids(p, 2);
        const std::string& v = p->name;
        Formula base = child(p->kids[0], 0);
        Formula step = child(p->kids[1], 1);
        if (step->kind != FormulaKind::ForallNat || step->var != v || step->f->kind != FormulaKind::Implies)
          fail("induction step must conclude forall " + v + " . P => P[" + v + " + 1]");
        const Formula& P = step->f->f;
        expect(step->f->g, subst(P, v, lang::add(lang::var(v), lang::lit(1))), "induction step");
        expect(base, subst(P, v, lang::lit(0)), "induction base");
        return lang::forall_nat(v, P);
      }
      case ProofKind::ImpIntro: {
        need_kids(p, 1);
        if (!p->formula) fail("implication introduction without hypothesis");
        hyps_.emplace_back(p->name, p->formula);
        Formula c = child(p->kids[0], 0);
        hyps_.pop_back();
        return lang::implies(p->formula, c);
      }
      case ProofKind::ImpElim: {
        need_kids(p, 2);
        Formula f = child(p->kids[0], 0);
        if (f->kind != FormulaKind::Implies) fail("modus ponens on a non-implication: " + lang::print(f));
        expect(child(p->kids[1], 1), f->f, "antecedent");
        return f->g;
      }
      case ProofKind::Hyp:
        for (auto it = hyps_.rbegin(); it != hyps_.rend(); ++it)
          if (it->first == p->name) return it->second;
        fail("unresolved hypothesis " + p->name);
      case ProofKind::AndIntro: {
        need_kids(p, 2);
        Formula a = child(p->kids[0], 0);
        Formula b = child(p->kids[1], 1);
        return lang::conj(a, b);
      }
      case ProofKind::AndElimL:
      case ProofKind::AndElimR: {
        need_kids(p, 1);
        Formula f = child(p->kids[0], 0);
        if (f->kind != FormulaKind::And) fail("conjunction elimination on " + lang::print(f));
        return p->kind == ProofKind::AndElimL ? f->f : f->g;
      }
      case ProofKind::CaseSplit: {
        need_kids(p, 3);
        Formula d = child(p->kids[0], 0);
        if (d->kind != FormulaKind::Or) fail("case split on a non-disjunction: " + lang::print(d));
        Formula l = child(p->kids[1], 1);
        Formula r = child(p->kids[2], 2);
        if (l->kind != FormulaKind::Implies || r->kind != FormulaKind::Implies)
          fail("case split branches must be implications");
        expect(l->f, d->f, "left case");
        expect(r->f, d->g, "right case");
        expect(r->g, l->g, "case conclusions");
        return l->g;
      }
      case ProofKind::Rewrite:
        return rewrite_chain(p);
      case ProofKind::EqSubst: {
        need_kids(p, 2);
        Formula e = child(p->kids[0], 0);
        if (e->kind != FormulaKind::Eq) fail("substitution by a non-equation: " + lang::print(e));
        Formula t = child(p->kids[1], 1);
        Term at;
        std::set<std::string> binders;
        try {
          at = lang::subterm_at(t, p->position);
          binders = lang::binders_along(t, p->position);
        } catch (const Error& ex) {
          fail(ex.what());
        }
        if (!lang::alpha_equal(at, e->l))
          fail("substitution: " + lang::print(e->l) + " not found at " + path_str(p->position));
        for (const auto& v : binders)
          if (lang::occurs_free(v, e->l) || lang::occurs_free(v, e->r))
            fail("substitution under binder " + v);
        return lang::replace_at(t, p->position, e->r);
      }
    }
    fail("unknown proof node");
  }

  Formula rewrite_chain(const Proof& p) {
    if (!p->formula || p->formula->kind != FormulaKind::Eq) fail("rewrite goal must be an equation");
    Term cur = p->formula->l;
    int side_index = static_cast<int>(p->kids.size());
    for (std::size_t k = 0; k < p->steps.size(); ++k) {
      const RewriteStep& st = p->steps[k];
      tick();
      std::string where = "rewrite step " + std::to_string(k + 1) + " (" + rule_name(st.rule) + ")";
      Term at;
      std::set<std::string> binders;
      try {
        at = lang::subterm_at(cur, st.position);
        binders = lang::binders_along(cur, st.position);
      } catch (const Error& e) {
        fail(where + ": " + e.what());
      }
      if (!st.before || !lang::alpha_equal(at, st.before))
        fail(where + ": before term does not match " + lang::print(at));
      RewriteResult r = apply_rewrite(st, reg_);
      if (!r.ok) fail(where + ": " + r.message);
      if (r.side_conditions.size() != st.side_conditions.size())
        fail(where + ": expected " + std::to_string(r.side_conditions.size()) + " side conditions");
      if (st.side_proofs.size() != st.side_conditions.size()) fail(where + ": side proofs missing");
      for (std::size_t j = 0; j < r.side_conditions.size(); ++j) {
        const Formula& sc = r.side_conditions[j];
        expect(st.side_conditions[j], sc, where + " side condition");
        for (const auto& v : binders)
          if (lang::occurs_free(v, sc)) fail(where + ": side condition mentions bound variable " + v);
        if (st.side_proofs[j]) {
          expect(child(st.side_proofs[j], side_index++), sc, where + " side proof");
        } else if (!holds(sc)) {
          fail(where + ": side condition does not compute to true: " + lang::print(sc));
        }
      }
      try {
        cur = lang::replace_at(cur, st.position, st.after);
      } catch (const Error& e) {
        fail(where + ": " + e.what());
      }
    }
    if (!lang::alpha_equal(cur, p->formula->r))
      fail("rewrite chain ends at " + lang::print(cur) + ", not " + lang::print(p->formula->r));
    return p->formula;
  }
};

}  // namespace

CheckReport check(const Proof& p, const Formula& goal, const CheckOptions& opts) {
  CheckReport rep;
  Checker c(opts);
  try {
    if (!p) throw KernelError("empty proof");
    Formula got = c.run(p);
    if (!lang::alpha_equal(got, goal))
      throw KernelError("proof concludes " + lang::print(got) + ", not " + lang::print(goal));
    rep.accepted = true;
  } catch (const KernelError& e) {
    rep.failure = CheckReport::Failure{e.path(), e.what()};
  } catch (const StepLimit&) {
    rep.failure = CheckReport::Failure{c.path, "step limit exceeded"};
  } catch (const Error& e) {
    rep.failure = CheckReport::Failure{c.path, e.what()};
  }
  rep.steps = c.steps;
  return rep;
}

Formula conclusion(const Proof& p, const CheckOptions& opts) {
  Checker c(opts);
  try {
    if (!p) throw KernelError("empty proof");
    return c.run(p);
  } catch (const StepLimit&) {
    throw KernelError("step limit exceeded", c.path);
  } catch (const KernelError&) {
    throw;
  } catch (const Error& e) {
    throw KernelError(e.what(), c.path);
  }
}

}  // namespace explainer::kernel
