#include "expl/build.hpp"

namespace explainer::build {

using lang::FormulaKind;

namespace {

void same(const Formula& got, const Formula& want, const char* where) {
  if (!lang::alpha_equal(got, want))
    throw Error(std::string(where) + ": expected " + lang::print(want) + ", got " + lang::print(got));
}

}  // namespace

Term T(std::string_view text) { return lang::parse_term(text); }
Formula F(std::string_view text) { return lang::parse_formula(text); }

Thm assume(const std::string& label, Formula f) { return {kernel::hyp(label), std::move(f)}; }

Thm by_compute(Formula f) {
  if (!lang::is_closed(f) || !lang::eval_formula(f, {})) throw Error("not computably true: " + lang::print(f));
  return {kernel::compute(f), f};
}

Thm axiom(const std::string& name, kernel::Instantiation inst, const kernel::Registry& reg) {
  Formula c = reg.instantiate(name, inst);
  return {kernel::axiom(name, std::move(inst)), c};
}

Thm lemma_ref(const std::string& name, Formula statement) { return {kernel::axiom(name), std::move(statement)}; }

Thm mp(const Thm& imp, const Thm& a) {
  if (imp.concl->kind != FormulaKind::Implies) throw Error("mp: not an implication: " + lang::print(imp.concl));
  same(a.concl, imp.concl->f, "mp");
  return {kernel::imp_elim(imp.proof, a.proof), imp.concl->g};
}

Thm apply(const std::string& name, kernel::Instantiation inst, std::initializer_list<Thm> premises) {
  Thm t = axiom(name, std::move(inst));
  for (const auto& p : premises) t = mp(t, p);
  return t;
}

Thm and_i(const Thm& a, const Thm& b) { return {kernel::and_intro(a.proof, b.proof), lang::conj(a.concl, b.concl)}; }

Thm and_l(const Thm& t) {
  if (t.concl->kind != FormulaKind::And) throw Error("and_l: not a conjunction");
  return {kernel::and_elim_l(t.proof), t.concl->f};
}

Thm and_r(const Thm& t) {
  if (t.concl->kind != FormulaKind::And) throw Error("and_r: not a conjunction");
  return {kernel::and_elim_r(t.proof), t.concl->g};
}

Thm imp_i(const std::string& label, Formula hyp, const Thm& body) {
  return {kernel::imp_intro(label, hyp, body.proof), lang::implies(hyp, body.concl)};
}

Thm forall_i(const std::string& var, const Thm& body, const std::string& label) {
  return {kernel::forall_intro(var, body.proof, label), lang::forall_nat(var, body.concl)};
}

Thm forall_range_i(const std::string& var, Term lo, Term hi, const Thm& body, const std::string& label) {
  return {kernel::forall_range_intro(var, lo, hi, body.proof, label), lang::forall_range(var, lo, hi, body.concl)};
}

namespace {

Thm elim(const Thm& u, Term w, const Thm* dom) {
  const Formula& q = u.concl;
  if (q->kind != FormulaKind::ForallNat && q->kind != FormulaKind::ForallRange)
    throw Error("forall_e: not a universal statement: " + lang::print(q));
  if (dom) {
    Formula want = q->kind == FormulaKind::ForallNat
                       ? lang::le(lang::lit(0), w)
                       : lang::conj(lang::le(q->l, w), lang::le(w, q->r));
    same(dom->concl, want, "forall_e domain");
  }
  Formula c = lang::replace_free(q->f, q->var, w);
  return {kernel::forall_elim(u.proof, w, dom ? dom->proof : nullptr), c};
}

}  // namespace

Thm forall_e(const Thm& u, Term witness) { return elim(u, std::move(witness), nullptr); }
Thm forall_e(const Thm& u, Term witness, const Thm& domain) { return elim(u, std::move(witness), &domain); }

Thm induction(const std::string& var, const Thm& base, const Thm& step) {
  const Formula& s = step.concl;
  if (s->kind != FormulaKind::ForallNat || s->f->kind != FormulaKind::Implies)
    throw Error("induction: malformed step");
  return {kernel::induction(var, base.proof, step.proof), lang::forall_nat(var, s->f->f)};
}

Thm case_split(const Thm& disj, const Thm& left, const Thm& right) {
  if (left.concl->kind != FormulaKind::Implies) throw Error("case_split: branch is not an implication");
  return {kernel::case_split(disj.proof, left.proof, right.proof), left.concl->g};
}

Thm eq_subst(const Thm& eq, const Thm& target, Path position) {
  if (eq.concl->kind != FormulaKind::Eq) throw Error("eq_subst: not an equation");
  Term at = lang::subterm_at(target.concl, position);
  if (!lang::alpha_equal(at, eq.concl->l))
    throw Error("eq_subst: " + lang::print(eq.concl->l) + " not at " + path_str(position) + " of " +
                lang::print(target.concl));
  Formula c = lang::replace_at(target.concl, position, eq.concl->r);
  return {kernel::eq_subst(eq.proof, target.proof, position), c};
}

Thm ring_eq(Term l, Term r) { return Chain(std::move(l)).step(kernel::Rule::RingNormalize, {}, std::move(r)).done(); }

Thm trans(std::initializer_list<Thm> eqs) {
  auto it = eqs.begin();
  Thm acc = *it;
  for (++it; it != eqs.end(); ++it) {
    const Thm& next = *it;
    acc = apply("EqTrans", {{"x", acc.concl->l}, {"y", acc.concl->r}, {"z", next.concl->r}}, {acc, next});
  }
  return acc;
}

Thm fit(const Thm& t, const Formula& target) {
  if (lang::alpha_equal(t.concl, target)) return t;
  if (!t.concl->is_atom() || t.concl->kind != target->kind)
    throw Error("fit: shapes differ: " + lang::print(t.concl) + " vs " + lang::print(target));
  Thm cur = t;
  if (!lang::alpha_equal(cur.concl->l, target->l)) cur = eq_subst(ring_eq(cur.concl->l, target->l), cur, {0});
  if (!lang::alpha_equal(cur.concl->r, target->r)) cur = eq_subst(ring_eq(cur.concl->r, target->r), cur, {1});
  return cur;
}

Thm le_trans(const Thm& ab, const Thm& bc) {
  return apply("LeTrans", {{"x", ab.concl->l}, {"y", ab.concl->r}, {"z", bc.concl->r}}, {ab, bc});
}

Thm lt_le_trans(const Thm& ab, const Thm& bc) {
  return apply("LtLeTrans", {{"x", ab.concl->l}, {"y", ab.concl->r}, {"z", bc.concl->r}}, {ab, bc});
}

Thm le_lt_trans(const Thm& ab, const Thm& bc) {
  return apply("LeLtTrans", {{"x", ab.concl->l}, {"y", ab.concl->r}, {"z", bc.concl->r}}, {ab, bc});
}

Thm add_le(const Thm& ab, Term k, Term lhs, Term rhs) {
  Thm s = apply("AddMonoLe", {{"x", ab.concl->l}, {"y", ab.concl->r}, {"z", std::move(k)}}, {ab});
  return fit(s, lang::le(std::move(lhs), std::move(rhs)));
}

// ---- Chain -----------------------------------------------------------------

Chain::Chain(Term start) : Chain(std::move(start), kernel::Registry::standard()) {}

Chain::Chain(Term start, const kernel::Registry& reg) : start_(start), cur_(std::move(start)), reg_(reg) {}

Chain& Chain::push(kernel::RewriteStep s, std::vector<Thm> sides) {
  s.before = lang::subterm_at(cur_, s.position);
  kernel::RewriteResult r = kernel::apply_rewrite(s, reg_);
  if (!r.ok) throw Error("chain: " + r.message + " at " + path_str(s.position) + " of " + lang::print(cur_));
  for (std::size_t j = 0; j < r.side_conditions.size(); ++j) {
    const Formula& sc = r.side_conditions[j];
    s.side_conditions.push_back(sc);
    if (j < sides.size() && sides[j].proof) {
      same(sides[j].concl, sc, "chain side condition");
      s.side_proofs.push_back(sides[j].proof);
    } else {
      if (!lang::is_closed(sc) || !lang::eval_formula(sc, {}))
        throw Error("chain: side condition needs a proof: " + lang::print(sc));
      s.side_proofs.push_back(nullptr);
    }
  }
  cur_ = lang::replace_at(cur_, s.position, s.after);
  steps_.push_back(std::move(s));
  return *this;
}

Chain& Chain::step(kernel::Rule rule, Path at, Term after, std::vector<Thm> sides) {
  kernel::RewriteStep s;
  s.rule = rule;
  s.position = std::move(at);
  s.after = std::move(after);
  return push(std::move(s), std::move(sides));
}

Chain& Chain::step(kernel::Rule rule, Path at, std::string_view after, std::vector<Thm> sides) {
  return step(rule, std::move(at), T(after), std::move(sides));
}

Chain& Chain::shift(Path at, Term k, std::string_view after) {
  kernel::RewriteStep s;
  s.rule = kernel::Rule::IndexShift;
  s.position = std::move(at);
  s.after = T(after);
  s.shift = std::move(k);
  return push(std::move(s), {});
}

Chain& Chain::ring(Path at, std::string_view after) { return step(kernel::Rule::RingNormalize, std::move(at), after); }

Thm Chain::done() const {
  Formula goal = lang::eq(start_, cur_);
  return {kernel::rewrite(goal, steps_), goal};
}

}  // namespace explainer::build
