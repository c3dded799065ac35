#include "expl/proof.hpp"

#include <array>

namespace explainer::kernel {

namespace {

constexpr std::array<std::pair<Rule, std::string_view>, 10> kRuleNames{{
    {Rule::Distribute, "Distribute"},
    {Rule::Factor, "Factor"},
    {Rule::SumLinearity, "SumLinearity"},
    {Rule::SumSplitLast, "SumSplitLast"},
    {Rule::SumSplitFirst, "SumSplitFirst"},
    {Rule::IndexShift, "IndexShift"},
    {Rule::Telescope, "Telescope"},
    {Rule::PowAddExp, "PowAddExp"},
    {Rule::RingNormalize, "RingNormalize"},
    {Rule::LemmaRewrite, "LemmaRewrite"},
}};

std::shared_ptr<ProofNode> make(ProofKind k) {
  auto n = std::make_shared<ProofNode>();
  n->kind = k;
  return n;
}

}  // namespace

std::string rule_name(Rule r) {
  for (const auto& [rule, name] : kRuleNames)
    if (rule == r) return std::string(name);
  return "?";
}

std::optional<Rule> rule_from_name(std::string_view name) {
  for (const auto& [rule, n] : kRuleNames)
    if (n == name) return rule;
  return std::nullopt;
}

Proof compute(Formula goal) {
  auto n = make(ProofKind::Compute);
  n->formula = std::move(goal);
  return n;
}

Proof axiom(std::string name, Instantiation inst) {
  auto n = make(ProofKind::Axiom);
  n->name = std::move(name);
  n->inst = std::move(inst);
  return n;
}

Proof forall_intro(std::string var, Proof body, std::string label) {
  auto n = make(ProofKind::ForallIntro);
  n->name = std::move(var);
  n->label = std::move(label);
  n->kids = {std::move(body)};
  return n;
}

Proof forall_range_intro(std::string var, Term lo, Term hi, Proof body, std::string label) {
  auto n = make(ProofKind::ForallRangeIntro);
  n->name = std::move(var);
  n->lo = std::move(lo);
  n->hi = std::move(hi);
  n->label = std::move(label);
  n->kids = {std::move(body)};
  return n;
}

Proof forall_elim(Proof universal, Term witness, Proof domain) {
  auto n = make(ProofKind::ForallElim);
  n->witness = std::move(witness);
  n->kids = {std::move(universal)};
  if (domain) n->kids.push_back(std::move(domain));
  return n;
}

Proof range_enum(std::string var, Term lo, Term hi, Formula body, std::vector<Proof> cases) {
  auto n = make(ProofKind::RangeEnum);
  n->name = std::move(var);
  n->lo = std::move(lo);
  n->hi = std::move(hi);
  n->formula = std::move(body);
  n->kids = std::move(cases);
  return n;
}

Proof range_enum_generated(std::string var, Term lo, Term hi, Formula body) {
  auto n = make(ProofKind::RangeEnum);
  n->name = std::move(var);
  n->lo = std::move(lo);
  n->hi = std::move(hi);
  n->formula = std::move(body);
  n->generated = true;
  return n;
}

Proof induction(std::string var, Proof base, Proof step) {
  auto n = make(ProofKind::Induction);
  n->name = std::move(var);
  n->kids = {std::move(base), std::move(step)};
  return n;
}

Proof imp_intro(std::string label, Formula hyp, Proof body) {
  auto n = make(ProofKind::ImpIntro);
  n->name = std::move(label);
  n->formula = std::move(hyp);
  n->kids = {std::move(body)};
  return n;
}

Proof imp_elim(Proof implication, Proof antecedent) {
  auto n = make(ProofKind::ImpElim);
  n->kids = {std::move(implication), std::move(antecedent)};
  return n;
}

Proof hyp(std::string label) {
  auto n = make(ProofKind::Hyp);
  n->name = std::move(label);
  return n;
}

Proof and_intro(Proof l, Proof r) {
  auto n = make(ProofKind::AndIntro);
  n->kids = {std::move(l), std::move(r)};
  return n;
}

Proof and_elim_l(Proof p) {
  auto n = make(ProofKind::AndElimL);
  n->kids = {std::move(p)};
  return n;
}

Proof and_elim_r(Proof p) {
  auto n = make(ProofKind::AndElimR);
  n->kids = {std::move(p)};
  return n;
}

Proof case_split(Proof disjunction, Proof left, Proof right) {
  auto n = make(ProofKind::CaseSplit);
  n->kids = {std::move(disjunction), std::move(left), std::move(right)};
  return n;
}

Proof rewrite(Formula goal, std::vector<RewriteStep> steps) {
  auto n = make(ProofKind::Rewrite);
  n->formula = std::move(goal);
  n->steps = std::move(steps);
  return n;
}

Proof eq_subst(Proof equality, Proof target, Path position) {
  auto n = make(ProofKind::EqSubst);
  n->kids = {std::move(equality), std::move(target)};
  n->position = std::move(position);
  return n;
}

std::vector<Proof> children(const Proof& p) {
  std::vector<Proof> out = p->kids;
  for (const auto& s : p->steps)
    for (const auto& sp : s.side_proofs)
      if (sp) out.push_back(sp);
  return out;
}

std::size_t node_count(const Proof& p) {
  std::size_t n = 1;
  for (const auto& c : children(p)) n += node_count(c);
  return n;
}

std::size_t count_kind(const Proof& p, ProofKind k) {
  std::size_t n = p->kind == k ? 1 : 0;
  for (const auto& c : children(p)) n += count_kind(c, k);
  return n;
}

const ProofNode& node_at(const Proof& p, const Path& path) {
  Proof cur = p;
  for (int i : path) {
    auto cs = children(cur);
    if (i < 0 || static_cast<std::size_t>(i) >= cs.size()) throw Error("proof path out of range");
    cur = cs[static_cast<std::size_t>(i)];
  }
  return *cur;
}

namespace {

struct Subst {
  const std::string& var;
  const Term& t;
  const Proof& hyp_proof;

  Term term(const Term& x) const { return x ? lang::replace_free(x, var, t) : x; }
  Formula formula(const Formula& f) const { return f ? lang::replace_free(f, var, t) : f; }

  Proof run(const Proof& p, const std::string& label) const {
    if (p->kind == ProofKind::Hyp && !label.empty() && p->name == label) return hyp_proof;
    auto n = std::make_shared<ProofNode>(*p);
    bool binds = (p->kind == ProofKind::ForallIntro || p->kind == ProofKind::ForallRangeIntro ||
                  p->kind == ProofKind::Induction) &&
                 p->name == var;
    std::string inner = label;
    if (p->kind == ProofKind::ImpIntro && p->name == label) inner.clear();
    if (!p->label.empty() && p->label == label) inner.clear();

    n->lo = term(p->lo);
    n->hi = term(p->hi);
    n->witness = term(p->witness);
    for (auto& [k, v] : n->inst) v = term(v);
    if (p->kind == ProofKind::RangeEnum) {
      if (p->name != var) n->formula = formula(p->formula);
    } else {
      n->formula = formula(p->formula);
    }
    if (binds) {
      // The variable is rebound below this node; only an induction base
      // can still mention the outer one.
      if (p->kind == ProofKind::Induction) n->kids[0] = run(p->kids[0], inner);
      return n;
    }
    for (auto& k : n->kids) k = run(k, inner);
    for (auto& s : n->steps) {
      s.before = term(s.before);
      s.after = term(s.after);
      s.shift = term(s.shift);
      for (auto& [k, v] : s.inst) v = term(v);
      for (auto& f : s.side_conditions) f = formula(f);
      for (auto& sp : s.side_proofs)
        if (sp) sp = run(sp, inner);
    }
    return n;
  }
};

}  // namespace

Proof substitute_proof(const Proof& p, const std::string& var, const Term& t,
                       const std::string& hyp_label, const Proof& hyp_proof) {
  Subst s{var, t, hyp_proof};
  return s.run(p, hyp_proof ? hyp_label : std::string());
}

}  // namespace explainer::kernel
