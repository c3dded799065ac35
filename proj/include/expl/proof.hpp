#pragma once

// Proof objects. A proof is an immutable tree; the kernel infers its
// conclusion, the builders below only assemble nodes.

#include "expl/lang.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace explainer::kernel {

using lang::Formula;
using lang::Term;

enum class ProofKind {
  Compute,
  Axiom,
  ForallIntro,
  ForallRangeIntro,
  ForallElim,
  RangeEnum,
  Induction,
  ImpIntro,
  ImpElim,
  Hyp,
  AndIntro,
  AndElimL,
  AndElimR,
  CaseSplit,
  Rewrite,
  EqSubst,
};

enum class Rule {
  Distribute,
  Factor,
  SumLinearity,
  SumSplitLast,
  SumSplitFirst,
  IndexShift,
  Telescope,
  PowAddExp,
  RingNormalize,
  LemmaRewrite,
};

std::string rule_name(Rule r);
std::optional<Rule> rule_from_name(std::string_view name);

using Instantiation = std::map<std::string, Term>;

class ProofNode;
using Proof = std::shared_ptr<const ProofNode>;

struct RewriteStep {
  Rule rule = Rule::RingNormalize;
  Path position;  // into the current left-hand side
  Term before;
  Term after;
  Term shift;                 // IndexShift
  std::string lemma;          // LemmaRewrite
  Instantiation inst;         // LemmaRewrite
  std::vector<Formula> side_conditions;
  std::vector<Proof> side_proofs;  // parallel to side_conditions; null = compute
};

class ProofNode {
 public:
  ProofKind kind;
  // Compute goal, ImpIntro hypothesis, RangeEnum body, Rewrite goal.
  Formula formula;
  // Axiom or lemma name, quantified variable, ImpIntro/Hyp label.
  std::string name;
  // Hypothesis label introduced by ForallIntro/ForallRangeIntro; empty if none.
  std::string label;
  Term lo, hi;    // ForallRangeIntro, RangeEnum
  Term witness;   // ForallElim
  Instantiation inst;
  // Sub-proofs: ForallElim (universal, [domain]); Induction (base, step);
  // ImpElim (implication, antecedent); CaseSplit (disjunction, left, right);
  // EqSubst (equality, target); RangeEnum cases; otherwise the single body.
  std::vector<Proof> kids;
  std::vector<RewriteStep> steps;
  Path position;           // EqSubst
  bool generated = false;  // RangeEnum: cases come from the compute generator
};

Proof compute(Formula goal);
Proof axiom(std::string name, Instantiation inst = {});
Proof forall_intro(std::string var, Proof body, std::string label = "");
Proof forall_range_intro(std::string var, Term lo, Term hi, Proof body, std::string label = "");
Proof forall_elim(Proof universal, Term witness, Proof domain = nullptr);
Proof range_enum(std::string var, Term lo, Term hi, Formula body, std::vector<Proof> cases);
Proof range_enum_generated(std::string var, Term lo, Term hi, Formula body);
Proof induction(std::string var, Proof base, Proof step);
Proof imp_intro(std::string label, Formula hyp, Proof body);
Proof imp_elim(Proof implication, Proof antecedent);
Proof hyp(std::string label);
Proof and_intro(Proof l, Proof r);
Proof and_elim_l(Proof p);
Proof and_elim_r(Proof p);
Proof case_split(Proof disjunction, Proof left, Proof right);
Proof rewrite(Formula goal, std::vector<RewriteStep> steps);
Proof eq_subst(Proof equality, Proof target, Path position);

// Sub-proofs in path order (rewrite side proofs after kids).
std::vector<Proof> children(const Proof& p);
std::size_t node_count(const Proof& p);
std::size_t count_kind(const Proof& p, ProofKind k);
const ProofNode& node_at(const Proof& p, const Path& path);

// π[var := t]: substitutes t for the free variable in every formula and term
// of the proof. References to `hyp_label` become `hyp_proof` when given.
Proof substitute_proof(const Proof& p, const std::string& var, const Term& t,
                       const std::string& hyp_label = "", const Proof& hyp_proof = nullptr);

}  // namespace explainer::kernel
