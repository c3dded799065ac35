#pragma once

// Helpers for assembling proofs together with their conclusions. Nothing
// here is trusted: every finished proof goes through kernel::check.

#include "expl/kernel.hpp"

#include <initializer_list>
#include <string>
#include <vector>

namespace explainer::build {

using kernel::Proof;
using lang::Formula;
using lang::Term;

Term T(std::string_view text);
Formula F(std::string_view text);

struct Thm {
  Proof proof;
  Formula concl;
};

Thm assume(const std::string& label, Formula f);
Thm by_compute(Formula f);
Thm axiom(const std::string& name, kernel::Instantiation inst,
          const kernel::Registry& reg = kernel::Registry::standard());
// Lemma reference; `statement` is what the registry holds under `name`.
Thm lemma_ref(const std::string& name, Formula statement);
Thm mp(const Thm& imp, const Thm& a);
// Axiom instance followed by modus ponens on each premise in turn.
Thm apply(const std::string& name, kernel::Instantiation inst, std::initializer_list<Thm> premises);

Thm and_i(const Thm& a, const Thm& b);
Thm and_l(const Thm& t);
Thm and_r(const Thm& t);
Thm imp_i(const std::string& label, Formula hyp, const Thm& body);
Thm forall_i(const std::string& var, const Thm& body, const std::string& label = "");
Thm forall_range_i(const std::string& var, Term lo, Term hi, const Thm& body, const std::string& label = "");
Thm forall_e(const Thm& u, Term witness);
Thm forall_e(const Thm& u, Term witness, const Thm& domain);
Thm induction(const std::string& var, const Thm& base, const Thm& step);
Thm case_split(const Thm& disj, const Thm& left, const Thm& right);
Thm eq_subst(const Thm& eq, const Thm& target, Path position);

// l = r by a single RingNormalize step.
Thm ring_eq(Term l, Term r);
// Chains equalities a = b, b = c, ... into a = z.
Thm trans(std::initializer_list<Thm> eqs);
// Rewrites both sides of an atomic statement into ring-equal forms.
Thm fit(const Thm& t, const Formula& target);

// Common inequality steps.
Thm le_trans(const Thm& ab, const Thm& bc);
Thm lt_le_trans(const Thm& ab, const Thm& bc);
Thm le_lt_trans(const Thm& ab, const Thm& bc);
// From a <= b derive a + k <= b + k reshaped to the given sides.
Thm add_le(const Thm& ab, Term k, Term lhs, Term rhs);

// Builds a RewriteChain step by step; `before` and side conditions are
// derived from the current term.
class Chain {
 public:
  explicit Chain(Term start);
  Chain(Term start, const kernel::Registry& reg);

  // Side proofs are matched to the rule's side conditions in order; missing
  // entries (or null proofs) are left to computation.
  Chain& step(kernel::Rule rule, Path at, Term after, std::vector<Thm> sides = {});
  Chain& step(kernel::Rule rule, Path at, std::string_view after, std::vector<Thm> sides = {});
  Chain& shift(Path at, Term k, std::string_view after);
  Chain& ring(Path at, std::string_view after);

  const Term& current() const { return cur_; }
  Thm done() const;

 private:
  Chain& push(kernel::RewriteStep s, std::vector<Thm> sides);

  Term start_;
  Term cur_;
  const kernel::Registry& reg_;
  std::vector<kernel::RewriteStep> steps_;
};

}  // namespace explainer::build
