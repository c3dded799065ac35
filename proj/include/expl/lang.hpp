#pragma once

// Statement language: integer terms with bounded sums and first-order
// formulas with unbounded and range quantifiers.

#include "expl/common.hpp"

#include <array>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>

namespace explainer::lang {

enum class TermKind { IntLit, Var, Add, Sub, Mul, Pow, Sum };

class TermNode;
using Term = std::shared_ptr<const TermNode>;

class TermNode {
 public:
  TermKind kind;
  Integer value;      // IntLit
  std::string name;   // Var name, Sum index
  std::array<Term, 3> kids;  // binary: l, r; Sum: lo, hi, body

  int arity() const;
  const Term& child(int i) const;
};

Term lit(Integer v);
Term var(std::string name);
Term add(Term l, Term r);
Term sub(Term l, Term r);
Term mul(Term l, Term r);
Term pow(Term base, Term exp);
// Σ_{index=lo}^{hi} body; lo and hi must not mention index.
Term sum(std::string index, Term lo, Term hi, Term body);

enum class FormulaKind {
  Eq, Neq, Le, Lt,
  And, Or, Not, Implies,
  ForallNat, ForallRange, ExistsNat, ExistsRange
};

class FormulaNode;
using Formula = std::shared_ptr<const FormulaNode>;

class FormulaNode {
 public:
  FormulaKind kind;
  std::string var;  // bound variable of quantifiers
  Term l, r;        // atom operands, or range bounds lo/hi
  Formula f, g;     // connective operands, quantifier body in f

  bool is_atom() const;
  bool is_quantifier() const;
  bool is_range() const;
  // Children by position index: atoms (l, r); binary connectives (f, g);
  // Not and unbounded quantifiers (f); range quantifiers (lo, hi, f).
  int arity() const;
  bool child_is_term(int i) const;
};

Formula atom(FormulaKind kind, Term l, Term r);
Formula eq(Term l, Term r);
Formula neq(Term l, Term r);
Formula le(Term l, Term r);
Formula lt(Term l, Term r);
Formula conj(Formula a, Formula b);
Formula disj(Formula a, Formula b);
Formula neg(Formula a);
Formula implies(Formula a, Formula b);
Formula forall_nat(std::string v, Formula body);
Formula forall_range(std::string v, Term lo, Term hi, Formula body);
Formula exists_nat(std::string v, Formula body);
Formula exists_range(std::string v, Term lo, Term hi, Formula body);

// ---- printing -----------------------------------------------------------

std::string print(const Term& t);
std::string print(const Formula& f);
std::size_t size_bytes(const Term& t);
std::size_t size_bytes(const Formula& f);

// ---- parsing ------------------------------------------------------------

Term parse_term(std::string_view text);
Formula parse_formula(std::string_view text);

// ---- structure ----------------------------------------------------------

std::set<std::string> free_vars(const Term& t);
std::set<std::string> free_vars(const Formula& f);
bool occurs_free(const std::string& v, const Term& t);
bool occurs_free(const std::string& v, const Formula& f);
bool is_closed(const Term& t);
bool is_closed(const Formula& f);

// Alpha-equivalence (bound names are irrelevant).
bool alpha_equal(const Term& a, const Term& b);
bool alpha_equal(const Formula& a, const Formula& b);

// Printed form with bound variables renamed by binding depth; equal keys
// iff alpha-equivalent.
std::string canonical_key(const Term& t);

// Capture-avoiding substitution of a closed term.
Term substitute(const Term& t, const std::string& v, const Term& by);
Formula substitute(const Formula& f, const std::string& v, const Term& by);

// Substitution of a possibly open term; throws Error if a binder would
// capture a free variable of `by`.
Term replace_free(const Term& t, const std::string& v, const Term& by);
Formula replace_free(const Formula& f, const std::string& v, const Term& by);

// Subterm access by path. For formulas the path walks connectives first and
// must end inside a term.
Term subterm_at(const Term& t, const Path& path);
Term subterm_at(const Formula& f, const Path& path);
Term replace_at(const Term& t, const Path& path, const Term& by);
Formula replace_at(const Formula& f, const Path& path, const Term& by);
// Variables bound by Sum or quantifier binders strictly above `path`.
std::set<std::string> binders_along(const Term& t, const Path& path);
std::set<std::string> binders_along(const Formula& f, const Path& path);

// ---- evaluation ---------------------------------------------------------

using Env = std::map<std::string, Integer>;

Integer eval_term(const Term& t, const Env& env);
// Only range quantifiers evaluate; unbounded ones always raise EvalError.
// The flag is kept for interface compatibility and has no other effect.
bool eval_formula(const Formula& f, const Env& env, bool range_only = true);

}  // namespace explainer::lang
