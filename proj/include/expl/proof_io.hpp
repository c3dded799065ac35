#pragma once

// S-expression text format for proofs.
//
//   (compute "<formula>")
//   (axiom NAME (VAR "<term>") ...)
//   (forall-intro VAR [LABEL] PROOF)
//   (forall-range-intro VAR LO HI [LABEL] PROOF)
//   (forall-elim PROOF WITNESS [DOMAIN-PROOF])
//   (range-enum VAR LO HI "<body>" PROOF ...)
//   (range-enum-gen VAR LO HI "<body>" compute)
//   (induction VAR BASE STEP)
//   (imp-intro LABEL "<hyp>" PROOF)   (imp-elim PROOF PROOF)   (hyp LABEL)
//   (and-intro PROOF PROOF)   (and-elim-l PROOF)   (and-elim-r PROOF)
//   (case-split DISJ LEFT RIGHT)
//   (rewrite "<l = r>" (step RULE (at I ...) "<before>" "<after>"
//                        [(shift "<k>")] [(lemma NAME (VAR "<term>") ...)]
//                        [(side "<formula>" [PROOF])] ...) ...)
//   (eq-subst EQ-PROOF TARGET-PROOF (at I ...))
//
// Atoms made of letters, digits, '_', '\'' and '-' are written bare,
// anything else as a double-quoted string.

#include "expl/proof.hpp"

#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace explainer::kernel {

struct SExpr {
  bool is_list = false;
  bool quoted = false;
  std::string atom;
  std::vector<SExpr> items;
  int line = 1;
  int column = 1;
};

std::vector<SExpr> parse_sexprs(std::string_view text);
SExpr parse_sexpr(std::string_view text);
std::string write_sexpr(const SExpr& e, bool pretty = false);

SExpr to_sexpr(const Proof& p);
Proof from_sexpr(const SExpr& e);

// Compact single-line form unless `pretty`.
std::string write_proof(const Proof& p, bool pretty = false);
Proof read_proof(std::string_view text);

SExpr sx_atom(std::string text);
SExpr sx_list(std::vector<SExpr> items);

}  // namespace explainer::kernel
