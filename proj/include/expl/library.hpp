#pragma once

// Kernel-checked lemmas about repunits, repdigits and the long division of
// 111111111 by 9.

#include "expl/kernel.hpp"

#include <string>
#include <vector>

namespace explainer::library {

using kernel::Proof;
using lang::Formula;

struct LemmaEntry {
  std::string name;
  Formula statement;
  Proof proof;
  std::vector<std::string> tags;
};

// forall b . 2 <= b => (Σ_{i=0}^{b-2} (b-2-i) b^i + 1) (b-1) = Σ_{i=0}^{b-2} b^i
LemmaEntry repunit_core();
// forall x m . 1 <= m => forall p . Σ_{i<m} x^i Σ_{j<p} x^(mj) = Σ_{k<mp} x^k
LemmaEntry geom_merge();
// forall b . 2 <= b => forall p . 1 <= p => (...) Σ_{j<p} b^((b-1)j) (b-1) = Σ_{k<(b-1)p} b^k
LemmaEntry repunit_general();
// forall n in [1, 9] . 12345679 * 9 * n = 111111111 * n
LemmaEntry digit_scaling();
// (forall n in [1, 7] . 10n + 1 = 9n + (n + 1) /\ n + 1 < 9) /\ 10 * 8 + 1 = 9 * 9 + 0
LemmaEntry division_invariant_core();

// Freshly built entries in dependency order.
std::vector<LemmaEntry> build_all();

class Library {
 public:
  // The built-in lemmas, checked once on first use; throws if any is rejected.
  static const Library& builtin();
  // Lemma files from a directory, each re-checked; throws on rejection.
  static Library load(const std::string& dir);

  const kernel::Registry& registry() const { return registry_; }
  const std::vector<LemmaEntry>& entries() const { return entries_; }
  const LemmaEntry& get(const std::string& name) const;

 private:
  void admit(LemmaEntry e);

  kernel::Registry registry_ = kernel::Registry::standard();
  std::vector<LemmaEntry> entries_;
};

std::string write_lemma(const LemmaEntry& e);
LemmaEntry read_lemma(std::string_view text);
// Writes <dir>/<name>.sexp for each built-in lemma; returns the paths.
std::vector<std::string> export_lemmas(const std::string& dir);

}  // namespace explainer::library
