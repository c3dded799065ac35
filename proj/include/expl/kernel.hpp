#pragma once

// The trusted checker.

#include "expl/proof.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace explainer::kernel {

class KernelError : public Error {
 public:
  KernelError(const std::string& msg, Path path = {}) : Error(msg), path_(std::move(path)) {}
  const Path& path() const { return path_; }

 private:
  Path path_;
};

// Axiom schemas (free variables are schema variables) and checked lemmas.
class Registry {
 public:
  static const Registry& standard();

  struct Axiom {
    Formula schema;
    std::vector<std::string> vars;
  };

  const Axiom* axiom(const std::string& name) const;
  const Formula* lemma(const std::string& name) const;
  const std::map<std::string, Axiom>& axioms() const { return axioms_; }
  const std::map<std::string, Formula>& lemmas() const { return lemmas_; }

  // Adds a lemma statement; callers register only statements they checked.
  void add_lemma(const std::string& name, Formula statement);

  // Instance of an axiom schema; throws KernelError on a bad instantiation.
  Formula instantiate(const std::string& name, const Instantiation& inst) const;

 private:
  std::map<std::string, Axiom> axioms_;
  std::map<std::string, Formula> lemmas_;
};

struct CheckReport {
  bool accepted = false;
  std::uint64_t steps = 0;
  struct Failure {
    Path path;
    std::string message;
  };
  std::optional<Failure> failure;
};

struct CheckOptions {
  const Registry* registry = nullptr;  // standard registry when null
  std::optional<std::uint64_t> step_limit;
  // When set, receives the conclusion of every checked node.
  std::map<const ProofNode*, Formula>* conclusions = nullptr;
};

CheckReport check(const Proof& p, const Formula& goal, const CheckOptions& opts = {});

// Conclusion of a closed proof (no open hypotheses); throws KernelError.
Formula conclusion(const Proof& p, const CheckOptions& opts = {});

struct RewriteResult {
  bool ok = false;
  std::string message;
  std::vector<Formula> side_conditions;
};

// Checks that `step.rule` turns step.before into step.after and returns the
// side conditions the rule requires.
RewriteResult apply_rewrite(const RewriteStep& step, const Registry& reg = Registry::standard());

// One compute leaf per value of var in [lo, hi] for a quantifier-free body.
std::vector<Proof> expand_range_enum(const std::string& var, const Integer& lo, const Integer& hi,
                                     const Formula& body, const std::string& generator = "compute");

}  // namespace explainer::kernel
