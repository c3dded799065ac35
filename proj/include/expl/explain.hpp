#pragma once

// Explanations as (program, input) pairs: cut detection, proof categories,
// size/cost reports and their ordering.

#include "expl/kernel.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace explainer::explain {

using kernel::Proof;
using lang::Formula;
using lang::Term;

struct Config {
  Rational alpha = 1;
  std::uint64_t k_max = 12;
  std::uint64_t step_limit = 10'000'000;
  // Resolves lemma references; the standard axioms when null.
  const kernel::Registry* registry = nullptr;
};

// A generic proof pi[x] of A[x]; lo/hi are set for a range parameter.
struct Template {
  std::string param;
  std::string label;  // hypothesis naming the parameter's domain, if any
  Term lo, hi;
  Formula schema_statement;
  Proof schema_proof;

  bool ranged() const { return lo != nullptr; }
  // forall x . A[x], or the range form.
  Formula statement() const;
  // The introduction node closing over pi[x].
  Proof proof() const;
  // pi[t] with the domain hypothesis discharged by computation.
  Proof substituted(const Term& input) const;
};

// Template of a closed ForallIntro/ForallRangeIntro proof; throws Error
// otherwise.
Template make_template(const Proof& intro, const kernel::Registry* reg = nullptr);

// p proves concl; when target is an atom of the same kind whose sides are
// ring-equal to concl's, rewrites p into a proof of target. Otherwise
// returns p unchanged.
Proof fit_to(const Proof& p, const Formula& concl, const Formula& target);

struct Cut {
  Template tmpl;
  Term input;
  Path path;
};

// Every ForallElim applied directly to a ForallIntro/ForallRangeIntro,
// outermost first. Statements come from checking p; if p does not check,
// a template's schema_statement may be null.
std::vector<Cut> detect_cuts(const Proof& p, const kernel::Registry* reg = nullptr);

// ---- programs -------------------------------------------------------------

struct TemplateProgram {
  Template tmpl;
};

// Proves body[input] from a range enumeration over [lo, hi].
struct EnumGenerator {
  std::string var;
  Integer lo, hi;
  Formula body;
};

enum class TraceKind { Multiply, Divide };

// Input is the pair a * b. Multiply proves a * b = product, divide proves
// a = b * quotient + remainder.
struct TraceProgram {
  TraceKind kind;
  int base = 10;
};

// From A[input], produce the witness y = fn(input) and a proof of B[y].
struct WitnessMap {
  std::string input_var;
  Formula input_predicate;
  std::string witness_fn;
  std::string output_var;
  Formula output_predicate;
};

// A proof without input; used for proofs that have no cut.
struct ConstantProof {
  Proof proof;
};

// The fixed nearest-mean classifier; see centroid.hpp.
struct CentroidProgram {};

using ExplProgram = std::variant<TemplateProgram, EnumGenerator, TraceProgram, WitnessMap, ConstantProof, CentroidProgram>;

// Canonical text of a program; program_bytes is its length.
std::string serialize(const ExplProgram& prog);

struct Explanation {
  ExplProgram program;
  Term input;              // closed
  std::string input_text;  // used instead of `input` when the input is not a term
};

struct ExplanationReport {
  std::string target;
  std::uint64_t program_bytes = 0;
  std::uint64_t input_bytes = 0;
  std::uint64_t statement_bytes = 0;
  std::uint64_t run_steps = 0;
  Rational ratio;
  bool passes_threshold = false;
  Rational alpha = 1;
};

ExplanationReport make_report(const std::string& program_text, std::uint64_t input_bytes, const std::string& target,
                              std::uint64_t run_steps, const Rational& alpha);

class StepLimitExceeded : public Error {
 public:
  using Error::Error;
};

class ProofMismatch : public Error {
 public:
  using Error::Error;
};

class PreconditionFalse : public Error {
 public:
  using Error::Error;
};

struct RunResult {
  Proof proof;
  ExplanationReport report;
};

// Runs the program on the input, checks the result against target.
RunResult run_explanation(const Explanation& e, const Formula& target, const Config& cfg = {});

// ---- categories -----------------------------------------------------------

enum class Category { Explanatory, CaseAnalytic, Opaque };

std::string category_name(Category c);

struct ProofCategory {
  Category category = Category::Opaque;
  // Largest case count inside the chosen general proof (RangeEnum cases,
  // 2 per CaseSplit).
  std::uint64_t k = 0;
  std::vector<Cut> cuts;
};

// Largest case count anywhere in p.
std::uint64_t max_cases(const Proof& p);

// The general proof considered is p itself when it is a universal
// introduction, else each outermost cut's template.
ProofCategory classify_proof(const Proof& p, std::uint64_t k_max = 12, const kernel::Registry* reg = nullptr);

// ---- ordering -------------------------------------------------------------

// No worse on (program_bytes + input_bytes, run_steps), better on one.
bool dominates(const ExplanationReport& a, const ExplanationReport& b);

// Indices by (size, steps, position). Throws DomainError on mixed targets.
std::vector<std::size_t> order_explanations(const std::vector<ExplanationReport>& rs);

// ---- existentials ---------------------------------------------------------

using WitnessFn = std::function<Term(const Term&)>;

void register_witness_fn(const std::string& name, WitnessFn fn);
// Throws Error for unknown names. "identity" and "book_shop" are built in.
const WitnessFn& witness_fn(const std::string& name);

// Toy order table for the "book_shop" map: order number -> book number.
const std::vector<std::pair<Integer, Integer>>& book_shop_orders();
// "order x placed" and "book y delivered" over that table.
WitnessMap book_shop();

struct ExistentialResult {
  Explanation explanation;
  Term witness;
  Formula statement;  // B[witness]
  Proof proof;
};

ExistentialResult explain_existential(const WitnessMap& wm, const Term& input);

// ---- output ---------------------------------------------------------------

std::string report_json(const ProofCategory* cat, const ExplanationReport& r, const Config& cfg);
std::string report_text(const ProofCategory* cat, const ExplanationReport& r, const Config& cfg);

}  // namespace explainer::explain
