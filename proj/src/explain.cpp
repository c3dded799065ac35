#include "expl/explain.hpp"

#include "expl/build.hpp"
#include "expl/numeral.hpp"
#include "expl/proof_io.hpp"

#include <json.hpp>

#include <algorithm>
#include <iomanip>
#include <map>
#include <numeric>
#include <sstream>

namespace explainer::explain {

namespace L = lang;
using kernel::ProofKind;
using kernel::sx_atom;
using kernel::sx_list;

// ---- templates and cuts ----------------------------------------------------

Formula Template::statement() const {
  return ranged() ? L::forall_range(param, lo, hi, schema_statement) : L::forall_nat(param, schema_statement);
}

Proof Template::proof() const {
  return ranged() ? kernel::forall_range_intro(param, lo, hi, schema_proof, label)
                  : kernel::forall_intro(param, schema_proof, label);
}

Proof Template::substituted(const Term& input) const {
  if (label.empty()) return kernel::substitute_proof(schema_proof, param, input);
  Formula dom = ranged() ? L::conj(L::le(lo, input), L::le(input, hi)) : L::le(L::lit(0), input);
  return kernel::substitute_proof(schema_proof, param, input, label, kernel::compute(dom));
}

namespace {

bool is_intro(const Proof& p) {
  return p && (p->kind == ProofKind::ForallIntro || p->kind == ProofKind::ForallRangeIntro);
}

Template template_of(const Proof& intro, const std::map<const kernel::ProofNode*, Formula>& concl) {
  Template t;
  t.param = intro->name;
  t.label = intro->label;
  if (intro->kind == ProofKind::ForallRangeIntro) {
    t.lo = intro->lo;
    t.hi = intro->hi;
  }
  t.schema_proof = intro->kids.at(0);
  auto it = concl.find(t.schema_proof.get());
  if (it != concl.end()) t.schema_statement = it->second;
  return t;
}

void collect_cuts(const Proof& p, Path& path, const std::map<const kernel::ProofNode*, Formula>& concl,
                  std::vector<Cut>& out) {
  if (!p) return;
  if (p->kind == ProofKind::ForallElim && !p->kids.empty() && is_intro(p->kids[0]))
    out.push_back({template_of(p->kids[0], concl), p->witness, path});
  auto kids = kernel::children(p);
  for (std::size_t i = 0; i < kids.size(); ++i) {
    path.push_back(static_cast<int>(i));
    collect_cuts(kids[i], path, concl, out);
    path.pop_back();
  }
}

}  // namespace

std::vector<Cut> detect_cuts(const Proof& p, const kernel::Registry* reg) {
  std::map<const kernel::ProofNode*, Formula> concl;
  kernel::CheckOptions opts;
  opts.registry = reg;
  opts.conclusions = &concl;
  try {
    kernel::conclusion(p, opts);
  } catch (const Error&) {
    // Statements stay unknown for the unchecked part.
  }
  std::vector<Cut> out;
  Path path;
  collect_cuts(p, path, concl, out);
  return out;
}

Template make_template(const Proof& intro, const kernel::Registry* reg) {
  if (!is_intro(intro)) throw Error("not a universal introduction");
  std::map<const kernel::ProofNode*, Formula> concl;
  kernel::CheckOptions opts;
  opts.registry = reg;
  opts.conclusions = &concl;
  kernel::conclusion(intro, opts);
  return template_of(intro, concl);
}

// ---- programs ---------------------------------------------------------------

std::string serialize(const ExplProgram& prog) {
  struct V {
    std::string operator()(const TemplateProgram& t) const { return kernel::write_proof(t.tmpl.proof()); }
    std::string operator()(const EnumGenerator& g) const {
      return kernel::write_sexpr(
          sx_list({sx_atom("enum"), sx_atom(g.var), sx_atom(g.lo.str()), sx_atom(g.hi.str()), sx_atom(L::print(g.body))}));
    }
    std::string operator()(const TraceProgram& t) const {
      return kernel::write_sexpr(sx_list({sx_atom("trace"), sx_atom(t.kind == TraceKind::Multiply ? "multiply" : "divide"),
                                          sx_atom(std::to_string(t.base))}));
    }
    std::string operator()(const WitnessMap& w) const {
      return kernel::write_sexpr(sx_list({sx_atom("witness"), sx_atom(w.input_var), sx_atom(L::print(w.input_predicate)),
                                          sx_atom(w.witness_fn), sx_atom(w.output_var),
                                          sx_atom(L::print(w.output_predicate))}));
    }
    std::string operator()(const ConstantProof& c) const { return kernel::write_proof(c.proof); }
    std::string operator()(const CentroidProgram&) const { return "(nearest-mean)"; }
  };
  return std::visit(V{}, prog);
}

ExplanationReport make_report(const std::string& program_text, std::uint64_t input_bytes, const std::string& target,
                              std::uint64_t run_steps, const Rational& alpha) {
  ExplanationReport r;
  r.target = target;
  r.program_bytes = program_text.size();
  r.input_bytes = input_bytes;
  r.statement_bytes = target.size();
  r.run_steps = run_steps;
  r.alpha = alpha;
  if (r.statement_bytes == 0) throw DomainError("empty statement");
  r.ratio = Rational(Integer(r.program_bytes + r.input_bytes), Integer(r.statement_bytes));
  r.passes_threshold = r.ratio <= alpha;
  return r;
}

Proof fit_to(const Proof& p, const Formula& concl, const Formula& target) {
  if (!target || L::alpha_equal(concl, target) || !concl->is_atom() || concl->kind != target->kind) return p;
  try {
    return build::fit({p, concl}, target).proof;
  } catch (const Error&) {
    return p;
  }
}

namespace {

struct Produced {
  Proof proof;
  std::uint64_t steps = 0;
};

std::pair<Integer, Integer> pair_of(const Term& t) {
  if (!t || t->kind != L::TermKind::Mul || t->kids[0]->kind != L::TermKind::IntLit ||
      t->kids[1]->kind != L::TermKind::IntLit)
    throw DomainError("trace input must be a pair a * b of literals");
  return {t->kids[0]->value, t->kids[1]->value};
}

Formula instance(const Formula& body, const std::string& var, const Term& t) { return L::replace_free(body, var, t); }

Produced produce(const ExplProgram& prog, const Term& input, const Formula& target) {
  struct V {
    const Term& in;
    const Formula& target;
    Produced operator()(const TemplateProgram& t) const {
      Proof p = kernel::forall_elim(t.tmpl.proof(), in);
      if (!t.tmpl.schema_statement) return {p, 1};
      return {fit_to(p, L::replace_free(t.tmpl.schema_statement, t.tmpl.param, in), target), 1};
    }
    Produced operator()(const EnumGenerator& g) const {
      std::vector<Proof> cases;
      for (Integer v = g.lo; v <= g.hi; ++v) cases.push_back(kernel::compute(instance(g.body, g.var, L::lit(v))));
      std::uint64_t n = cases.size();
      Proof en = kernel::range_enum(g.var, L::lit(g.lo), L::lit(g.hi), g.body, std::move(cases));
      return {kernel::forall_elim(en, in), n + 1};
    }
    Produced operator()(const TraceProgram& t) const {
      auto [a, b] = pair_of(in);
      if (t.kind == TraceKind::Multiply) {
        numeral::MultTrace tr = numeral::long_multiply_trace(a, b, t.base);
        std::uint64_t n = tr.result.size();
        for (const auto& row : tr.partial_rows) n += row.row.size();
        return {kernel::compute(L::eq(L::mul(L::lit(a), L::lit(b)), L::lit(tr.result.value()))), n};
      }
      numeral::DivTrace tr = numeral::long_divide_trace(a, b, t.base);
      Formula f = L::eq(L::lit(a), L::add(L::mul(L::lit(b), L::lit(tr.quotient)), L::lit(tr.remainder)));
      return {kernel::compute(f), tr.steps.size()};
    }
    Produced operator()(const WitnessMap& w) const {
      ExistentialResult r = explain_existential(w, in);
      return {r.proof, 2};
    }
    Produced operator()(const ConstantProof& c) const { return {c.proof, 0}; }
    Produced operator()(const CentroidProgram&) const {
      throw DomainError("the nearest-mean program runs through centroid_classify");
    }
  };
  return std::visit(V{input, target}, prog);
}

}  // namespace

RunResult run_explanation(const Explanation& e, const Formula& target, const Config& cfg) {
  if (cfg.step_limit < 1) throw DomainError("step limit must be at least 1");
  if (e.input && !L::is_closed(e.input)) throw DomainError("explanation input must be closed");
  Produced made = produce(e.program, e.input, target);
  kernel::CheckOptions opts;
  opts.step_limit = cfg.step_limit;
  opts.registry = cfg.registry;
  kernel::CheckReport rep = kernel::check(made.proof, target, opts);
  if (!rep.accepted) {
    if (rep.failure->message == "step limit exceeded") throw StepLimitExceeded("step limit exceeded");
    throw ProofMismatch(rep.failure->message);
  }
  std::uint64_t in_bytes = e.input ? L::size_bytes(e.input) : e.input_text.size();
  return {made.proof, make_report(serialize(e.program), in_bytes, L::print(target), rep.steps + made.steps, cfg.alpha)};
}


// ---- categories -------------------------------------------------------------

std::string category_name(Category c) {
  switch (c) {
    case Category::Explanatory: return "Explanatory";
    case Category::CaseAnalytic: return "CaseAnalytic";
    case Category::Opaque: return "Opaque";
  }
  return "?";
}

std::uint64_t max_cases(const Proof& p) {
  if (!p) return 0;
  std::uint64_t here = 0;
  if (p->kind == ProofKind::CaseSplit) here = 2;
  if (p->kind == ProofKind::RangeEnum) {
    try {
      Integer n = L::eval_term(p->hi, {}) - L::eval_term(p->lo, {}) + 1;
      here = n < 0 ? 0 : n > Integer(UINT64_MAX) ? UINT64_MAX : static_cast<std::uint64_t>(n);
    } catch (const Error&) {
      here = UINT64_MAX;
    }
  }
  for (const auto& k : kernel::children(p)) here = std::max(here, max_cases(k));
  return here;
}

namespace {

bool is_prefix(const Path& a, const Path& b) {
  return a.size() < b.size() && std::equal(a.begin(), a.end(), b.begin());
}

}  // namespace

ProofCategory classify_proof(const Proof& p, std::uint64_t k_max, const kernel::Registry* reg) {
  ProofCategory out;
  out.cuts = detect_cuts(p, reg);
  std::vector<Proof> general;
  // A universal introduction at the root encloses every cut.
  if (is_intro(p)) general.push_back(p);
  for (const auto& c : out.cuts) {
    if (is_intro(p)) break;
    bool nested = std::any_of(out.cuts.begin(), out.cuts.end(),
                              [&](const Cut& o) { return is_prefix(o.path, c.path); });
    if (!nested) general.push_back(c.tmpl.schema_proof);
  }
  if (general.empty()) {
    out.category = Category::Opaque;
    out.k = max_cases(p);
    return out;
  }
  out.k = UINT64_MAX;
  for (const auto& g : general) out.k = std::min(out.k, max_cases(g));
  out.category = out.k <= k_max ? Category::Explanatory : Category::CaseAnalytic;
  return out;
}

// ---- ordering ---------------------------------------------------------------

bool dominates(const ExplanationReport& a, const ExplanationReport& b) {
  std::uint64_t sa = a.program_bytes + a.input_bytes, sb = b.program_bytes + b.input_bytes;
  return sa <= sb && a.run_steps <= b.run_steps && (sa < sb || a.run_steps < b.run_steps);
}

std::vector<std::size_t> order_explanations(const std::vector<ExplanationReport>& rs) {
  for (const auto& r : rs)
    if (r.target != rs.front().target) throw DomainError("explanations of different statements cannot be ordered");
  std::vector<std::size_t> idx(rs.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) {
    std::uint64_t si = rs[i].program_bytes + rs[i].input_bytes, sj = rs[j].program_bytes + rs[j].input_bytes;
    if (si != sj) return si < sj;
    return rs[i].run_steps < rs[j].run_steps;
  });
  return idx;
}

// ---- existentials -----------------------------------------------------------

namespace {

std::map<std::string, WitnessFn>& witness_registry() {
  static std::map<std::string, WitnessFn> reg = [] {
    std::map<std::string, WitnessFn> m;
    m["identity"] = [](const Term& t) { return t; };
    m["book_shop"] = [](const Term& t) -> Term {
      Integer order = L::eval_term(t, {});
      for (const auto& [o, book] : book_shop_orders())
        if (o == order) return L::lit(book);
      throw PreconditionFalse("no order " + order.str());
    };
    return m;
  }();
  return reg;
}

}  // namespace

void register_witness_fn(const std::string& name, WitnessFn fn) { witness_registry()[name] = std::move(fn); }

const WitnessFn& witness_fn(const std::string& name) {
  auto& reg = witness_registry();
  auto it = reg.find(name);
  if (it == reg.end()) throw Error("unknown witness map " + name);
  return it->second;
}

const std::vector<std::pair<Integer, Integer>>& book_shop_orders() {
  static const std::vector<std::pair<Integer, Integer>> orders = {{3, 101}, {5, 202}, {8, 303}};
  return orders;
}

WitnessMap book_shop() {
  Formula placed, delivered;
  for (const auto& [o, b] : book_shop_orders()) {
    Formula po = L::eq(L::var("x"), L::lit(o)), pb = L::eq(L::var("y"), L::lit(b));
    placed = placed ? L::disj(placed, po) : po;
    delivered = delivered ? L::disj(delivered, pb) : pb;
  }
  return {"x", placed, "book_shop", "y", delivered};
}

ExistentialResult explain_existential(const WitnessMap& wm, const Term& input) {
  if (!input || !L::is_closed(input)) throw DomainError("input must be a closed term");
  Formula pre = L::replace_free(wm.input_predicate, wm.input_var, input);
  if (!L::eval_formula(pre, {})) throw PreconditionFalse("precondition fails: " + L::print(pre));
  Term w = L::lit(L::eval_term(witness_fn(wm.witness_fn)(input), {}));
  Formula post = L::replace_free(wm.output_predicate, wm.output_var, w);
  if (!L::eval_formula(post, {})) throw Error("witness map produced a bad witness: " + L::print(post));
  return {Explanation{wm, input, {}}, w, post, kernel::compute(post)};
}

// ---- output -----------------------------------------------------------------

namespace {

std::string rat_str(const Rational& r) {
  Integer n = numerator(r), d = denominator(r);
  return d == 1 ? n.str() : n.str() + "/" + d.str();
}

}  // namespace

std::string report_json(const ProofCategory* cat, const ExplanationReport& r, const Config& cfg) {
  nlohmann::ordered_json j;
  j["statement"] = r.target;
  if (cat) {
    j["category"] = category_name(cat->category);
    j["k"] = cat->k;
    j["cuts"] = nlohmann::json::array();
    for (const auto& c : cat->cuts) j["cuts"].push_back({{"input", L::print(c.input)}, {"path", path_str(c.path)}});
  }
  j["program_bytes"] = r.program_bytes;
  j["input_bytes"] = r.input_bytes;
  j["statement_bytes"] = r.statement_bytes;
  j["run_steps"] = r.run_steps;
  j["ratio"] = rat_str(r.ratio);
  j["passes_threshold"] = r.passes_threshold;
  j["alpha"] = rat_str(cfg.alpha);
  j["k_max"] = cfg.k_max;
  return j.dump(2) + "\n";
}

std::string report_text(const ProofCategory* cat, const ExplanationReport& r, const Config& cfg) {
  std::ostringstream o;
  auto row = [&](const std::string& k, const std::string& v) { o << std::left << std::setw(18) << k << v << "\n"; };
  row("statement", r.target);
  if (cat) {
    row("category", category_name(cat->category));
    row("k", std::to_string(cat->k));
    for (const auto& c : cat->cuts) row("cut", L::print(c.input) + " at " + path_str(c.path));
  }
  row("program_bytes", std::to_string(r.program_bytes));
  row("input_bytes", std::to_string(r.input_bytes));
  row("statement_bytes", std::to_string(r.statement_bytes));
  row("run_steps", std::to_string(r.run_steps));
  row("ratio", rat_str(r.ratio));
  row("passes_threshold", r.passes_threshold ? "true" : "false");
  row("alpha", rat_str(cfg.alpha));
  row("k_max", std::to_string(cfg.k_max));
  return o.str();
}

}  // namespace explainer::explain
