#include "expl/cli.hpp"

#include "expl/centroid.hpp"
#include "expl/dioph.hpp"
#include "expl/explain.hpp"
#include "expl/library.hpp"
#include "expl/numeral.hpp"
#include "expl/proof_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace explainer::cli {

namespace {

using nlohmann::ordered_json;

// Failures that map to exit code 2.
class Rejected : public Error {
 public:
  using Error::Error;
};

struct Options {
  bool json = false;
  std::string alpha = "1";
  std::uint64_t kmax = 12;
  std::uint64_t step_limit = 10'000'000;
  std::string mode = "enum";
  int reps = 1;
  int base = 10;
  int digit = 0;
  std::string out;
  std::string goal;
  std::string file;
  std::string poly;
  std::vector<std::string> operands;
  std::string lemma, trace, witness, input, dir, data, query;
};

Rational parse_alpha(const std::string& s) {
  auto dot = s.find('.');
  if (dot == std::string::npos) return centroid::parse_rational(s);
  std::string digits = s.substr(0, dot) + s.substr(dot + 1);
  Integer den = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(s.size() - dot - 1));
  return Rational(centroid::parse_rational(digits.empty() ? "0" : digits)) / Rational(den);
}

explain::Config config(const Options& o) {
  explain::Config c;
  c.alpha = parse_alpha(o.alpha);
  c.k_max = o.kmax;
  c.step_limit = o.step_limit;
  c.registry = &library::Library::builtin().registry();
  return c;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot read " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  f << text;
  if (!f) throw Error("cannot write " + path);
}

// Prints key/value rows as text or as one JSON object.
class Table {
 public:
  void add(const std::string& k, ordered_json v) { rows_.emplace_back(k, std::move(v)); }
  void print(std::ostream& out, bool json) const {
    if (json) {
      ordered_json j = ordered_json::object();
      for (const auto& [k, v] : rows_) {
        if (j.contains(k)) {
          if (!j[k].is_array()) j[k] = ordered_json::array({j[k]});
          j[k].push_back(v);
        } else {
          j[k] = v;
        }
      }
      out << j.dump(2) << "\n";
      return;
    }
    for (const auto& [k, v] : rows_)
      out << std::left << std::setw(18) << k << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
  }

 private:
  std::vector<std::pair<std::string, ordered_json>> rows_;
};

std::string rat_str(const Rational& r) {
  Integer n = numerator(r), d = denominator(r);
  return d == 1 ? n.str() : n.str() + "/" + d.str();
}

Integer parse_numeral(const std::string& s, int base) { return numeral::Digits::parse(s, base).value(); }

// ---- numeric commands -------------------------------------------------------

int cmd_trick(const Options& o, std::ostream& out) {
  numeral::TrickTable t = numeral::trick_table(o.base, o.digit, o.reps);
  if (o.json) {
    Table tab;
    tab.add("statement", lang::print(t.statement));
    tab.add("multiplicand", numeral::to_digits(t.trace.multiplicand, o.base).str());
    tab.add("multiplier", numeral::to_digits(t.trace.multiplier, o.base).str());
    tab.add("result", t.trace.result.str());
    tab.print(out, true);
  } else {
    out << numeral::render(t.trace);
  }
  return 0;
}

int cmd_multiply(const Options& o, std::ostream& out) {
  if (o.operands.size() != 2) throw DomainError("multiply takes two numerals");
  numeral::MultTrace t =
      numeral::long_multiply_trace(parse_numeral(o.operands[0], o.base), parse_numeral(o.operands[1], o.base), o.base);
  if (o.json) {
    Table tab;
    ordered_json rows = ordered_json::array();
    for (const auto& r : t.partial_rows) rows.push_back({{"shift", r.shift}, {"row", r.row.str()}});
    tab.add("rows", rows);
    tab.add("result", t.result.str());
    tab.print(out, true);
  } else {
    out << numeral::render(t);
  }
  return 0;
}

int cmd_divide(const Options& o, std::ostream& out) {
  if (o.operands.size() != 2) throw DomainError("divide takes two numerals");
  numeral::DivTrace t =
      numeral::long_divide_trace(parse_numeral(o.operands[0], o.base), parse_numeral(o.operands[1], o.base), o.base);
  if (o.json) {
    Table tab;
    ordered_json steps = ordered_json::array();
    for (const auto& s : t.steps)
      steps.push_back({{"partial_dividend", s.partial_dividend.str()},
                       {"quotient_digit", s.quotient_digit},
                       {"partial_remainder", s.partial_remainder.str()}});
    tab.add("steps", steps);
    tab.add("quotient", numeral::to_digits(t.quotient, o.base).str());
    tab.add("remainder", numeral::to_digits(t.remainder, o.base).str());
    tab.print(out, true);
  } else {
    out << numeral::render(t);
  }
  return 0;
}

// ---- proofs -----------------------------------------------------------------

struct Loaded {
  kernel::Proof proof;
  lang::Formula statement;  // from a lemma file, else null
};

Loaded load_proof(const std::string& path) {
  std::string text = read_file(path);
  std::size_t i = text.find_first_not_of(" \t\r\n");
  while (i != std::string::npos && text[i] == ';') {
    i = text.find('\n', i);
    if (i != std::string::npos) i = text.find_first_not_of(" \t\r\n", i);
  }
  if (i != std::string::npos && text.compare(i, 6, "(lemma") == 0) {
    library::LemmaEntry e = library::read_lemma(text);
    return {e.proof, e.statement};
  }
  return {kernel::read_proof(text), nullptr};
}

void add_check(Table& tab, const kernel::CheckReport& r) {
  tab.add("accepted", r.accepted ? "yes" : "no");
  tab.add("steps", r.steps);
  if (r.failure) {
    tab.add("failure_path", path_str(r.failure->path));
    tab.add("failure", r.failure->message);
  }
}

int cmd_check(const Options& o, std::ostream& out) {
  explain::Config cfg = config(o);
  Loaded l = load_proof(o.file);
  lang::Formula goal = !o.goal.empty() ? lang::parse_formula(o.goal) : l.statement;
  kernel::CheckOptions opts;
  opts.registry = cfg.registry;
  opts.step_limit = cfg.step_limit;
  if (!goal) {
    try {
      goal = kernel::conclusion(l.proof, opts);
    } catch (const kernel::KernelError& e) {
      Table tab;
      add_check(tab, {false, 0, kernel::CheckReport::Failure{e.path(), e.what()}});
      tab.print(out, o.json);
      return 2;
    }
  }
  kernel::CheckReport r = kernel::check(l.proof, goal, opts);
  Table tab;
  tab.add("statement", lang::print(goal));
  add_check(tab, r);
  tab.print(out, o.json);
  return r.accepted ? 0 : 2;
}

// Report for a whole proof: the root cut as (template, input) when there is
// one, else the proof itself.
explain::RunResult self_report(const kernel::Proof& p, const lang::Formula& goal, const explain::Config& cfg) {
  explain::Explanation e{explain::ConstantProof{p}, nullptr, {}};
  if (p->kind == kernel::ProofKind::ForallElim && !p->kids.empty() &&
      (p->kids[0]->kind == kernel::ProofKind::ForallIntro || p->kids[0]->kind == kernel::ProofKind::ForallRangeIntro) &&
      p->kids.size() == 1)
    e = {explain::TemplateProgram{explain::make_template(p->kids[0], cfg.registry)}, p->witness, {}};
  return explain::run_explanation(e, goal, cfg);
}

int cmd_classify(const Options& o, std::ostream& out) {
  explain::Config cfg = config(o);
  Loaded l = load_proof(o.file);
  kernel::CheckOptions opts;
  opts.registry = cfg.registry;
  opts.step_limit = cfg.step_limit;
  lang::Formula goal = !o.goal.empty() ? lang::parse_formula(o.goal) : l.statement;
  if (!goal) goal = kernel::conclusion(l.proof, opts);
  kernel::CheckReport r = kernel::check(l.proof, goal, opts);
  if (!r.accepted) throw Rejected("proof rejected: " + r.failure->message);
  explain::ProofCategory cat = explain::classify_proof(l.proof, cfg.k_max, cfg.registry);
  explain::RunResult run = self_report(l.proof, goal, cfg);
  out << (o.json ? explain::report_json(&cat, run.report, cfg) : explain::report_text(&cat, run.report, cfg));
  return 0;
}

int cmd_explain(const Options& o, std::ostream& out) {
  explain::Config cfg = config(o);
  if (o.input.empty()) throw DomainError("explain needs --input");
  lang::Term input = lang::parse_term(o.input);
  lang::Formula goal = o.goal.empty() ? nullptr : lang::parse_formula(o.goal);
  explain::Explanation e;
  if (!o.lemma.empty()) {
    const library::LemmaEntry& le = library::Library::builtin().get(o.lemma);
    explain::Template t = explain::make_template(le.proof, cfg.registry);
    if (!goal) goal = lang::replace_free(t.schema_statement, t.param, input);
    e = {explain::TemplateProgram{t}, input, {}};
  } else if (!o.trace.empty()) {
    if (o.trace != "multiply" && o.trace != "divide") throw DomainError("--trace is multiply or divide");
    bool mul = o.trace == "multiply";
    if (!goal) {
      if (input->kind != lang::TermKind::Mul) throw DomainError("trace input must be a * b");
      Integer a = lang::eval_term(input->kids[0], {}), b = lang::eval_term(input->kids[1], {});
      if (mul) {
        goal = lang::eq(input, lang::lit(a * b));
      } else {
        if (b == 0) throw DomainError("division by zero");
        goal = lang::eq(lang::lit(a), lang::add(lang::mul(lang::lit(b), lang::lit(a / b)), lang::lit(a % b)));
      }
    }
    e = {explain::TraceProgram{mul ? explain::TraceKind::Multiply : explain::TraceKind::Divide, o.base}, input, {}};
  } else if (!o.witness.empty()) {
    if (o.witness != "book_shop") throw DomainError("unknown witness map " + o.witness);
    explain::ExistentialResult x = explain::explain_existential(explain::book_shop(), input);
    if (!goal) goal = x.statement;
    e = x.explanation;
  } else {
    throw DomainError("explain needs --lemma, --trace or --witness");
  }
  explain::RunResult run = explain::run_explanation(e, goal, cfg);
  if (!o.out.empty()) write_file(o.out, kernel::write_proof(run.proof, true));
  explain::ProofCategory cat = explain::classify_proof(run.proof, cfg.k_max, cfg.registry);
  out << (o.json ? explain::report_json(&cat, run.report, cfg) : explain::report_text(&cat, run.report, cfg));
  return 0;
}

void collect_leaves(const kernel::Proof& p, std::vector<std::string>& out) {
  if (!p) return;
  if (p->kind == kernel::ProofKind::Compute && p->formula->kind == lang::FormulaKind::Eq &&
      p->formula->l->kind == lang::TermKind::Pow)
    out.push_back(lang::print(p->formula));
  for (const auto& k : kernel::children(p)) collect_leaves(k, out);
}

std::uint64_t enum_cases(const kernel::Proof& p) {
  if (!p) return 0;
  std::uint64_t n = 0;
  if (p->kind == kernel::ProofKind::RangeEnum)
    n += p->generated ? static_cast<std::uint64_t>(lang::eval_term(p->hi, {}) - lang::eval_term(p->lo, {}) + 1)
                      : p->kids.size();
  else
    for (const auto& k : kernel::children(p)) n += enum_cases(k);
  return n;
}

int cmd_dioph(const Options& o, std::ostream& out) {
  explain::Config cfg = config(o);
  dioph::IntPoly p = dioph::IntPoly::parse(o.poly);
  lang::Formula goal = dioph::statement(p);
  Table tab;
  tab.add("statement", lang::print(goal));
  tab.add("mode", o.mode);
  kernel::Proof proof;
  try {
    if (o.mode == "enum") {
      tab.add("bound", dioph::bound(p).str());
      proof = dioph::prove_no_solution_enum(p);
    } else if (o.mode == "interval") {
      tab.add("threshold", dioph::threshold(p).str());
      proof = dioph::prove_no_solution_interval(p);
    } else {
      throw DomainError("--mode is enum or interval");
    }
  } catch (const dioph::RootFound& r) {
    tab.add("root", r.root().str());
    tab.print(out, o.json);
    return 2;
  }
  std::vector<std::string> leaves;
  if (o.mode == "interval") collect_leaves(proof, leaves);
  for (const auto& l : leaves) tab.add("leaf", l);
  tab.add("enumeration_cases", enum_cases(proof));
  tab.add("case_splits", kernel::count_kind(proof, kernel::ProofKind::CaseSplit));
  kernel::CheckOptions opts;
  opts.step_limit = cfg.step_limit;
  kernel::CheckReport r = kernel::check(proof, goal, opts);
  add_check(tab, r);
  if (!r.accepted) {
    tab.print(out, o.json);
    return 2;
  }
  std::string text = kernel::write_proof(proof, true);
  tab.add("proof_bytes", kernel::write_proof(proof).size());
  explain::ProofCategory cat = explain::classify_proof(proof, cfg.k_max);
  tab.add("category", explain::category_name(cat.category));
  tab.add("k", cat.k);
  tab.add("k_max", cfg.k_max);
  if (!o.out.empty()) {
    write_file(o.out, text);
    tab.add("out", o.out);
  }
  tab.print(out, o.json);
  return 0;
}

int cmd_lemmas(const Options& o, std::ostream& out) {
  if (!o.out.empty()) {
    for (const auto& path : library::export_lemmas(o.out)) out << path << "\n";
    return 0;
  }
  library::Library lib = o.dir.empty() ? library::Library::builtin() : library::Library::load(o.dir);
  if (o.json) {
    ordered_json arr = ordered_json::array();
    for (const auto& e : lib.entries())
      arr.push_back({{"name", e.name}, {"statement", lang::print(e.statement)}, {"tags", e.tags},
                     {"nodes", kernel::node_count(e.proof)}});
    out << arr.dump(2) << "\n";
  } else {
    for (const auto& e : lib.entries()) out << e.name << ": " << lang::print(e.statement) << "\n";
  }
  return 0;
}

int cmd_centroid(const Options& o, std::ostream& out) {
  explain::Config cfg = config(o);
  centroid::LabeledDataset d = centroid::LabeledDataset::load_csv(o.data);
  centroid::Vec q;
  std::stringstream ss(o.query);
  std::string f;
  while (std::getline(ss, f, ',')) q.push_back(centroid::parse_rational(f));
  centroid::CentroidResult r = centroid::centroid_classify(d, q, cfg);
  Table tab;
  tab.add("label", r.label);
  for (const auto& [label, m] : r.mean_sq) tab.add("mean_sq_" + label, rat_str(m));
  tab.print(out, o.json);
  out << (o.json ? explain::report_json(nullptr, r.report, cfg) : explain::report_text(nullptr, r.report, cfg));
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Proof kernel and explanation analyzer", args.empty() ? "explainer" : args[0]};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", o.json, "JSON output");
  app.add_option("--alpha", o.alpha, "size threshold (rational)");
  app.add_option("--kmax", o.kmax, "largest case count still called explanatory");
  app.add_option("--step-limit", o.step_limit, "kernel step limit");
  app.add_option("--base", o.base, "numeral base")->check(CLI::Range(2, 36));

  auto* check = app.add_subcommand("check", "check a proof file");
  check->add_option("file", o.file)->required();
  check->add_option("--goal", o.goal, "statement to check against");

  auto* classify = app.add_subcommand("classify", "classify a proof file");
  classify->add_option("file", o.file)->required();
  classify->add_option("--goal", o.goal);

  auto* expl = app.add_subcommand("explain", "run an (algorithm, input) explanation");
  expl->add_option("--lemma", o.lemma, "library lemma used as template");
  expl->add_option("--trace", o.trace, "multiply or divide");
  expl->add_option("--witness", o.witness, "witness map (book_shop)");
  expl->add_option("--input", o.input, "input term");
  expl->add_option("--goal", o.goal);
  expl->add_option("--out", o.out, "write the produced proof here");

  auto* dio = app.add_subcommand("dioph", "prove p(x) != 0 over the naturals");
  dio->add_option("poly", o.poly)->required();
  dio->add_option("--mode", o.mode)->check(CLI::IsMember({"enum", "interval"}));
  dio->add_option("--out", o.out, "write the proof here");

  auto* trick = app.add_subcommand("trick", "repdigit multiplication table");
  trick->add_option("--digit", o.digit)->required();
  trick->add_option("--reps", o.reps)->check(CLI::PositiveNumber);

  auto* divide = app.add_subcommand("divide", "long division trace");
  divide->add_option("operands", o.operands)->expected(2);
  auto* multiply = app.add_subcommand("multiply", "long multiplication trace");
  multiply->add_option("operands", o.operands)->expected(2);

  auto* lemmas = app.add_subcommand("lemmas", "list, export or reload the lemma library");
  lemmas->add_option("--out", o.out, "export lemma files to this directory");
  lemmas->add_option("--dir", o.dir, "load and re-check lemma files from this directory");

  auto* cent = app.add_subcommand("centroid", "nearest-mean classification");
  cent->add_option("--data", o.data)->required();
  cent->add_option("--query", o.query, "comma-separated coordinates")->required();

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  if (argv.empty()) argv.push_back("explainer");
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    err << app.help();
    return 1;
  }

  try {
    if (*check) return cmd_check(o, out);
    if (*classify) return cmd_classify(o, out);
    if (*expl) return cmd_explain(o, out);
    if (*dio) return cmd_dioph(o, out);
    if (*trick) return cmd_trick(o, out);
    if (*divide) return cmd_divide(o, out);
    if (*multiply) return cmd_multiply(o, out);
    if (*lemmas) return cmd_lemmas(o, out);
    if (*cent) return cmd_centroid(o, out);
  } catch (const Rejected& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const explain::ProofMismatch& e) {
    err << "proof mismatch: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace explainer::cli
