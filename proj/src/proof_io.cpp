#include "expl/proof_io.hpp"

#include <cctype>

namespace explainer::kernel {

namespace {

bool bare_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '-';
}

bool is_bare(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!bare_char(c)) return false;
  return true;
}

class Reader {
 public:
  explicit Reader(std::string_view s) : src_(s) {}

  std::vector<SExpr> all() {
    std::vector<SExpr> out;
    skip();
    while (i_ < src_.size()) {
      out.push_back(one());
      skip();
    }
    return out;
  }

 private:
  std::string_view src_;
  std::size_t i_ = 0;
  int line_ = 1;
  int col_ = 1;

  void bump() {
    if (src_[i_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++i_;
  }

  void skip() {
    while (i_ < src_.size()) {
      char c = src_[i_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        bump();
      } else if (c == ';') {
        while (i_ < src_.size() && src_[i_] != '\n') bump();
      } else {
        break;
      }
    }
  }

  SExpr one() {
    skip();
    SExpr e;
    e.line = line_;
    e.column = col_;
    if (i_ >= src_.size()) throw ParseError("unexpected end of input", line_, col_);
    char c = src_[i_];
    if (c == '(') {
      bump();
      e.is_list = true;
      while (true) {
        skip();
        if (i_ >= src_.size()) throw ParseError("unclosed '('", e.line, e.column);
        if (src_[i_] == ')') {
          bump();
          return e;
        }
        e.items.push_back(one());
      }
    }
    if (c == ')') throw ParseError("unexpected ')'", line_, col_);
    if (c == '"') {
      bump();
      e.quoted = true;
      while (true) {
        if (i_ >= src_.size()) throw ParseError("unterminated string", e.line, e.column);
        char d = src_[i_];
        if (d == '"') {
          bump();
          return e;
        }
        if (d == '\\') {
          bump();
          if (i_ >= src_.size()) throw ParseError("unterminated string", e.line, e.column);
          d = src_[i_];
        }
        e.atom += d;
        bump();
      }
    }
    while (i_ < src_.size() && bare_char(src_[i_])) {
      e.atom += src_[i_];
      bump();
    }
    if (e.atom.empty()) throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
    return e;
  }
};

void write_atom(std::string& out, const SExpr& e) {
  if (is_bare(e.atom)) {
    out += e.atom;
    return;
  }
  out += '"';
  for (char c : e.atom) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
}

void write_compact(std::string& out, const SExpr& e) {
  if (!e.is_list) {
    write_atom(out, e);
    return;
  }
  out += '(';
  for (std::size_t k = 0; k < e.items.size(); ++k) {
    if (k) out += ' ';
    write_compact(out, e.items[k]);
  }
  out += ')';
}

constexpr std::size_t kLineWidth = 80;

void write_pretty(std::string& out, const SExpr& e, std::size_t indent) {
  std::string flat;
  write_compact(flat, e);
  if (!e.is_list || flat.size() + indent <= kLineWidth) {
    out += flat;
    return;
  }
  out += '(';
  std::size_t k = 0;
  for (; k < e.items.size() && !e.items[k].is_list; ++k) {
    if (k) out += ' ';
    write_compact(out, e.items[k]);
  }
  for (; k < e.items.size(); ++k) {
    out += '\n';
    out += std::string(indent + 2, ' ');
    write_pretty(out, e.items[k], indent + 2);
  }
  out += ')';
}

// ---- proof <-> sexpr -------------------------------------------------------

SExpr term_atom(const Term& t) { return sx_atom(lang::print(t)); }
SExpr formula_atom(const Formula& f) { return sx_atom(lang::print(f)); }

SExpr path_list(const Path& p) {
  SExpr e = sx_list({sx_atom("at")});
  for (int i : p) e.items.push_back(sx_atom(std::to_string(i)));
  return e;
}

void add_inst(SExpr& e, const Instantiation& inst) {
  for (const auto& [v, t] : inst) e.items.push_back(sx_list({sx_atom(v), term_atom(t)}));
}

SExpr step_sexpr(const RewriteStep& s) {
  SExpr e = sx_list({sx_atom("step"), sx_atom(rule_name(s.rule)), path_list(s.position),
                     term_atom(s.before), term_atom(s.after)});
  if (s.shift) e.items.push_back(sx_list({sx_atom("shift"), term_atom(s.shift)}));
  if (!s.lemma.empty()) {
    SExpr l = sx_list({sx_atom("lemma"), sx_atom(s.lemma)});
    add_inst(l, s.inst);
    e.items.push_back(std::move(l));
  }
  for (std::size_t k = 0; k < s.side_conditions.size(); ++k) {
    SExpr sd = sx_list({sx_atom("side"), formula_atom(s.side_conditions[k])});
    if (k < s.side_proofs.size() && s.side_proofs[k]) sd.items.push_back(to_sexpr(s.side_proofs[k]));
    e.items.push_back(std::move(sd));
  }
  return e;
}

[[noreturn]] void bad(const SExpr& e, const std::string& msg) { throw ParseError(msg, e.line, e.column); }

const std::string& atom_of(const SExpr& e, const char* what) {
  if (e.is_list) bad(e, std::string("expected ") + what);
  return e.atom;
}

Term term_of(const SExpr& e) {
  try {
    return lang::parse_term(atom_of(e, "term"));
  } catch (const ParseError& pe) {
    bad(e, std::string("in term: ") + pe.what());
  }
}

Formula formula_of(const SExpr& e) {
  try {
    return lang::parse_formula(atom_of(e, "formula"));
  } catch (const ParseError& pe) {
    bad(e, std::string("in formula: ") + pe.what());
  }
}

Path path_of(const SExpr& e) {
  if (!e.is_list || e.items.empty() || e.items[0].is_list || e.items[0].atom != "at") bad(e, "expected (at ...)");
  Path p;
  for (std::size_t k = 1; k < e.items.size(); ++k) {
    const std::string& s = atom_of(e.items[k], "position index");
    try {
      p.push_back(std::stoi(s));
    } catch (const std::exception&) {
      bad(e.items[k], "bad position index " + s);
    }
  }
  return p;
}

Instantiation inst_of(const SExpr& e, std::size_t from) {
  Instantiation inst;
  for (std::size_t k = from; k < e.items.size(); ++k) {
    const SExpr& b = e.items[k];
    if (!b.is_list || b.items.size() != 2) bad(b, "expected (VAR \"term\")");
    inst[atom_of(b.items[0], "variable")] = term_of(b.items[1]);
  }
  return inst;
}

bool head_is(const SExpr& e, const char* h) {
  return e.is_list && !e.items.empty() && !e.items[0].is_list && e.items[0].atom == h;
}

RewriteStep step_of(const SExpr& e) {
  if (!head_is(e, "step") || e.items.size() < 5) bad(e, "expected (step RULE (at ...) before after ...)");
  RewriteStep s;
  const std::string& rn = atom_of(e.items[1], "rule name");
  auto r = rule_from_name(rn);
  if (!r) bad(e.items[1], "unknown rule " + rn);
  s.rule = *r;
  s.position = path_of(e.items[2]);
  s.before = term_of(e.items[3]);
  s.after = term_of(e.items[4]);
  for (std::size_t k = 5; k < e.items.size(); ++k) {
    const SExpr& x = e.items[k];
    if (head_is(x, "shift") && x.items.size() == 2) {
      s.shift = term_of(x.items[1]);
    } else if (head_is(x, "lemma") && x.items.size() >= 2) {
      s.lemma = atom_of(x.items[1], "lemma name");
      s.inst = inst_of(x, 2);
    } else if (head_is(x, "side") && (x.items.size() == 2 || x.items.size() == 3)) {
      s.side_conditions.push_back(formula_of(x.items[1]));
      s.side_proofs.push_back(x.items.size() == 3 ? from_sexpr(x.items[2]) : nullptr);
    } else {
      bad(x, "unexpected item in rewrite step");
    }
  }
  return s;
}

void arity(const SExpr& e, std::size_t lo, std::size_t hi) {
  std::size_t n = e.items.size() - 1;
  if (n < lo || n > hi) bad(e, "wrong number of arguments to " + e.items[0].atom);
}

}  // namespace

SExpr sx_atom(std::string text) {
  SExpr e;
  e.atom = std::move(text);
  e.quoted = !is_bare(e.atom);
  return e;
}

SExpr sx_list(std::vector<SExpr> items) {
  SExpr e;
  e.is_list = true;
  e.items = std::move(items);
  return e;
}

std::vector<SExpr> parse_sexprs(std::string_view text) { return Reader(text).all(); }

SExpr parse_sexpr(std::string_view text) {
  auto all = parse_sexprs(text);
  if (all.size() != 1) throw ParseError("expected exactly one expression", 1, 1);
  return all[0];
}

std::string write_sexpr(const SExpr& e, bool pretty) {
  std::string out;
  if (pretty)
    write_pretty(out, e, 0);
  else
    write_compact(out, e);
  return out;
}

SExpr to_sexpr(const Proof& p) {
  auto kid = [&](std::size_t i) { return to_sexpr(p->kids.at(i)); };
  switch (p->kind) {
    case ProofKind::Compute:
      return sx_list({sx_atom("compute"), formula_atom(p->formula)});
    case ProofKind::Axiom: {
      SExpr e = sx_list({sx_atom("axiom"), sx_atom(p->name)});
      add_inst(e, p->inst);
      return e;
    }
    case ProofKind::ForallIntro: {
      SExpr e = sx_list({sx_atom("forall-intro"), sx_atom(p->name)});
      if (!p->label.empty()) e.items.push_back(sx_atom(p->label));
      e.items.push_back(kid(0));
      return e;
    }
    case ProofKind::ForallRangeIntro: {
      SExpr e = sx_list({sx_atom("forall-range-intro"), sx_atom(p->name), term_atom(p->lo), term_atom(p->hi)});
      if (!p->label.empty()) e.items.push_back(sx_atom(p->label));
      e.items.push_back(kid(0));
      return e;
    }
    case ProofKind::ForallElim: {
      SExpr e = sx_list({sx_atom("forall-elim"), kid(0), term_atom(p->witness)});
      if (p->kids.size() > 1) e.items.push_back(kid(1));
      return e;
    }
    case ProofKind::RangeEnum: {
      SExpr e = sx_list({sx_atom(p->generated ? "range-enum-gen" : "range-enum"), sx_atom(p->name),
                         term_atom(p->lo), term_atom(p->hi), formula_atom(p->formula)});
      if (p->generated) {
        e.items.push_back(sx_atom("compute"));
      } else {
        for (const auto& c : p->kids) e.items.push_back(to_sexpr(c));
      }
      return e;
    }
    case ProofKind::Induction:
      return sx_list({sx_atom("induction"), sx_atom(p->name), kid(0), kid(1)});
    case ProofKind::ImpIntro:
      return sx_list({sx_atom("imp-intro"), sx_atom(p->name), formula_atom(p->formula), kid(0)});
    case ProofKind::ImpElim:
      return sx_list({sx_atom("imp-elim"), kid(0), kid(1)});
    case ProofKind::Hyp:
      return sx_list({sx_atom("hyp"), sx_atom(p->name)});
    case ProofKind::AndIntro:
      return sx_list({sx_atom("and-intro"), kid(0), kid(1)});
    case ProofKind::AndElimL:
      return sx_list({sx_atom("and-elim-l"), kid(0)});
    case ProofKind::AndElimR:
      return sx_list({sx_atom("and-elim-r"), kid(0)});
    case ProofKind::CaseSplit:
      return sx_list({sx_atom("case-split"), kid(0), kid(1), kid(2)});
    case ProofKind::Rewrite: {
      SExpr e = sx_list({sx_atom("rewrite"), formula_atom(p->formula)});
      for (const auto& s : p->steps) e.items.push_back(step_sexpr(s));
      return e;
    }
    case ProofKind::EqSubst:
      return sx_list({sx_atom("eq-subst"), kid(0), kid(1), path_list(p->position)});
  }
  throw Error("unknown proof node");
}

Proof from_sexpr(const SExpr& e) {
  if (!e.is_list || e.items.empty() || e.items[0].is_list) bad(e, "expected a proof node");
  const std::string& h = e.items[0].atom;
  const auto& it = e.items;
  if (h == "compute") {
    arity(e, 1, 1);
    return compute(formula_of(it[1]));
  }
  if (h == "axiom") {
    if (it.size() < 2) bad(e, "axiom without name");
    return axiom(atom_of(it[1], "axiom name"), inst_of(e, 2));
  }
  if (h == "forall-intro") {
    arity(e, 2, 3);
    std::string label = it.size() == 4 ? atom_of(it[2], "label") : "";
    return forall_intro(atom_of(it[1], "variable"), from_sexpr(it.back()), label);
  }
  if (h == "forall-range-intro") {
    arity(e, 4, 5);
    std::string label = it.size() == 6 ? atom_of(it[4], "label") : "";
    return forall_range_intro(atom_of(it[1], "variable"), term_of(it[2]), term_of(it[3]), from_sexpr(it.back()),
                              label);
  }
  if (h == "forall-elim") {
    arity(e, 2, 3);
    return forall_elim(from_sexpr(it[1]), term_of(it[2]), it.size() == 4 ? from_sexpr(it[3]) : nullptr);
  }
  if (h == "range-enum") {
    if (it.size() < 5) bad(e, "wrong number of arguments to range-enum");
    std::vector<Proof> cases;
    for (std::size_t k = 5; k < it.size(); ++k) cases.push_back(from_sexpr(it[k]));
    return range_enum(atom_of(it[1], "variable"), term_of(it[2]), term_of(it[3]), formula_of(it[4]),
                      std::move(cases));
  }
  if (h == "range-enum-gen") {
    arity(e, 5, 5);
    if (atom_of(it[5], "generator") != "compute") bad(it[5], "unregistered generator " + it[5].atom);
    return range_enum_generated(atom_of(it[1], "variable"), term_of(it[2]), term_of(it[3]), formula_of(it[4]));
  }
  if (h == "induction") {
    arity(e, 3, 3);
    return induction(atom_of(it[1], "variable"), from_sexpr(it[2]), from_sexpr(it[3]));
  }
  if (h == "imp-intro") {
    arity(e, 3, 3);
    return imp_intro(atom_of(it[1], "label"), formula_of(it[2]), from_sexpr(it[3]));
  }
  if (h == "imp-elim") {
    arity(e, 2, 2);
    return imp_elim(from_sexpr(it[1]), from_sexpr(it[2]));
  }
  if (h == "hyp") {
    arity(e, 1, 1);
    return hyp(atom_of(it[1], "label"));
  }
  if (h == "and-intro") {
    arity(e, 2, 2);
    return and_intro(from_sexpr(it[1]), from_sexpr(it[2]));
  }
  if (h == "and-elim-l" || h == "and-elim-r") {
    arity(e, 1, 1);
    return h == "and-elim-l" ? and_elim_l(from_sexpr(it[1])) : and_elim_r(from_sexpr(it[1]));
  }
  if (h == "case-split") {
    arity(e, 3, 3);
    return case_split(from_sexpr(it[1]), from_sexpr(it[2]), from_sexpr(it[3]));
  }
  if (h == "rewrite") {
    if (it.size() < 2) bad(e, "rewrite without goal");
    std::vector<RewriteStep> steps;
    for (std::size_t k = 2; k < it.size(); ++k) steps.push_back(step_of(it[k]));
    return rewrite(formula_of(it[1]), std::move(steps));
  }
  if (h == "eq-subst") {
    arity(e, 3, 3);
    return eq_subst(from_sexpr(it[1]), from_sexpr(it[2]), path_of(it[3]));
  }
  bad(e, "unknown proof node " + h);
}

std::string write_proof(const Proof& p, bool pretty) { return write_sexpr(to_sexpr(p), pretty); }

Proof read_proof(std::string_view text) { return from_sexpr(parse_sexpr(text)); }

}  // namespace explainer::kernel
