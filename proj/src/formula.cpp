#include "lang_internal.hpp"

#include <sstream>

namespace explainer::lang {

bool FormulaNode::is_atom() const {
  return kind == FormulaKind::Eq || kind == FormulaKind::Neq || kind == FormulaKind::Le ||
         kind == FormulaKind::Lt;
}

bool FormulaNode::is_quantifier() const {
  return kind == FormulaKind::ForallNat || kind == FormulaKind::ForallRange ||
         kind == FormulaKind::ExistsNat || kind == FormulaKind::ExistsRange;
}

bool FormulaNode::is_range() const {
  return kind == FormulaKind::ForallRange || kind == FormulaKind::ExistsRange;
}

int FormulaNode::arity() const {
  if (is_atom()) return 2;
  switch (kind) {
    case FormulaKind::Not:
    case FormulaKind::ForallNat:
    case FormulaKind::ExistsNat:
      return 1;
    case FormulaKind::ForallRange:
    case FormulaKind::ExistsRange:
      return 3;
    default:
      return 2;
  }
}

bool FormulaNode::child_is_term(int i) const {
  if (is_atom()) return true;
  if (is_range()) return i < 2;
  return false;
}

Formula atom(FormulaKind kind, Term l, Term r) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = kind;
  n->l = std::move(l);
  n->r = std::move(r);
  return n;
}

Formula eq(Term l, Term r) { return atom(FormulaKind::Eq, std::move(l), std::move(r)); }
Formula neq(Term l, Term r) { return atom(FormulaKind::Neq, std::move(l), std::move(r)); }
Formula le(Term l, Term r) { return atom(FormulaKind::Le, std::move(l), std::move(r)); }
Formula lt(Term l, Term r) { return atom(FormulaKind::Lt, std::move(l), std::move(r)); }

namespace {

Formula connective(FormulaKind k, Formula a, Formula b) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = k;
  n->f = std::move(a);
  n->g = std::move(b);
  return n;
}

Formula quantifier(FormulaKind k, std::string v, Term lo, Term hi, Formula body) {
  if ((lo && occurs_free(v, lo)) || (hi && occurs_free(v, hi)))
    throw Error("range bounds must not mention the bound variable " + v);
  auto n = std::make_shared<FormulaNode>();
  n->kind = k;
  n->var = std::move(v);
  n->l = std::move(lo);
  n->r = std::move(hi);
  n->f = std::move(body);
  return n;
}

}  // namespace

Formula conj(Formula a, Formula b) { return connective(FormulaKind::And, std::move(a), std::move(b)); }
Formula disj(Formula a, Formula b) { return connective(FormulaKind::Or, std::move(a), std::move(b)); }
Formula neg(Formula a) { return connective(FormulaKind::Not, std::move(a), nullptr); }
Formula implies(Formula a, Formula b) {
  return connective(FormulaKind::Implies, std::move(a), std::move(b));
}
Formula forall_nat(std::string v, Formula body) {
  return quantifier(FormulaKind::ForallNat, std::move(v), nullptr, nullptr, std::move(body));
}
Formula forall_range(std::string v, Term lo, Term hi, Formula body) {
  return quantifier(FormulaKind::ForallRange, std::move(v), std::move(lo), std::move(hi),
                    std::move(body));
}
Formula exists_nat(std::string v, Formula body) {
  return quantifier(FormulaKind::ExistsNat, std::move(v), nullptr, nullptr, std::move(body));
}
Formula exists_range(std::string v, Term lo, Term hi, Formula body) {
  return quantifier(FormulaKind::ExistsRange, std::move(v), std::move(lo), std::move(hi),
                    std::move(body));
}

// ---- printing -----------------------------------------------------------

namespace detail {

namespace {

const char* atom_op(FormulaKind k) {
  switch (k) {
    case FormulaKind::Eq: return " = ";
    case FormulaKind::Neq: return " != ";
    case FormulaKind::Le: return " <= ";
    case FormulaKind::Lt: return " < ";
    default: return "?";
  }
}

// `tail` is true when nothing follows this formula in the output at the
// current nesting level; a quantifier body extends to the right, so a
// quantifier that is not in tail position needs parentheses.
void print_formula(std::ostream& os, const Formula& f, int minprec, bool tail, Renamer& rn) {
  if (f->is_atom()) {
    print_term(os, f->l, 0, rn);
    os << atom_op(f->kind);
    print_term(os, f->r, 0, rn);
    return;
  }
  if (f->is_quantifier()) {
    bool parens = !tail;
    if (parens) os << "(";
    bool forall = f->kind == FormulaKind::ForallNat || f->kind == FormulaKind::ForallRange;
    os << (forall ? "forall " : "exists ");
    std::ostringstream lo, hi;
    if (f->is_range()) {
      print_term(lo, f->l, 0, rn);
      print_term(hi, f->r, 0, rn);
    }
    os << rn.bind(f->var);
    if (f->is_range()) os << " in [" << lo.str() << ", " << hi.str() << "]";
    os << " . ";
    print_formula(os, f->f, 0, true, rn);
    rn.unbind();
    if (parens) os << ")";
    return;
  }
  if (f->kind == FormulaKind::Not) {
    os << "~";
    print_formula(os, f->f, 4, tail, rn);
    return;
  }
  int prec = 0;
  int lp = 0;
  int rp = 0;
  const char* op = "";
  switch (f->kind) {
    case FormulaKind::Implies: prec = 1; lp = 2; rp = 1; op = " => "; break;
    case FormulaKind::Or: prec = 2; lp = 2; rp = 3; op = " \\/ "; break;
    case FormulaKind::And: prec = 3; lp = 3; rp = 4; op = " /\\ "; break;
    default: break;
  }
  bool parens = prec < minprec;
  if (parens) os << "(";
  print_formula(os, f->f, lp, false, rn);
  os << op;
  print_formula(os, f->g, rp, parens ? true : tail, rn);
  if (parens) os << ")";
}

}  // namespace
}  // namespace detail

std::string print(const Formula& f) {
  std::ostringstream os;
  detail::Renamer rn;
  detail::print_formula(os, f, 0, true, rn);
  return os.str();
}

std::size_t size_bytes(const Formula& f) { return print(f).size(); }

// ---- structure ----------------------------------------------------------

namespace {

void collect_free(const Formula& f, std::vector<std::string>& bound, std::set<std::string>& out) {
  auto add_term = [&](const Term& t) {
    for (const auto& v : free_vars(t)) {
      bool is_bound = false;
      for (const auto& b : bound) is_bound = is_bound || b == v;
      if (!is_bound) out.insert(v);
    }
  };
  if (f->is_atom()) {
    add_term(f->l);
    add_term(f->r);
    return;
  }
  if (f->is_quantifier()) {
    if (f->is_range()) {
      add_term(f->l);
      add_term(f->r);
    }
    bound.push_back(f->var);
    collect_free(f->f, bound, out);
    bound.pop_back();
    return;
  }
  collect_free(f->f, bound, out);
  if (f->g) collect_free(f->g, bound, out);
}

}  // namespace

std::set<std::string> free_vars(const Formula& f) {
  std::set<std::string> out;
  std::vector<std::string> bound;
  collect_free(f, bound, out);
  return out;
}

bool occurs_free(const std::string& v, const Formula& f) {
  if (f->is_atom()) return occurs_free(v, f->l) || occurs_free(v, f->r);
  if (f->is_quantifier()) {
    if (f->is_range() && (occurs_free(v, f->l) || occurs_free(v, f->r))) return true;
    return f->var != v && occurs_free(v, f->f);
  }
  return occurs_free(v, f->f) || (f->g && occurs_free(v, f->g));
}

bool is_closed(const Formula& f) { return free_vars(f).empty(); }

namespace {

bool alpha_formula(const Formula& a, const Formula& b, detail::Binders& ba, detail::Binders& bb) {
  if (a->kind != b->kind) return false;
  if (a->is_atom())
    return detail::alpha_term(a->l, b->l, ba, bb) && detail::alpha_term(a->r, b->r, ba, bb);
  if (a->is_quantifier()) {
    if (a->is_range() && !(detail::alpha_term(a->l, b->l, ba, bb) &&
                           detail::alpha_term(a->r, b->r, ba, bb)))
      return false;
    ba.push_back(a->var);
    bb.push_back(b->var);
    bool ok = alpha_formula(a->f, b->f, ba, bb);
    ba.pop_back();
    bb.pop_back();
    return ok;
  }
  if (!alpha_formula(a->f, b->f, ba, bb)) return false;
  if (a->g) return alpha_formula(a->g, b->g, ba, bb);
  return true;
}

}  // namespace

bool alpha_equal(const Formula& a, const Formula& b) {
  detail::Binders ba, bb;
  return alpha_formula(a, b, ba, bb);
}

Formula replace_free(const Formula& f, const std::string& v, const Term& by) {
  if (!occurs_free(v, f)) return f;
  auto n = std::make_shared<FormulaNode>(*f);
  if (f->is_atom()) {
    n->l = replace_free(f->l, v, by);
    n->r = replace_free(f->r, v, by);
    return n;
  }
  if (f->is_quantifier()) {
    if (f->is_range()) {
      n->l = replace_free(f->l, v, by);
      n->r = replace_free(f->r, v, by);
    }
    if (f->var != v && occurs_free(v, f->f)) {
      if (occurs_free(f->var, by))
        throw Error("substitution of " + v + " would be captured by binder " + f->var);
      n->f = replace_free(f->f, v, by);
    }
    return n;
  }
  n->f = replace_free(f->f, v, by);
  if (f->g) n->g = replace_free(f->g, v, by);
  return n;
}

Formula substitute(const Formula& f, const std::string& v, const Term& by) {
  if (!is_closed(by)) throw Error("substitution requires a closed term, got " + print(by));
  return replace_free(f, v, by);
}

namespace {

void check_index(const Formula& f, int i) {
  if (i < 0 || i >= f->arity()) throw Error("formula position out of range");
}

Term term_child(const Formula& f, int i) { return i == 0 ? f->l : f->r; }
Formula formula_child(const Formula& f, int i) {
  if (f->is_quantifier()) return f->f;
  return i == 0 ? f->f : f->g;
}

}  // namespace

Term subterm_at(const Formula& f, const Path& path) {
  Formula cur = f;
  for (std::size_t k = 0; k < path.size(); ++k) {
    int i = path[k];
    check_index(cur, i);
    if (cur->child_is_term(i)) {
      Path rest(path.begin() + static_cast<long>(k) + 1, path.end());
      return subterm_at(term_child(cur, i), rest);
    }
    cur = formula_child(cur, i);
  }
  throw Error("formula path does not end inside a term");
}

Formula replace_at(const Formula& f, const Path& path, const Term& by) {
  if (path.empty()) throw Error("formula path does not end inside a term");
  int i = path[0];
  check_index(f, i);
  Path rest(path.begin() + 1, path.end());
  auto n = std::make_shared<FormulaNode>(*f);
  if (f->child_is_term(i)) {
    Term t = replace_at(term_child(f, i), rest, by);
    (i == 0 ? n->l : n->r) = t;
    return n;
  }
  Formula c = replace_at(formula_child(f, i), rest, by);
  if (f->is_quantifier() || i == 0)
    n->f = c;
  else
    n->g = c;
  return n;
}

std::set<std::string> binders_along(const Formula& f, const Path& path) {
  std::set<std::string> out;
  Formula cur = f;
  for (std::size_t k = 0; k < path.size(); ++k) {
    int i = path[k];
    check_index(cur, i);
    if (cur->child_is_term(i)) {
      Path rest(path.begin() + static_cast<long>(k) + 1, path.end());
      auto inner = binders_along(term_child(cur, i), rest);
      out.insert(inner.begin(), inner.end());
      return out;
    }
    if (cur->is_quantifier()) out.insert(cur->var);
    cur = formula_child(cur, i);
  }
  return out;
}

}  // namespace explainer::lang
