#include "lang_internal.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace explainer {

std::string path_str(const Path& path) {
  if (path.empty()) return "/";
  std::string out;
  for (int i : path) out += "/" + std::to_string(i);
  return out;
}

Integer parse_decimal(std::string_view text) {
  bool neg = !text.empty() && text[0] == '-';
  if (neg) text.remove_prefix(1);
  if (text.empty()) throw DomainError("empty number");
  Integer v = 0;
  // Nine digits at a time keeps this linear in practice.
  std::size_t i = 0;
  while (i < text.size()) {
    std::size_t n = std::min<std::size_t>(9, text.size() - i);
    unsigned chunk = 0, scale = 1;
    for (std::size_t k = 0; k < n; ++k) {
      char c = text[i + k];
      if (c < '0' || c > '9') throw DomainError("bad digit in " + std::string(text));
      chunk = chunk * 10 + static_cast<unsigned>(c - '0');
      scale *= 10;
    }
    v = v * scale + chunk;
    i += n;
  }
  return neg ? Integer(-v) : v;
}

}  // namespace explainer

namespace explainer::lang {

int TermNode::arity() const {
  switch (kind) {
    case TermKind::IntLit:
    case TermKind::Var:
      return 0;
    case TermKind::Sum:
      return 3;
    default:
      return 2;
  }
}

const Term& TermNode::child(int i) const {
  if (i < 0 || i >= arity()) throw Error("term position out of range");
  return kids[static_cast<std::size_t>(i)];
}

namespace {

Term make(TermKind k, Term a = nullptr, Term b = nullptr, Term c = nullptr) {
  auto n = std::make_shared<TermNode>();
  n->kind = k;
  n->kids = {std::move(a), std::move(b), std::move(c)};
  return n;
}

Term rebuild(const Term& t, int i, Term child) {
  auto n = std::make_shared<TermNode>(*t);
  n->kids[static_cast<std::size_t>(i)] = std::move(child);
  return n;
}

}  // namespace

Term lit(Integer v) {
  auto n = std::make_shared<TermNode>();
  n->kind = TermKind::IntLit;
  n->value = std::move(v);
  return n;
}

Term var(std::string name) {
  auto n = std::make_shared<TermNode>();
  n->kind = TermKind::Var;
  n->name = std::move(name);
  return n;
}

Term add(Term l, Term r) { return make(TermKind::Add, std::move(l), std::move(r)); }
Term sub(Term l, Term r) { return make(TermKind::Sub, std::move(l), std::move(r)); }
Term mul(Term l, Term r) { return make(TermKind::Mul, std::move(l), std::move(r)); }
Term pow(Term b, Term e) { return make(TermKind::Pow, std::move(b), std::move(e)); }

Term sum(std::string index, Term lo, Term hi, Term body) {
  if (occurs_free(index, lo) || occurs_free(index, hi))
    throw Error("sum bounds must not mention the index " + index);
  auto n = std::make_shared<TermNode>();
  n->kind = TermKind::Sum;
  n->name = std::move(index);
  n->kids = {std::move(lo), std::move(hi), std::move(body)};
  return n;
}

// ---- printing -----------------------------------------------------------

namespace detail {

void print_term(std::ostream& os, const Term& t, int minprec, Renamer& rn) {
  switch (t->kind) {
    case TermKind::IntLit:
      if (t->value < 0)
        os << "(" << t->value.str() << ")";
      else
        os << t->value.str();
      return;
    case TermKind::Var:
      os << rn.name(t->name);
      return;
    case TermKind::Sum: {
      os << "sum(";
      std::ostringstream lo, hi;
      print_term(lo, t->kids[0], 0, rn);
      print_term(hi, t->kids[1], 0, rn);
      std::string idx = rn.bind(t->name);
      os << idx << ", " << lo.str() << ", " << hi.str() << ", ";
      print_term(os, t->kids[2], 0, rn);
      rn.unbind();
      os << ")";
      return;
    }
    default:
      break;
  }
  int prec = 0;
  int lp = 0;
  int rp = 0;
  const char* op = "";
  switch (t->kind) {
    case TermKind::Add: prec = 1; lp = 1; rp = 2; op = " + "; break;
    case TermKind::Sub: prec = 1; lp = 1; rp = 2; op = " - "; break;
    case TermKind::Mul: prec = 2; lp = 2; rp = 3; op = " * "; break;
    case TermKind::Pow: prec = 3; lp = 4; rp = 3; op = "^"; break;
    default: break;
  }
  bool parens = prec < minprec;
  if (parens) os << "(";
  print_term(os, t->kids[0], lp, rn);
  os << op;
  print_term(os, t->kids[1], rp, rn);
  if (parens) os << ")";
}

}  // namespace detail

std::string print(const Term& t) {
  std::ostringstream os;
  detail::Renamer rn;
  detail::print_term(os, t, 0, rn);
  return os.str();
}

std::size_t size_bytes(const Term& t) { return print(t).size(); }

std::string canonical_key(const Term& t) {
  std::ostringstream os;
  detail::Renamer rn;
  rn.active = true;
  detail::print_term(os, t, 0, rn);
  return os.str();
}

// ---- structure ----------------------------------------------------------

namespace {

void collect_free(const Term& t, std::vector<std::string>& bound, std::set<std::string>& out) {
  switch (t->kind) {
    case TermKind::IntLit:
      return;
    case TermKind::Var:
      for (const auto& b : bound)
        if (b == t->name) return;
      out.insert(t->name);
      return;
    case TermKind::Sum:
      collect_free(t->kids[0], bound, out);
      collect_free(t->kids[1], bound, out);
      bound.push_back(t->name);
      collect_free(t->kids[2], bound, out);
      bound.pop_back();
      return;
    default:
      collect_free(t->kids[0], bound, out);
      collect_free(t->kids[1], bound, out);
  }
}

}  // namespace

std::set<std::string> free_vars(const Term& t) {
  std::set<std::string> out;
  std::vector<std::string> bound;
  collect_free(t, bound, out);
  return out;
}

bool occurs_free(const std::string& v, const Term& t) {
  switch (t->kind) {
    case TermKind::IntLit:
      return false;
    case TermKind::Var:
      return t->name == v;
    case TermKind::Sum:
      return occurs_free(v, t->kids[0]) || occurs_free(v, t->kids[1]) ||
             (t->name != v && occurs_free(v, t->kids[2]));
    default:
      return occurs_free(v, t->kids[0]) || occurs_free(v, t->kids[1]);
  }
}

bool is_closed(const Term& t) { return free_vars(t).empty(); }

namespace detail {

int bound_index(const Binders& bs, const std::string& v) {
  for (int i = static_cast<int>(bs.size()) - 1; i >= 0; --i)
    if (bs[static_cast<std::size_t>(i)] == v) return i;
  return -1;
}

bool alpha_term(const Term& a, const Term& b, Binders& ba, Binders& bb) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case TermKind::IntLit:
      return a->value == b->value;
    case TermKind::Var: {
      int ia = bound_index(ba, a->name);
      int ib = bound_index(bb, b->name);
      if (ia != ib) return false;
      return ia >= 0 || a->name == b->name;
    }
    case TermKind::Sum: {
      if (!alpha_term(a->kids[0], b->kids[0], ba, bb)) return false;
      if (!alpha_term(a->kids[1], b->kids[1], ba, bb)) return false;
      ba.push_back(a->name);
      bb.push_back(b->name);
      bool ok = alpha_term(a->kids[2], b->kids[2], ba, bb);
      ba.pop_back();
      bb.pop_back();
      return ok;
    }
    default:
      return alpha_term(a->kids[0], b->kids[0], ba, bb) &&
             alpha_term(a->kids[1], b->kids[1], ba, bb);
  }
}

}  // namespace detail

bool alpha_equal(const Term& a, const Term& b) {
  detail::Binders ba, bb;
  return detail::alpha_term(a, b, ba, bb);
}

Term replace_free(const Term& t, const std::string& v, const Term& by) {
  switch (t->kind) {
    case TermKind::IntLit:
      return t;
    case TermKind::Var:
      return t->name == v ? by : t;
    case TermKind::Sum: {
      Term lo = replace_free(t->kids[0], v, by);
      Term hi = replace_free(t->kids[1], v, by);
      Term body = t->kids[2];
      if (t->name != v && occurs_free(v, body)) {
        if (occurs_free(t->name, by))
          throw Error("substitution of " + v + " would be captured by sum index " + t->name);
        body = replace_free(body, v, by);
      }
      if (lo == t->kids[0] && hi == t->kids[1] && body == t->kids[2]) return t;
      return sum(t->name, lo, hi, body);
    }
    default: {
      Term l = replace_free(t->kids[0], v, by);
      Term r = replace_free(t->kids[1], v, by);
      if (l == t->kids[0] && r == t->kids[1]) return t;
      auto n = std::make_shared<TermNode>(*t);
      n->kids = {l, r, nullptr};
      return n;
    }
  }
}

Term substitute(const Term& t, const std::string& v, const Term& by) {
  if (!is_closed(by)) throw Error("substitution requires a closed term, got " + print(by));
  return replace_free(t, v, by);
}

Term subterm_at(const Term& t, const Path& path) {
  Term cur = t;
  for (int i : path) cur = cur->child(i);
  return cur;
}

namespace {

Term replace_at_from(const Term& t, const Path& path, std::size_t k, const Term& by) {
  if (k == path.size()) return by;
  int i = path[k];
  Term c = replace_at_from(t->child(i), path, k + 1, by);
  return rebuild(t, i, std::move(c));
}

}  // namespace

Term replace_at(const Term& t, const Path& path, const Term& by) {
  return replace_at_from(t, path, 0, by);
}

std::set<std::string> binders_along(const Term& t, const Path& path) {
  std::set<std::string> out;
  Term cur = t;
  for (int i : path) {
    if (cur->kind == TermKind::Sum && i == 2) out.insert(cur->name);
    cur = cur->child(i);
  }
  return out;
}

}  // namespace explainer::lang
