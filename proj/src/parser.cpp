#include "expl/lang.hpp"

#include <cctype>

namespace explainer::lang {

namespace {

enum class Tok {
  End, Int, Ident, LParen, RParen, LBrack, RBrack, Comma, Dot,
  Plus, Minus, Star, Caret,
  Eq, Neq, Le, Lt, Ge, Gt,
  And, Or, Implies, Not,
  Forall, Exists, In, Sum
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 1;
  int column = 1;
};

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  int line = 1;
  int col = 1;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  auto starts = [&](std::string_view s) { return src.substr(i, s.size()) == s; };
  while (true) {
    while (i < src.size() && std::isspace(static_cast<unsigned char>(src[i]))) advance(1);
    Token t;
    t.line = line;
    t.column = col;
    if (i >= src.size()) {
      out.push_back(t);
      return out;
    }
    char c = src[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      t.kind = Tok::Int;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
      out.push_back(t);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) ||
                                src[j] == '_' || src[j] == '\''))
        ++j;
      t.text = std::string(src.substr(i, j - i));
      if (t.text == "forall")
        t.kind = Tok::Forall;
      else if (t.text == "exists")
        t.kind = Tok::Exists;
      else if (t.text == "in")
        t.kind = Tok::In;
      else if (t.text == "sum")
        t.kind = Tok::Sum;
      else
        t.kind = Tok::Ident;
      advance(j - i);
      out.push_back(t);
      continue;
    }
    struct Sym {
      std::string_view s;
      Tok k;
    };
    static const Sym syms[] = {
        {"/\\", Tok::And}, {"\\/", Tok::Or}, {"=>", Tok::Implies}, {"!=", Tok::Neq},
        {"<=", Tok::Le},   {">=", Tok::Ge},  {"<", Tok::Lt},       {">", Tok::Gt},
        {"=", Tok::Eq},    {"~", Tok::Not},  {"(", Tok::LParen},   {")", Tok::RParen},
        {"[", Tok::LBrack}, {"]", Tok::RBrack}, {",", Tok::Comma}, {".", Tok::Dot},
        {"+", Tok::Plus},  {"-", Tok::Minus}, {"*", Tok::Star},    {"^", Tok::Caret},
    };
    bool matched = false;
    for (const auto& s : syms) {
      if (starts(s.s)) {
        t.kind = s.k;
        t.text = std::string(s.s);
        advance(s.s.size());
        out.push_back(t);
        matched = true;
        break;
      }
    }
    if (!matched) throw ParseError(std::string("unexpected character '") + c + "'", line, col);
  }
}

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(lex(src)) {}

  Term whole_term() {
    Term t = term();
    expect_end();
    return t;
  }

  Formula whole_formula() {
    Formula f = formula();
    expect_end();
    return f;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;

  const Token& peek(std::size_t k = 0) const {
    return toks_[std::min(pos_ + k, toks_.size() - 1)];
  }
  bool at(Tok k) const { return peek().kind == k; }
  Token take() {
    Token t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    std::string near = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(msg + " near " + near, t.line, t.column);
  }
  Token expect(Tok k, const char* what) {
    if (!at(k)) fail(std::string("expected ") + what);
    return take();
  }
  void expect_end() {
    if (!at(Tok::End)) fail("unexpected trailing input");
  }
  std::string ident() { return expect(Tok::Ident, "identifier").text; }

  // term := additive
  Term term() {
    Term t = product();
    while (at(Tok::Plus) || at(Tok::Minus)) {
      bool plus = take().kind == Tok::Plus;
      Term r = product();
      t = plus ? add(t, r) : sub(t, r);
    }
    return t;
  }

  Term product() {
    Term t = power();
    while (at(Tok::Star)) {
      take();
      t = mul(t, power());
    }
    return t;
  }

  Term power() {
    Term base = primary();
    if (at(Tok::Caret)) {
      take();
      return pow(base, power());
    }
    return base;
  }

  Term primary() {
    switch (peek().kind) {
      case Tok::Int:
        return lit(parse_decimal(take().text));
      case Tok::Minus: {
        take();
        if (!at(Tok::Int)) fail("expected integer after unary minus");
        return lit(-parse_decimal(take().text));
      }
      case Tok::Ident:
        return var(take().text);
      case Tok::Sum: {
        take();
        expect(Tok::LParen, "'('");
        std::string idx = ident();
        expect(Tok::Comma, "','");
        Term lo = term();
        expect(Tok::Comma, "','");
        Term hi = term();
        expect(Tok::Comma, "','");
        Term body = term();
        expect(Tok::RParen, "')'");
        if (occurs_free(idx, lo) || occurs_free(idx, hi)) fail("sum bounds mention the index");
        return sum(idx, lo, hi, body);
      }
      case Tok::LParen: {
        take();
        Term t = term();
        expect(Tok::RParen, "')'");
        return t;
      }
      default:
        fail("expected term");
    }
  }

  // formula := disjunction ("=>" formula)?
  Formula formula() {
    Formula f = disjunction();
    if (at(Tok::Implies)) {
      take();
      return implies(f, formula());
    }
    return f;
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (at(Tok::Or)) {
      take();
      f = disj(f, conjunction());
    }
    return f;
  }

  Formula conjunction() {
    Formula f = unary();
    while (at(Tok::And)) {
      take();
      f = conj(f, unary());
    }
    return f;
  }

  Formula unary() {
    if (at(Tok::Not)) {
      take();
      return neg(unary());
    }
    if (at(Tok::Forall) || at(Tok::Exists)) {
      bool forall = take().kind == Tok::Forall;
      std::string v = ident();
      Term lo, hi;
      if (at(Tok::In)) {
        take();
        expect(Tok::LBrack, "'['");
        lo = term();
        expect(Tok::Comma, "','");
        hi = term();
        expect(Tok::RBrack, "']'");
        if (occurs_free(v, lo) || occurs_free(v, hi)) fail("range bounds mention the bound variable");
      }
      expect(Tok::Dot, "'.'");
      Formula body = formula();
      if (lo) return forall ? forall_range(v, lo, hi, body) : exists_range(v, lo, hi, body);
      return forall ? forall_nat(v, body) : exists_nat(v, body);
    }
    if (at(Tok::LParen)) {
      // Either a parenthesised formula or a comparison whose left term
      // starts with '('; try the comparison first.
      std::size_t save = pos_;
      try {
        return comparison();
      } catch (const ParseError&) {
        pos_ = save;
      }
      take();
      Formula f = formula();
      expect(Tok::RParen, "')'");
      return f;
    }
    return comparison();
  }

  Formula comparison() {
    Term l = term();
    Tok op = peek().kind;
    switch (op) {
      case Tok::Eq:
      case Tok::Neq:
      case Tok::Le:
      case Tok::Lt:
      case Tok::Ge:
      case Tok::Gt:
        take();
        break;
      default:
        fail("expected comparison operator");
    }
    Term r = term();
    switch (op) {
      case Tok::Eq: return eq(l, r);
      case Tok::Neq: return neq(l, r);
      case Tok::Le: return le(l, r);
      case Tok::Lt: return lt(l, r);
      case Tok::Ge: return le(r, l);
      default: return lt(r, l);
    }
  }
};

}  // namespace

Term parse_term(std::string_view text) { return Parser(text).whole_term(); }

Formula parse_formula(std::string_view text) { return Parser(text).whole_formula(); }

}  // namespace explainer::lang
