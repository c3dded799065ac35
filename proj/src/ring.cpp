#include "expl/ring.hpp"

#include <algorithm>

namespace explainer::ring {

using lang::Term;
using lang::TermKind;

namespace {

constexpr long kMaxPowerBits = 1 << 20;
constexpr long kMaxPolyPower = 4096;
constexpr std::size_t kMaxPolyTerms = 200000;
constexpr long kMaxClosedSum = 10000;

Poly constant(const Rational& c) {
  Poly p;
  if (c != 0) p.terms.emplace("", Poly::Entry{Monomial{}, c});
  return p;
}

std::string factor_key(const Factor& f) { return f.key + "^(" + f.exp->key() + ")"; }

Monomial make_mono(std::vector<Factor> fs) {
  std::sort(fs.begin(), fs.end(), [](const Factor& a, const Factor& b) { return a.key < b.key; });
  Monomial m{std::move(fs), ""};
  for (std::size_t k = 0; k < m.factors.size(); ++k) {
    if (k) m.key += "*";
    m.key += factor_key(m.factors[k]);
  }
  return m;
}

void add_entry(Poly& p, const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto it = p.terms.find(m.key);
  if (it == p.terms.end()) {
    p.terms.emplace(m.key, Poly::Entry{m, c});
    return;
  }
  it->second.coeff += c;
  if (it->second.coeff == 0) p.terms.erase(it);
}

Poly add(const Poly& a, const Poly& b, int sign = 1) {
  Poly out = a;
  for (const auto& [k, e] : b.terms) add_entry(out, e.mono, sign * e.coeff);
  return out;
}

Poly mul(const Poly& a, const Poly& b);

Monomial mono_mul(const Monomial& a, const Monomial& b) {
  std::vector<Factor> fs = a.factors;
  for (const Factor& f : b.factors) {
    auto it = std::find_if(fs.begin(), fs.end(), [&](const Factor& g) { return g.key == f.key; });
    if (it == fs.end()) {
      fs.push_back(f);
      continue;
    }
    Poly e = add(*it->exp, *f.exp);
    if (e.is_zero())
      fs.erase(it);
    else
      it->exp = std::make_shared<const Poly>(std::move(e));
  }
  return make_mono(std::move(fs));
}

Poly mul(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ka, ea] : a.terms)
    for (const auto& [kb, eb] : b.terms) add_entry(out, mono_mul(ea.mono, eb.mono), ea.coeff * eb.coeff);
  if (out.terms.size() > kMaxPolyTerms) throw Error("polynomial too large to normalize");
  return out;
}

Poly from_factor(Factor f) {
  Poly p;
  add_entry(p, make_mono({std::move(f)}), 1);
  return p;
}

PolyPtr share(Poly p) { return std::make_shared<const Poly>(std::move(p)); }

Rational rat_pow(const Rational& c, long k) {
  bool inv = k < 0;
  unsigned n = static_cast<unsigned>(inv ? -k : k);
  Integer num = numerator(c);
  Integer den = denominator(c);
  long bits = static_cast<long>(msb(abs(num) + 1) + msb(den) + 2);
  if (bits * static_cast<long>(n) > kMaxPowerBits) throw Error("power too large to normalize");
  Rational r(boost::multiprecision::pow(num, n), boost::multiprecision::pow(den, n));
  return inv ? Rational(1) / r : r;
}

// Monomial raised to a polynomial exponent: each factor exponent is scaled.
Poly mono_pow(const Monomial& m, const Poly& e) {
  std::vector<Factor> fs;
  for (Factor f : m.factors) {
    f.exp = share(mul(*f.exp, e));
    fs.push_back(std::move(f));
  }
  Poly p;
  add_entry(p, make_mono(std::move(fs)), 1);
  return p;
}

Poly opaque_pow(const Poly& b, const Poly& e) {
  Factor f;
  f.kind = AtomKind::Pow;
  f.key = "P(" + b.key() + ";" + e.key() + ")";
  f.parts = {share(b), share(e)};
  f.exp = share(constant(1));
  return from_factor(std::move(f));
}

Poly pow_const(const Poly& b, const Rational& er) {
  if (denominator(er) != 1 || er < 0)
    throw Error("exponent must be a natural number, got " + er.str());
  Integer ei = numerator(er);
  if (ei == 0) return constant(1);
  if (b.is_zero()) return Poly{};
  if (b.terms.size() == 1) {
    const auto& e = b.terms.begin()->second;
    if (ei > kMaxPowerBits) throw Error("power too large to normalize");
    Poly p = mono_pow(e.mono, constant(er));
    Poly c = constant(rat_pow(e.coeff, ei.convert_to<long>()));
    return mul(c, p);
  }
  if (ei > kMaxPolyPower) throw Error("polynomial power too large to normalize");
  long n = ei.convert_to<long>();
  Poly acc = constant(1);
  Poly sq = b;
  while (n > 0) {
    if (n & 1) acc = mul(acc, sq);
    n >>= 1;
    if (n) sq = mul(sq, sq);
  }
  return acc;
}

Poly pow_symbolic(const Poly& b, const Poly& e) {
  if (b.terms.size() != 1) return opaque_pow(b, e);
  const auto& entry = b.terms.begin()->second;
  const Rational& c = entry.coeff;
  if (denominator(c) != 1 || c < 1) return opaque_pow(b, e);
  Poly rest = mono_pow(entry.mono, e);
  if (c == 1) return rest;

  Rational k = 0;
  auto it = e.terms.find("");
  if (it != e.terms.end()) k = it->second.coeff;
  if (denominator(k) != 1) return opaque_pow(b, e);
  Poly sym = add(e, constant(k), -1);
  Factor f;
  f.kind = AtomKind::Base;
  f.base = numerator(c);
  f.key = "c" + f.base.str();
  f.exp = share(std::move(sym));
  Poly scaled = mul(constant(rat_pow(c, numerator(k).convert_to<long>())), from_factor(std::move(f)));
  return mul(scaled, rest);
}

Poly nf(const Term& t, int depth);

Poly nf_sum(const Term& t, int depth) {
  Poly lo = nf(t->kids[0], depth);
  Poly hi = nf(t->kids[1], depth);
  auto diff = add(hi, lo, -1).constant();
  if (diff && *diff < 0) return Poly{};
  auto clo = lo.constant();
  auto chi = hi.constant();
  auto fv = lang::free_vars(t);
  if (clo && chi && fv.empty() && *chi - *clo < kMaxClosedSum) {
    try {
      return constant(Rational(lang::eval_term(t, {})));
    } catch (const EvalError&) {
    }
  }

  std::string renamed = "#" + std::to_string(depth);
  Term body = lang::replace_free(t->kids[2], t->name, lang::var(renamed));
  Poly pb = nf(body, depth + 1);
  Factor f;
  f.kind = AtomKind::Sum;
  f.name = renamed;
  f.index = t->name;
  f.key = "S(" + lo.key() + ";" + hi.key() + ";" + pb.key() + ")";
  f.parts = {share(std::move(lo)), share(std::move(hi)), share(std::move(pb))};
  f.exp = share(constant(1));
  return from_factor(std::move(f));
}

Poly nf(const Term& t, int depth) {
  switch (t->kind) {
    case TermKind::IntLit:
      return constant(Rational(t->value));
    case TermKind::Var: {
      Factor f;
      f.kind = AtomKind::Var;
      f.name = t->name;
      f.key = "v" + t->name;
      f.exp = share(constant(1));
      return from_factor(std::move(f));
    }
    case TermKind::Add:
      return add(nf(t->kids[0], depth), nf(t->kids[1], depth));
    case TermKind::Sub:
      return add(nf(t->kids[0], depth), nf(t->kids[1], depth), -1);
    case TermKind::Mul:
      return mul(nf(t->kids[0], depth), nf(t->kids[1], depth));
    case TermKind::Pow: {
      Poly b = nf(t->kids[0], depth);
      Poly e = nf(t->kids[1], depth);
      if (auto c = e.constant()) return pow_const(b, *c);
      return pow_symbolic(b, e);
    }
    case TermKind::Sum:
      return nf_sum(t, depth);
  }
  throw Error("unknown term kind");
}

// ---- back to terms --------------------------------------------------------

Term to_term(const Poly& p);

Term factor_term(const Factor& f) {
  Term atom;
  switch (f.kind) {
    case AtomKind::Var:
      atom = lang::var(f.name);
      break;
    case AtomKind::Base:
      return lang::pow(lang::lit(f.base), to_term(*f.exp));
    case AtomKind::Sum: {
      Term body = lang::replace_free(to_term(*f.parts[2]), f.name, lang::var(f.index));
      atom = lang::sum(f.index, to_term(*f.parts[0]), to_term(*f.parts[1]), body);
      break;
    }
    case AtomKind::Pow:
      atom = lang::pow(to_term(*f.parts[0]), to_term(*f.parts[1]));
      break;
  }
  auto c = f.exp->constant();
  if (c && *c == 1) return atom;
  return lang::pow(atom, to_term(*f.exp));
}

Rational degree(const Monomial& m) {
  Rational d = 0;
  for (const auto& f : m.factors)
    if (auto c = f.exp->constant()) d += *c;
  return d;
}

Term to_term(const Poly& p) {
  if (p.is_zero()) return lang::lit(0);
  std::vector<const Poly::Entry*> es;
  for (const auto& [k, e] : p.terms) es.push_back(&e);
  std::stable_sort(es.begin(), es.end(), [](const Poly::Entry* a, const Poly::Entry* b) {
    return degree(a->mono) > degree(b->mono);
  });

  Term acc;
  for (const auto* e : es) {
    Integer num = numerator(e->coeff);
    Integer den = denominator(e->coeff);
    std::vector<Factor> fs = e->mono.factors;
    for (auto& f : fs) {
      if (f.kind != AtomKind::Base) continue;
      while (den % f.base == 0) {
        den /= f.base;
        f.exp = share(add(*f.exp, constant(1), -1));
      }
    }
    if (den != 1) throw Error("normal form has a fractional coefficient " + e->coeff.str());
    Term m;
    for (const auto& f : fs) m = m ? lang::mul(m, factor_term(f)) : factor_term(f);
    Integer mag = abs(num);
    Term piece;
    if (!m)
      piece = lang::lit(acc ? mag : num);
    else if (mag == 1 && (acc || num > 0))
      piece = m;
    else
      piece = lang::mul(lang::lit(acc ? mag : num), m);
    if (!acc)
      acc = piece;
    else
      acc = num < 0 ? lang::sub(acc, piece) : lang::add(acc, piece);
  }
  return acc;
}

}  // namespace

std::optional<Rational> Poly::constant() const {
  if (terms.empty()) return Rational(0);
  if (terms.size() == 1 && terms.begin()->first.empty()) return terms.begin()->second.coeff;
  return std::nullopt;
}

std::string Poly::key() const {
  if (terms.empty()) return "0";
  std::string s;
  for (const auto& [k, e] : terms) {
    if (!s.empty()) s += " + ";
    s += e.coeff.str();
    if (!k.empty()) s += "*" + k;
  }
  return s;
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.terms.size() != b.terms.size()) return false;
  auto ia = a.terms.begin();
  auto ib = b.terms.begin();
  for (; ia != a.terms.end(); ++ia, ++ib)
    if (ia->first != ib->first || ia->second.coeff != ib->second.coeff) return false;
  return true;
}

Poly normal_form(const Term& t) { return nf(t, 0); }

bool ring_equal(const Term& a, const Term& b) { return normal_form(a) == normal_form(b); }

Term normalize_ring(const Term& t) { return to_term(normal_form(t)); }

std::optional<std::vector<Integer>> univariate_coeffs(const Term& t, const std::string& var) {
  Poly p = normal_form(t);
  std::vector<Integer> out;
  for (const auto& [k, e] : p.terms) {
    if (denominator(e.coeff) != 1) return std::nullopt;
    std::size_t deg = 0;
    if (!k.empty()) {
      if (e.mono.factors.size() != 1) return std::nullopt;
      const Factor& f = e.mono.factors[0];
      auto c = f.exp->constant();
      if (f.kind != AtomKind::Var || f.name != var || !c || denominator(*c) != 1) return std::nullopt;
      deg = numerator(*c).convert_to<std::size_t>();
    }
    if (out.size() <= deg) out.resize(deg + 1, 0);
    out[deg] = numerator(e.coeff);
  }
  if (out.empty()) out.push_back(0);
  return out;
}

}  // namespace explainer::ring
