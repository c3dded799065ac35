#include "expl/dioph.hpp"

#include "expl/build.hpp"
#include "expl/ring.hpp"

#include <algorithm>

namespace explainer::dioph {

using namespace build;
namespace L = lang;

IntPoly::IntPoly(std::vector<Integer> c, std::string v) : coeffs(std::move(c)), var(std::move(v)) {
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  if (coeffs.size() < 2) throw DomainError("polynomial must have degree at least 1");
}

Integer IntPoly::eval(const Integer& x) const {
  Integer acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Term IntPoly::term() const {
  auto mono = [&](int k) -> Term { return k == 1 ? L::var(var) : L::pow(L::var(var), L::lit(k)); };
  // The leading term keeps its sign; later terms are added or subtracted.
  auto scaled = [&](const Integer& c, int k) -> Term {
    if (k == 0) return L::lit(c);
    return c == 1 ? mono(k) : L::mul(L::lit(c), mono(k));
  };
  Term acc = scaled(lead(), degree());
  for (int k = degree() - 1; k >= 0; --k) {
    const Integer& a = coeffs[k];
    if (a == 0) continue;
    Term t = scaled(abs(a), k);
    acc = a < 0 ? L::sub(acc, t) : L::add(acc, t);
  }
  return acc;
}

std::string IntPoly::str() const { return L::print(term()); }

IntPoly IntPoly::parse(std::string_view text) {
  Term t = L::parse_term(text);
  auto fv = L::free_vars(t);
  if (fv.size() != 1) throw DomainError("expected a polynomial in one variable: " + std::string(text));
  std::string v = *fv.begin();
  auto c = ring::univariate_coeffs(t, v);
  if (!c) throw DomainError("not an integer polynomial: " + std::string(text));
  return IntPoly(*c, v);
}

Integer bound(const IntPoly& p) {
  if (p.degree() < 1) throw DomainError("polynomial must have degree at least 1");
  Integer m = 0;
  for (int i = 0; i < p.degree(); ++i) m = std::max(m, Integer(abs(p.coeffs[i])));
  return p.degree() * m;
}

std::vector<Integer> solve(const IntPoly& p) {
  Integer b = bound(p);
  std::vector<Integer> roots;
  if (b <= 1'000'000) {
    for (Integer x = 0; x <= b; ++x)
      if (p.eval(x) == 0) roots.push_back(x);
    return roots;
  }
  // Large bound: a root x > 0 divides the lowest nonzero coefficient.
  std::size_t low = 0;
  while (p.coeffs[low] == 0) ++low;
  if (low > 0) roots.push_back(0);
  Integer a = abs(p.coeffs[low]);
  std::vector<Integer> cand;
  for (Integer d = 1; d * d <= a; ++d)
    if (a % d == 0) {
      cand.push_back(d);
      cand.push_back(a / d);
    }
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  for (const auto& x : cand)
    if (p.eval(x) == 0) roots.push_back(x);
  return roots;
}

Formula statement(const IntPoly& p) { return L::forall_nat(p.var, L::neq(p.term(), L::lit(0))); }

namespace {

Term x_of(const IntPoly& p) { return L::var(p.var); }

Thm compute_lit(const std::string& text) { return by_compute(F(text)); }

// From 0 < s * p(x) (s = sign of the leading coefficient) conclude p(x) != 0.
Thm nonzero_from_positive(const IntPoly& p, const Thm& pos) {
  Term P = p.term();
  if (p.lead() > 0) {
    Thm gt = fit(pos, L::lt(L::lit(0), P));
    return apply("GtNe", {{"y", L::lit(0)}, {"x", P}}, {gt});
  }
  Term negP = L::sub(L::lit(0), P);
  Thm gt = fit(pos, L::lt(L::lit(0), negP));
  Thm shifted = apply("AddMonoLt", {{"x", L::lit(0)}, {"y", negP}, {"z", P}}, {gt});
  Thm lt = fit(shifted, L::lt(P, L::lit(0)));
  return apply("LtNe", {{"x", P}, {"y", L::lit(0)}}, {lt});
}

// Coefficients of q(c + u) for q = sign * p.
std::vector<Integer> taylor_at(const IntPoly& p, const Integer& c) {
  int n = p.degree();
  std::vector<Integer> q = p.coeffs;
  if (p.lead() < 0)
    for (auto& a : q) a = -a;
  // Repeated synthetic division by (x - c).
  std::vector<Integer> d;
  for (int j = 0; j <= n; ++j) {
    Integer r = 0;
    std::vector<Integer> next(q.size() > 1 ? q.size() - 1 : 0);
    for (int i = static_cast<int>(q.size()) - 1; i >= 0; --i) {
      r = r * c + q[i];
      if (i > 0) next[i - 1] = r;
    }
    d.push_back(r);
    q = std::move(next);
  }
  return d;
}

// x > B  =>  p(x) != 0, by writing sign * p as a polynomial in x - (B + 1)
// whose coefficients are all positive.
Thm tail_argument(const IntPoly& p, const Integer& B, const Thm& above) {
  Term x = x_of(p);
  Integer c = B + 1;
  std::vector<Integer> d = taylor_at(p, c);
  for (std::size_t j = 0; j < d.size(); ++j)
    if (d[j] < (j == 0 ? 1 : 0)) throw Error("dominance argument fails at the bound");

  Thm succ = apply("SuccGt", {{"t", L::lit(B)}, {"x", x}}, {above});
  Thm cx = fit(succ, L::le(L::lit(c), x));
  Term u = L::sub(x, L::lit(c));
  Thm hu = add_le(cx, L::lit(-c), L::lit(0), u);

  Term acc_t = L::lit(d[0]);
  Thm acc = by_compute(L::lt(L::lit(0), acc_t));
  for (std::size_t j = 1; j < d.size(); ++j) {
    if (d[j] == 0) continue;
    Term uj = j == 1 ? u : L::pow(u, L::lit(j));
    Term zj = L::pow(L::lit(0), L::lit(j));
    Thm pw = j == 1 ? hu
                    : apply("PowMonoLe", {{"x", L::lit(0)}, {"y", u}, {"n", L::lit(j)}},
                            {compute_lit("0 <= 0"), hu, by_compute(L::le(L::lit(0), L::lit(j)))});
    Term lo = j == 1 ? L::lit(0) : zj;
    Thm sc = apply("MulMonoLe", {{"x", lo}, {"y", uj}, {"z", L::lit(d[j])}},
                   {pw, by_compute(L::le(L::lit(0), L::lit(d[j])))});
    Term tj = L::mul(L::lit(d[j]), uj);
    Thm nonneg = fit(sc, L::le(L::lit(0), tj));
    Term next_t = L::add(acc_t, tj);
    Thm grow = add_le(nonneg, acc_t, acc_t, next_t);
    acc = lt_le_trans(acc, grow);
    acc_t = next_t;
  }
  return nonzero_from_positive(p, acc);
}

}  // namespace

Proof prove_no_solution_enum(const IntPoly& p) {
  auto roots = solve(p);
  if (!roots.empty()) throw RootFound(roots.front());
  Integer B = bound(p);
  Term x = x_of(p);
  Formula body = L::neq(p.term(), L::lit(0));

  Proof en;
  if (B < 1'000'000) {
    std::vector<Proof> cases;
    for (Integer v = 0; v <= B; ++v) cases.push_back(kernel::compute(L::replace_free(body, p.var, L::lit(v))));
    en = kernel::range_enum(p.var, L::lit(0), L::lit(B), body, std::move(cases));
  } else {
    en = kernel::range_enum_generated(p.var, L::lit(0), L::lit(B), body);
  }
  Thm enum_thm{en, L::forall_range(p.var, L::lit(0), L::lit(B), body)};

  Thm hx = assume("hx", L::le(L::lit(0), x));
  Formula below_f = L::le(x, L::lit(B));
  Formula above_f = L::lt(L::lit(B), x);
  Thm below = imp_i("hb", below_f, forall_e(enum_thm, x, and_i(hx, assume("hb", below_f))));
  Thm above = imp_i("ha", above_f, tail_argument(p, B, assume("ha", above_f)));
  Thm split = case_split(axiom("Trichotomy", {{"x", x}, {"t", L::lit(B)}}), below, above);
  return forall_i(p.var, split, "hx").proof;
}

// ---- interval prover -------------------------------------------------------

namespace {

struct Monomial {
  Integer a, c;
  int k;
};

Monomial shape(const IntPoly& p) {
  int k = p.degree();
  for (int i = 1; i < k; ++i)
    if (p.coeffs[i] != 0) throw UnsupportedShape("interval prover needs a x^k - c, got " + p.str());
  if (p.lead() < 1 || p.coeffs[0] > -1) throw UnsupportedShape("interval prover needs a x^k - c, got " + p.str());
  return {p.lead(), -p.coeffs[0], k};
}

Integer ipow(const Integer& b, int k) {
  Integer r = 1;
  for (int i = 0; i < k; ++i) r *= b;
  return r;
}

}  // namespace

Integer threshold(const IntPoly& p) {
  Monomial m = shape(p);
  Integer lo = 0, hi = 1;
  while (m.a * ipow(hi, m.k) <= m.c) hi *= 2;
  // Invariant: a lo^k <= c < a hi^k.
  while (hi - lo > 1) {
    Integer mid = (lo + hi) / 2;
    if (m.a * ipow(mid, m.k) <= m.c)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

Proof prove_no_solution_interval(const IntPoly& p) {
  Monomial m = shape(p);
  Integer t = threshold(p);
  Integer tk = ipow(t, m.k), t1k = ipow(t + 1, m.k);
  if (m.a * tk == m.c) throw RootFound(t);
  Term x = x_of(p);
  Term P = p.term();
  Term K = L::lit(m.k);
  Term A = L::lit(m.a);
  Term negc = L::lit(-m.c);
  std::string y = p.var == "y" ? "z" : "y";
  Term Y = L::var(y);
  Term Py = L::replace_free(P, p.var, Y);

  // Below: forall y in [0, t] . p(y) != 0.
  Thm hr = assume("hr", L::conj(L::le(L::lit(0), Y), L::le(Y, L::lit(t))));
  Thm pw = apply("PowMonoLe", {{"x", Y}, {"y", L::lit(t)}, {"n", K}},
                 {and_l(hr), and_r(hr), by_compute(L::le(L::lit(0), K))});
  pw = eq_subst(by_compute(L::eq(L::pow(L::lit(t), K), L::lit(tk))), pw, {1});
  if (m.a != 1)
    pw = apply("MulMonoLe", {{"x", pw.concl->l}, {"y", pw.concl->r}, {"z", A}},
               {pw, by_compute(L::le(L::lit(0), A))});
  Thm low = add_le(pw, negc, Py, L::lit(m.a * tk - m.c));
  Thm neg = le_lt_trans(low, by_compute(L::lt(L::lit(m.a * tk - m.c), L::lit(0))));
  Thm ne_y = apply("LtNe", {{"x", Py}, {"y", L::lit(0)}}, {neg});
  Thm range = forall_range_i(y, L::lit(0), L::lit(t), ne_y, "hr");

  Thm hx = assume("hx", L::le(L::lit(0), x));
  Formula below_f = L::le(x, L::lit(t));
  Thm below = imp_i("hb", below_f, forall_e(range, x, and_i(hx, assume("hb", below_f))));

  // Above: t < x gives (t + 1)^k <= x^k.
  Formula above_f = L::lt(L::lit(t), x);
  Thm succ = apply("SuccGt", {{"t", L::lit(t)}, {"x", x}}, {assume("ha", above_f)});
  succ = fit(succ, L::le(L::lit(t + 1), x));
  Thm up = apply("PowMonoLe", {{"x", L::lit(t + 1)}, {"y", x}, {"n", K}},
                 {by_compute(L::le(L::lit(0), L::lit(t + 1))), succ, by_compute(L::le(L::lit(0), K))});
  up = eq_subst(by_compute(L::eq(L::pow(L::lit(t + 1), K), L::lit(t1k))), up, {0});
  if (m.a != 1)
    up = apply("MulMonoLe", {{"x", up.concl->l}, {"y", up.concl->r}, {"z", A}},
               {up, by_compute(L::le(L::lit(0), A))});
  Thm high = add_le(up, negc, L::lit(m.a * t1k - m.c), P);
  Thm pos = lt_le_trans(by_compute(L::lt(L::lit(0), L::lit(m.a * t1k - m.c))), high);
  Thm above = imp_i("ha", above_f, nonzero_from_positive(p, pos));

  Thm split = case_split(axiom("Trichotomy", {{"x", x}, {"t", L::lit(t)}}), below, above);
  return forall_i(p.var, split, "hx").proof;
}

}  // namespace explainer::dioph
