#include "expl/kernel.hpp"
#include "expl/ring.hpp"

namespace explainer::kernel {

using lang::TermKind;

namespace {

struct Fail {
  std::string msg;
};

void require(bool cond, const std::string& msg) {
  if (!cond) throw Fail{msg};
}

bool is(const Term& t, TermKind k) { return t && t->kind == k; }
bool is_additive(const Term& t) { return is(t, TermKind::Add) || is(t, TermKind::Sub); }

bool is_one(const Term& t) { return is(t, TermKind::IntLit) && t->value == 1; }

// Structural match that also accepts 1*y or y*1 written as y.
bool matches(const Term& got, const Term& expected) {
  if (lang::alpha_equal(got, expected)) return true;
  if (is(expected, TermKind::Mul)) {
    if (is_one(expected->kids[0]) && lang::alpha_equal(got, expected->kids[1])) return true;
    if (is_one(expected->kids[1]) && lang::alpha_equal(got, expected->kids[0])) return true;
  }
  return false;
}

bool ring_eq(const Term& a, const Term& b) {
  try {
    return ring::ring_equal(a, b);
  } catch (const Error&) {
    return false;
  }
}

Term instance(const Term& body, const std::string& v, const Term& by) {
  try {
    return lang::replace_free(body, v, by);
  } catch (const Error& e) {
    throw Fail{e.what()};
  }
}

// a*(b±c) -> a*b ± a*c, (a±b)*c -> a*c ± b*c
bool distributes(const Term& b, const Term& a) {
  if (!is(b, TermKind::Mul) || !is_additive(a)) return false;
  const Term& l = b->kids[0];
  const Term& r = b->kids[1];
  if (is_additive(r) && r->kind == a->kind) {
    if (matches(a->kids[0], lang::mul(l, r->kids[0])) && matches(a->kids[1], lang::mul(l, r->kids[1])))
      return true;
  }
  if (is_additive(l) && l->kind == a->kind) {
    if (matches(a->kids[0], lang::mul(l->kids[0], r)) && matches(a->kids[1], lang::mul(l->kids[1], r)))
      return true;
  }
  return false;
}

Term with_body(const Term& s, const Term& body) { return lang::sum(s->name, s->kids[0], s->kids[1], body); }

// Σ(f ± g) -> Σf ± Σg ; Σ(c*f) -> c*Σf ; Σ(f*c) -> Σf*c
bool linear(const Term& b, const Term& a) {
  if (!is(b, TermKind::Sum)) return false;
  const Term& body = b->kids[2];
  if (is_additive(body) && a->kind == body->kind) {
    return lang::alpha_equal(a->kids[0], with_body(b, body->kids[0])) &&
           lang::alpha_equal(a->kids[1], with_body(b, body->kids[1]));
  }
  if (is(body, TermKind::Mul) && is(a, TermKind::Mul)) {
    const Term& c = body->kids[0];
    if (!lang::occurs_free(b->name, c) && lang::alpha_equal(a->kids[0], c) &&
        lang::alpha_equal(a->kids[1], with_body(b, body->kids[1])))
      return true;
    const Term& d = body->kids[1];
    if (!lang::occurs_free(b->name, d) && lang::alpha_equal(a->kids[1], d) &&
        lang::alpha_equal(a->kids[0], with_body(b, body->kids[0])))
      return true;
  }
  return false;
}

// Σ_{lo}^{hi} f -> Σ_{lo}^{hi'} f + f[hi], hi' = hi - 1
bool split_last(const Term& s, const Term& a) {
  if (!is(s, TermKind::Sum) || !is(a, TermKind::Add) || !is(a->kids[0], TermKind::Sum)) return false;
  const Term& part = a->kids[0];
  if (!ring_eq(part->kids[1], lang::sub(s->kids[1], lang::lit(1)))) return false;
  if (!lang::alpha_equal(part, lang::sum(s->name, s->kids[0], part->kids[1], s->kids[2]))) return false;
  return ring_eq(a->kids[1], instance(s->kids[2], s->name, s->kids[1]));
}

// Σ_{lo}^{hi} f -> f[lo] + Σ_{lo'}^{hi} f, lo' = lo + 1
bool split_first(const Term& s, const Term& a) {
  if (!is(s, TermKind::Sum) || !is(a, TermKind::Add) || !is(a->kids[1], TermKind::Sum)) return false;
  const Term& part = a->kids[1];
  if (!ring_eq(part->kids[0], lang::add(s->kids[0], lang::lit(1)))) return false;
  if (!lang::alpha_equal(part, lang::sum(s->name, part->kids[0], s->kids[1], s->kids[2]))) return false;
  return ring_eq(a->kids[0], instance(s->kids[2], s->name, s->kids[0]));
}

bool pow_add(const Term& b, const Term& a) {
  if (!is(b, TermKind::Pow) || !is(b->kids[1], TermKind::Add) || !is(a, TermKind::Mul)) return false;
  const Term& x = b->kids[0];
  return lang::alpha_equal(a->kids[0], lang::pow(x, b->kids[1]->kids[0])) &&
         lang::alpha_equal(a->kids[1], lang::pow(x, b->kids[1]->kids[1]));
}

std::vector<Formula> lemma_rewrite(const RewriteStep& st, const Registry& reg) {
  const Formula* stmt = reg.lemma(st.lemma);
  require(stmt != nullptr, "unknown lemma " + st.lemma);
  std::vector<Formula> sides;
  std::set<std::string> used;
  Formula cur = *stmt;
  auto bind = [&](const std::string& v) -> Term {
    auto it = st.inst.find(v);
    require(it != st.inst.end(), "lemma variable " + v + " not instantiated");
    used.insert(v);
    return it->second;
  };
  auto subst = [&](const Formula& f, const std::string& v, const Term& t) {
    try {
      return lang::replace_free(f, v, t);
    } catch (const Error& e) {
      throw Fail{e.what()};
    }
  };
  while (true) {
    if (cur->kind == lang::FormulaKind::ForallNat) {
      Term t = bind(cur->var);
      sides.push_back(lang::le(lang::lit(0), t));
      cur = subst(cur->f, cur->var, t);
    } else if (cur->kind == lang::FormulaKind::ForallRange) {
      Term t = bind(cur->var);
      sides.push_back(lang::conj(lang::le(cur->l, t), lang::le(t, cur->r)));
      cur = subst(cur->f, cur->var, t);
    } else if (cur->kind == lang::FormulaKind::Implies) {
      sides.push_back(cur->f);
      cur = cur->g;
    } else {
      break;
    }
  }
  require(used.size() == st.inst.size(), "lemma instantiation has extra variables");
  require(cur->kind == lang::FormulaKind::Eq, "lemma does not end in an equation");
  bool fwd = lang::alpha_equal(st.before, cur->l) && lang::alpha_equal(st.after, cur->r);
  bool bwd = lang::alpha_equal(st.before, cur->r) && lang::alpha_equal(st.after, cur->l);
  require(fwd || bwd, "terms do not match lemma " + st.lemma);
  return sides;
}

std::vector<Formula> apply(const RewriteStep& st, const Registry& reg) {
  const Term& b = st.before;
  const Term& a = st.after;
  require(b && a, "rewrite step without terms");
  switch (st.rule) {
    case Rule::Distribute:
      require(distributes(b, a), "not a distribution");
      return {};
    case Rule::Factor:
      require(distributes(a, b), "not a factoring");
      return {};
    case Rule::SumLinearity:
      require(linear(b, a) || linear(a, b), "not sum linearity");
      return {};
    case Rule::SumSplitLast: {
      const Term& s = is(b, TermKind::Sum) ? b : a;
      require(split_last(b, a) || split_last(a, b), "not a split of the last summand");
      return {lang::le(s->kids[0], s->kids[1])};
    }
    case Rule::SumSplitFirst: {
      const Term& s = is(b, TermKind::Sum) ? b : a;
      require(split_first(b, a) || split_first(a, b), "not a split of the first summand");
      return {lang::le(s->kids[0], s->kids[1])};
    }
    case Rule::IndexShift: {
      require(st.shift != nullptr, "index shift without amount");
      require(is(b, TermKind::Sum) && is(a, TermKind::Sum), "index shift needs sums");
      const Term& k = st.shift;
      require(!lang::occurs_free(b->name, k) && !lang::occurs_free(a->name, k),
              "shift mentions the summation index");
      require(ring_eq(a->kids[0], lang::add(b->kids[0], k)), "lower bound not shifted");
      require(ring_eq(a->kids[1], lang::add(b->kids[1], k)), "upper bound not shifted");
      Term moved = instance(b->kids[2], b->name, lang::sub(lang::var(a->name), k));
      require(ring_eq(a->kids[2], moved), "body not shifted");
      return {};
    }
    case Rule::Telescope: {
      require(is(b, TermKind::Sum) && is(b->kids[2], TermKind::Sub), "telescope needs a sum of differences");
      const std::string& i = b->name;
      const Term& x = b->kids[2]->kids[0];
      const Term& y = b->kids[2]->kids[1];
      require(ring_eq(x, instance(y, i, lang::add(lang::var(i), lang::lit(1)))), "body is not f(i+1) - f(i)");
      Term lo = b->kids[0];
      Term hi = b->kids[1];
      Term expect = lang::sub(instance(y, i, lang::add(hi, lang::lit(1))), instance(y, i, lo));
      require(ring_eq(a, expect), "result is not f(m+1) - f(a)");
      return {lang::le(lo, lang::add(hi, lang::lit(1)))};
    }
    case Rule::PowAddExp:
      require(pow_add(b, a) || pow_add(a, b), "not x^(a+b) = x^a * x^b");
      return {};
    case Rule::RingNormalize:
      require(ring_eq(b, a), "normal forms differ");
      return {};
    case Rule::LemmaRewrite:
      return lemma_rewrite(st, reg);
  }
  throw Fail{"unknown rule"};
}

}  // namespace

RewriteResult apply_rewrite(const RewriteStep& step, const Registry& reg) {
  RewriteResult r;
  try {
    r.side_conditions = apply(step, reg);
    r.ok = true;
  } catch (const Fail& f) {
    r.message = rule_name(step.rule) + ": " + f.msg;
  } catch (const Error& e) {
    r.message = rule_name(step.rule) + ": " + e.what();
  }
  return r;
}

}  // namespace explainer::kernel
