#include "expl/lang.hpp"

namespace explainer::lang {

namespace {

// Guards against terms whose evaluation would not finish in reasonable time.
constexpr long kMaxExponentBits = 1 << 20;
constexpr long kMaxRangeLength = 50'000'000;

long range_length(const Integer& lo, const Integer& hi) {
  if (hi < lo) return 0;
  Integer n = hi - lo + 1;
  if (n > kMaxRangeLength) throw EvalError("range too long to evaluate: " + n.str());
  return n.convert_to<long>();
}

Integer power(const Integer& base, const Integer& exp) {
  if (exp < 0) throw EvalError("negative exponent " + exp.str());
  if (base == 0) return exp == 0 ? 1 : 0;
  if (base == 1) return 1;
  if (base == -1) return (exp % 2 == 0) ? 1 : -1;
  if (exp * static_cast<long>(msb(abs(base)) + 1) > kMaxExponentBits)
    throw EvalError("power too large to evaluate");
  return boost::multiprecision::pow(base, exp.convert_to<unsigned>());
}

}  // namespace

Integer eval_term(const Term& t, const Env& env) {
  switch (t->kind) {
    case TermKind::IntLit:
      return t->value;
    case TermKind::Var: {
      auto it = env.find(t->name);
      if (it == env.end()) throw EvalError("unbound variable " + t->name);
      return it->second;
    }
    case TermKind::Add:
      return eval_term(t->kids[0], env) + eval_term(t->kids[1], env);
    case TermKind::Sub:
      return eval_term(t->kids[0], env) - eval_term(t->kids[1], env);
    case TermKind::Mul:
      return eval_term(t->kids[0], env) * eval_term(t->kids[1], env);
    case TermKind::Pow:
      return power(eval_term(t->kids[0], env), eval_term(t->kids[1], env));
    case TermKind::Sum: {
      Integer lo = eval_term(t->kids[0], env);
      Integer hi = eval_term(t->kids[1], env);
      long n = range_length(lo, hi);
      Env inner = env;
      Integer acc = 0;
      for (long k = 0; k < n; ++k) {
        inner[t->name] = lo + k;
        acc += eval_term(t->kids[2], inner);
      }
      return acc;
    }
  }
  throw EvalError("unknown term kind");
}

bool eval_formula(const Formula& f, const Env& env, bool /*range_only*/) {
  switch (f->kind) {
    case FormulaKind::Eq:
      return eval_term(f->l, env) == eval_term(f->r, env);
    case FormulaKind::Neq:
      return eval_term(f->l, env) != eval_term(f->r, env);
    case FormulaKind::Le:
      return eval_term(f->l, env) <= eval_term(f->r, env);
    case FormulaKind::Lt:
      return eval_term(f->l, env) < eval_term(f->r, env);
    case FormulaKind::And:
      return eval_formula(f->f, env) && eval_formula(f->g, env);
    case FormulaKind::Or:
      return eval_formula(f->f, env) || eval_formula(f->g, env);
    case FormulaKind::Not:
      return !eval_formula(f->f, env);
    case FormulaKind::Implies:
      return !eval_formula(f->f, env) || eval_formula(f->g, env);
    case FormulaKind::ForallNat:
    case FormulaKind::ExistsNat:
      throw EvalError("unbounded quantifier over " + f->var + " cannot be evaluated");
    case FormulaKind::ForallRange:
    case FormulaKind::ExistsRange: {
      Integer lo = eval_term(f->l, env);
      Integer hi = eval_term(f->r, env);
      long n = range_length(lo, hi);
      bool forall = f->kind == FormulaKind::ForallRange;
      Env inner = env;
      for (long k = 0; k < n; ++k) {
        inner[f->var] = lo + k;
        bool v = eval_formula(f->f, inner);
        if (forall && !v) return false;
        if (!forall && v) return true;
      }
      return forall;
    }
  }
  throw EvalError("unknown formula kind");
}

}  // namespace explainer::lang
