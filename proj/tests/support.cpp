#include "support.hpp"

#include "expl/proof_io.hpp"

#include <fstream>
#include <sstream>

namespace testsupport {

namespace L = explainer::lang;
namespace K = explainer::kernel;

std::string source_path(const std::string& rel) { return std::string(EXPL_SOURCE_DIR) + "/" + rel; }

std::string read_text(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

int uniform(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

Integer random_natural(std::mt19937_64& rng, int max_digits) {
  int n = uniform(rng, 1, max_digits);
  Integer v = uniform(rng, 1, 9);
  for (int i = 1; i < n; ++i) v = v * 10 + uniform(rng, 0, 9);
  return v;
}

namespace {

int fresh_counter = 0;

Term term_rec(std::mt19937_64& rng, int depth, std::vector<std::string>& vars) {
  int pick = depth <= 0 ? uniform(rng, 0, 1) : uniform(rng, 0, 7);
  switch (pick) {
    case 0: return L::lit(Integer(uniform(rng, -20, 20)));
    case 1:
      if (vars.empty()) return L::lit(Integer(uniform(rng, 0, 9)));
      return L::var(vars[uniform(rng, 0, static_cast<int>(vars.size()) - 1)]);
    case 2: return L::add(term_rec(rng, depth - 1, vars), term_rec(rng, depth - 1, vars));
    case 3: return L::sub(term_rec(rng, depth - 1, vars), term_rec(rng, depth - 1, vars));
    case 4:
    case 5: return L::mul(term_rec(rng, depth - 1, vars), term_rec(rng, depth - 1, vars));
    case 6: return L::pow(term_rec(rng, depth - 1, vars), L::lit(Integer(uniform(rng, 0, 3))));
    default: {
      std::string idx = "i" + std::to_string(fresh_counter++ % 7);
      Term lo = L::lit(Integer(uniform(rng, -2, 3)));
      Term hi = L::lit(Integer(uniform(rng, -1, 5)));
      vars.push_back(idx);
      Term body = term_rec(rng, depth - 1, vars);
      vars.pop_back();
      return L::sum(idx, lo, hi, body);
    }
  }
}

Formula formula_rec(std::mt19937_64& rng, int depth, std::vector<std::string>& vars) {
  int pick = depth <= 0 ? 0 : uniform(rng, 0, 8);
  switch (pick) {
    case 0: {
      static const L::FormulaKind kinds[] = {L::FormulaKind::Eq, L::FormulaKind::Neq, L::FormulaKind::Le,
                                             L::FormulaKind::Lt};
      return L::atom(kinds[uniform(rng, 0, 3)], term_rec(rng, 2, vars), term_rec(rng, 2, vars));
    }
    case 1: return L::conj(formula_rec(rng, depth - 1, vars), formula_rec(rng, depth - 1, vars));
    case 2: return L::disj(formula_rec(rng, depth - 1, vars), formula_rec(rng, depth - 1, vars));
    case 3: return L::implies(formula_rec(rng, depth - 1, vars), formula_rec(rng, depth - 1, vars));
    case 4: return L::neg(formula_rec(rng, depth - 1, vars));
    default: {
      std::string v = "v" + std::to_string(uniform(rng, 0, 3));
      vars.push_back(v);
      Formula body = formula_rec(rng, depth - 1, vars);
      vars.pop_back();
      Term lo = L::lit(Integer(uniform(rng, 0, 2))), hi = L::lit(Integer(uniform(rng, 0, 4)));
      switch (pick) {
        case 5: return L::forall_nat(v, body);
        case 6: return L::exists_nat(v, body);
        case 7: return L::forall_range(v, lo, hi, body);
        default: return L::exists_range(v, lo, hi, body);
      }
    }
  }
}

}  // namespace

Term random_term(std::mt19937_64& rng, int depth, const std::vector<std::string>& vars) {
  std::vector<std::string> vs = vars;
  return term_rec(rng, depth, vs);
}

Formula random_formula(std::mt19937_64& rng, int depth, const std::vector<std::string>& vars) {
  std::vector<std::string> vs = vars;
  return formula_rec(rng, depth, vs);
}

Integer ipow(const Integer& b, unsigned e) {
  Integer r = 1;
  for (unsigned i = 0; i < e; ++i) r *= b;
  return r;
}

Integer repunit_general_lhs(int b, int p) {
  Integer head = 1;
  for (int i = 0; i <= b - 2; ++i) head += Integer(b - 2 - i) * ipow(b, i);
  Integer rep = 0;
  for (int j = 0; j < p; ++j) rep += ipow(b, static_cast<unsigned>((b - 1) * j));
  return head * rep * (b - 1);
}

Integer repunit_general_rhs(int b, int p) {
  Integer s = 0;
  for (int k = 0; k < (b - 1) * p; ++k) s += ipow(b, k);
  return s;
}

// ---- mutation ----------------------------------------------------------------

namespace {

struct Site {
  K::SExpr* atom;
  int kind;  // 0 digit in a literal, 1 rule name, 2 axiom name
};

bool has_digit(const std::string& s) {
  return s.find_first_of("0123456789") != std::string::npos;
}

bool is_integer(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = s[0] == '-' ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}

void collect(K::SExpr& e, std::vector<Site>& out) {
  if (!e.is_list) {
    if ((e.quoted && has_digit(e.atom)) || is_integer(e.atom)) out.push_back({&e, 0});
    return;
  }
  if (!e.items.empty() && !e.items[0].is_list) {
    const std::string& tag = e.items[0].atom;
    // Labels and variable names are skipped: only terms, formulas and names.
    if (tag == "step" && e.items.size() > 1) out.push_back({&e.items[1], 1});
    if (tag == "axiom" && e.items.size() > 1) out.push_back({&e.items[1], 2});
  }
  for (std::size_t i = 1; i < e.items.size(); ++i) collect(e.items[i], out);
}

}  // namespace

Mutation mutate(const Proof& p, std::mt19937_64& rng) {
  K::SExpr e = K::to_sexpr(p);
  std::vector<Site> sites;
  collect(e, sites);
  Site s = sites[uniform(rng, 0, static_cast<int>(sites.size()) - 1)];
  std::string before = s.atom->atom;
  Mutation m;
  m.kind = s.kind;
  if (s.kind == 0) {
    std::vector<std::size_t> digits;
    for (std::size_t i = 0; i < before.size(); ++i)
      if (before[i] >= '0' && before[i] <= '9') digits.push_back(i);
    std::size_t at = digits[uniform(rng, 0, static_cast<int>(digits.size()) - 1)];
    char c;
    do c = static_cast<char>('0' + uniform(rng, 0, 9));
    while (c == before[at]);
    s.atom->atom[at] = c;
  } else if (s.kind == 1) {
    static const char* rules[] = {"Distribute", "Factor",    "SumLinearity", "SumSplitLast", "SumSplitFirst",
                                  "IndexShift", "Telescope", "PowAddExp",    "RingNormalize", "LemmaRewrite"};
    std::string r;
    do r = rules[uniform(rng, 0, 9)];
    while (r == before);
    s.atom->atom = r;
  } else {
    std::vector<std::string> names;
    for (const auto& [n, ax] : K::Registry::standard().axioms()) names.push_back(n);
    for (const char* n : {"repunit_core", "geom_merge"}) names.push_back(n);
    std::string r;
    do r = names[uniform(rng, 0, static_cast<int>(names.size()) - 1)];
    while (r == before);
    s.atom->atom = r;
  }
  m.what = "'" + before + "' -> '" + s.atom->atom + "'";
  try {
    m.proof = K::from_sexpr(e);
  } catch (const explainer::Error&) {
    m.proof = nullptr;
  }
  return m;
}

}  // namespace testsupport
