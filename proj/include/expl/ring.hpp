#pragma once

// Normal forms for commutative-ring identities over integer terms.
//
// Atoms are variables, literal bases raised to symbolic exponents, and
// opaque subterms (sums, powers with non-monomial base). Exponents are
// themselves normalized, so b^(i+1) and b * b^i agree.

#include "expl/lang.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace explainer::ring {

struct Poly;
using PolyPtr = std::shared_ptr<const Poly>;

enum class AtomKind { Var, Base, Sum, Pow };

struct Factor {
  AtomKind kind;
  std::string key;   // identifies the atom
  std::string name;  // Var name; Sum index as renamed inside `parts`
  std::string index; // Sum index as written
  Integer base;      // Base
  // Sum: lo, hi, body (index renamed); Pow: base, exponent.
  std::vector<PolyPtr> parts;
  PolyPtr exp;
};

struct Monomial {
  std::vector<Factor> factors;  // sorted by key, keys distinct
  std::string key;
};

struct Poly {
  struct Entry {
    Monomial mono;
    Rational coeff;
  };
  std::map<std::string, Entry> terms;  // by monomial key; no zero coefficients

  bool is_zero() const { return terms.empty(); }
  std::optional<Rational> constant() const;
  std::string key() const;
};

bool operator==(const Poly& a, const Poly& b);

Poly normal_form(const lang::Term& t);
bool ring_equal(const lang::Term& a, const lang::Term& b);

// A term built back from the normal form; equal inputs give equal outputs.
lang::Term normalize_ring(const lang::Term& t);

// Coefficients a_0..a_n when t is a polynomial in `var` with integer
// coefficients and no other variables.
std::optional<std::vector<Integer>> univariate_coeffs(const lang::Term& t, const std::string& var);

}  // namespace explainer::ring
