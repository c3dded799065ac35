#pragma once

// Univariate polynomial equations p(x) = 0 over the naturals: a root bound,
// a root finder, and two provers of non-solvability.

#include "expl/kernel.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace explainer::dioph {

using kernel::Proof;
using lang::Formula;
using lang::Term;

struct IntPoly {
  std::vector<Integer> coeffs;  // a_0 .. a_n, a_n != 0
  std::string var = "x";

  IntPoly() = default;
  // Trailing zeros are dropped; throws DomainError if the degree is below 1.
  explicit IntPoly(std::vector<Integer> c, std::string v = "x");

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  const Integer& lead() const { return coeffs.back(); }
  Integer eval(const Integer& x) const;
  // Descending-degree term, e.g. x^2 - 1800.
  Term term() const;
  std::string str() const;

  // Accepts any single-variable term of the lang grammar, e.g. "x^2 - 1800".
  static IntPoly parse(std::string_view text);
};

class RootFound : public Error {
 public:
  explicit RootFound(Integer x) : Error("root found: " + x.str()), root_(std::move(x)) {}
  const Integer& root() const { return root_; }

 private:
  Integer root_;
};

class UnsupportedShape : public Error {
 public:
  using Error::Error;
};

// n * max(|a_0|, ..., |a_{n-1}|).
Integer bound(const IntPoly& p);
// Natural roots in increasing order.
std::vector<Integer> solve(const IntPoly& p);

// forall x . p(x) != 0
Formula statement(const IntPoly& p);

// Case split at the bound: enumeration below it, a dominance argument above.
// Throws RootFound for the least natural root.
Proof prove_no_solution_enum(const IntPoly& p);

// Threshold for p = a x^k - c (a, c >= 1): largest t with a t^k <= c.
// Throws UnsupportedShape outside that class.
Integer threshold(const IntPoly& p);
// Case split at the threshold with no enumeration. Throws RootFound when
// a t^k = c.
Proof prove_no_solution_interval(const IntPoly& p);

}  // namespace explainer::dioph
