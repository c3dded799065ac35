#pragma once

#include "expl/kernel.hpp"

#include <random>
#include <string>
#include <vector>

namespace testsupport {

using explainer::Integer;
using explainer::kernel::Proof;
using explainer::lang::Formula;
using explainer::lang::Term;

std::string source_path(const std::string& rel);
std::string read_text(const std::string& path);

// Uniform-ish natural with 1..max_digits decimal digits.
Integer random_natural(std::mt19937_64& rng, int max_digits);
int uniform(std::mt19937_64& rng, int lo, int hi);

// Random terms over `vars`; exponents are small literals so every closed
// instance evaluates. Sums use fresh index names and small bounds.
Term random_term(std::mt19937_64& rng, int depth, const std::vector<std::string>& vars);
// Random formulas of the given depth, with range and unbounded quantifiers.
Formula random_formula(std::mt19937_64& rng, int depth, const std::vector<std::string>& vars);

// Straight loops, no library code.
Integer ipow(const Integer& b, unsigned e);
// (sum_{i<=b-2} (b-2-i) b^i + 1) * sum_{j<p} b^((b-1)j) * (b-1)
Integer repunit_general_lhs(int b, int p);
// sum_{k<(b-1)p} b^k
Integer repunit_general_rhs(int b, int p);

struct Mutation {
  int kind = 0;  // 0 literal digit, 1 rewrite rule name, 2 axiom name
  std::string what;
  Proof proof;  // null when the mutated text no longer parses
};

// One random single-site change: a digit inside a literal, a rewrite rule
// name, or an axiom name.
Mutation mutate(const Proof& p, std::mt19937_64& rng);

}  // namespace testsupport
