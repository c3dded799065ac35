#pragma once

// Positional numerals in bases 2..36 and digit-level long multiplication and
// long division traces.

#include "expl/common.hpp"
#include "expl/lang.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace explainer::numeral {

constexpr int kMinBase = 2;
constexpr int kMaxBase = 36;

// Digit alphabet: 0-9 then a-z.
char digit_char(int d);
int digit_value(char c);

class Digits {
 public:
  Digits(int base, std::vector<int> digits);  // most-significant first

  int base() const { return base_; }
  const std::vector<int>& digits() const { return digits_; }
  std::size_t size() const { return digits_.size(); }

  Integer value() const;
  // Leading zeros stripped; a single 0 for zero.
  Digits canonical() const;
  std::string str() const;

  static Digits parse(std::string_view text, int base);

  friend bool operator==(const Digits&, const Digits&) = default;

 private:
  int base_;
  std::vector<int> digits_;
};

Digits to_digits(const Integer& n, int base);
Integer from_digits(const Digits& d);

struct PartialRow {
  std::size_t shift;
  Digits row;
};

struct MultTrace {
  int base;
  Integer multiplicand;
  Integer multiplier;
  // One row per multiplier digit, least-significant first. Rows are padded
  // with leading zeros to a common width, so a zero digit yields a row of
  // zeros.
  std::vector<PartialRow> partial_rows;
  Digits result;
};

MultTrace long_multiply_trace(const Integer& x, const Integer& y, int base);

struct DivStep {
  Integer partial_dividend;
  int quotient_digit;
  Integer partial_remainder;
};

struct DivTrace {
  int base;
  Integer dividend;
  Integer divisor;
  std::vector<DivStep> steps;  // one per dividend digit
  Integer quotient;
  Integer remainder;

  // Quotient as emitted digit by digit, leading zeros included.
  Digits quotient_digits() const;
};

DivTrace long_divide_trace(const Integer& n, const Integer& d, int base);

// (Σ_{i=0}^{b-2} (b-2-i) b^i + 1) · Σ_{j=0}^{p-1} b^{(b-1)j}
Integer magic_number(int base, int reps);

// `count` copies of digit d in base b.
Integer repdigit(int digit, std::size_t count, int base);

struct TrickTable {
  lang::Formula statement;
  MultTrace trace;
};

// magic_number(b, p) × ((b-1)·d) = repdigit(d, (b-1)·p)
TrickTable trick_table(int base, int digit, int reps);

// Fixed-width text grids; see README for the layout.
std::string render(const MultTrace& t);
std::string render(const DivTrace& t);

}  // namespace explainer::numeral
