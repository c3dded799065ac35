#include "expl/numeral.hpp"

#include <algorithm>
#include <sstream>

namespace explainer::numeral {

namespace {

void check_base(int base) {
  if (base < kMinBase || base > kMaxBase)
    throw DomainError("base " + std::to_string(base) + " outside [2,36]");
}

void check_natural(const Integer& n, const char* what) {
  if (n < 0) throw DomainError(std::string(what) + " must be a natural number");
}

// Little-endian digits of a natural number.
std::vector<int> le_digits(Integer n, int base) {
  std::vector<int> out;
  if (n == 0) return {0};
  while (n > 0) {
    out.push_back(static_cast<int>(n % base));
    n /= base;
  }
  return out;
}

void trim(std::vector<int>& le) {
  while (le.size() > 1 && le.back() == 0) le.pop_back();
}

// x · m for a single digit m, carrying digit by digit.
std::vector<int> times_digit(const std::vector<int>& x, int m, int base) {
  std::vector<int> out;
  int carry = 0;
  for (int d : x) {
    int p = d * m + carry;
    out.push_back(p % base);
    carry = p / base;
  }
  while (carry > 0) {
    out.push_back(carry % base);
    carry /= base;
  }
  trim(out);
  return out;
}

// acc += row · base^shift, column by column.
void add_shifted(std::vector<int>& acc, const std::vector<int>& row, std::size_t shift, int base) {
  if (acc.size() < row.size() + shift) acc.resize(row.size() + shift, 0);
  int carry = 0;
  std::size_t k = shift;
  for (; k < acc.size(); ++k) {
    std::size_t j = k - shift;
    if (j >= row.size() && carry == 0) break;
    int s = acc[k] + (j < row.size() ? row[j] : 0) + carry;
    acc[k] = s % base;
    carry = s / base;
  }
  if (carry > 0) acc.push_back(carry);
}

Digits from_le(std::vector<int> le, int base) {
  std::reverse(le.begin(), le.end());
  return Digits(base, std::move(le));
}

}  // namespace

char digit_char(int d) {
  if (d < 0 || d >= kMaxBase) throw DomainError("digit out of range");
  return d < 10 ? static_cast<char>('0' + d) : static_cast<char>('a' + d - 10);
}

int digit_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'z') return c - 'a' + 10;
  if (c >= 'A' && c <= 'Z') return c - 'A' + 10;
  throw DomainError(std::string("not a digit: '") + c + "'");
}

Digits::Digits(int base, std::vector<int> digits) : base_(base), digits_(std::move(digits)) {
  check_base(base);
  if (digits_.empty()) throw DomainError("empty digit string");
  for (int d : digits_)
    if (d < 0 || d >= base) throw DomainError("digit " + std::to_string(d) + " invalid in base " + std::to_string(base));
}

Integer Digits::value() const {
  Integer v = 0;
  for (int d : digits_) v = v * base_ + d;
  return v;
}

Digits Digits::canonical() const {
  auto it = std::find_if(digits_.begin(), digits_.end(), [](int d) { return d != 0; });
  if (it == digits_.end()) return Digits(base_, {0});
  return Digits(base_, std::vector<int>(it, digits_.end()));
}

std::string Digits::str() const {
  std::string s;
  for (int d : digits_) s += digit_char(d);
  return s;
}

Digits Digits::parse(std::string_view text, int base) {
  std::vector<int> ds;
  for (char c : text) ds.push_back(digit_value(c));
  return Digits(base, std::move(ds));
}

Digits to_digits(const Integer& n, int base) {
  check_base(base);
  check_natural(n, "numeral value");
  return from_le(le_digits(n, base), base);
}

Integer from_digits(const Digits& d) { return d.value(); }

MultTrace long_multiply_trace(const Integer& x, const Integer& y, int base) {
  check_base(base);
  check_natural(x, "multiplicand");
  check_natural(y, "multiplier");
  std::vector<int> xs = le_digits(x, base);
  std::vector<int> ys = le_digits(y, base);

  std::vector<std::vector<int>> rows;
  std::size_t width = 0;
  for (int m : ys) {
    rows.push_back(times_digit(xs, m, base));
    width = std::max(width, rows.back().size());
  }

  MultTrace t{base, x, y, {}, Digits(base, {0})};
  std::vector<int> acc{0};
  for (std::size_t k = 0; k < rows.size(); ++k) {
    add_shifted(acc, rows[k], k, base);
    std::vector<int> padded = rows[k];
    padded.resize(width, 0);
    t.partial_rows.push_back({k, from_le(std::move(padded), base)});
  }
  trim(acc);
  t.result = from_le(std::move(acc), base);
  return t;
}

Digits DivTrace::quotient_digits() const {
  std::vector<int> ds;
  for (const auto& s : steps) ds.push_back(s.quotient_digit);
  return Digits(base, std::move(ds));
}

DivTrace long_divide_trace(const Integer& n, const Integer& d, int base) {
  check_base(base);
  check_natural(n, "dividend");
  if (d == 0) throw DomainError("division by zero");
  check_natural(d, "divisor");
  DivTrace t{base, n, d, {}, 0, 0};
  Integer rem = 0;
  Integer q = 0;
  Digits ds = to_digits(n, base);
  for (int digit : ds.digits()) {
    Integer pd = rem * base + digit;
    Integer qd = pd / d;
    rem = pd % d;
    t.steps.push_back({pd, qd.convert_to<int>(), rem});
    q = q * base + qd;
  }
  t.quotient = q;
  t.remainder = rem;
  return t;
}

Integer magic_number(int base, int reps) {
  check_base(base);
  if (reps < 1) throw DomainError("repetition count must be at least 1");
  Integer head = 1;
  Integer bi = 1;
  for (int i = 0; i <= base - 2; ++i) {
    head += (base - 2 - i) * bi;
    bi *= base;
  }
  Integer block = boost::multiprecision::pow(Integer(base), static_cast<unsigned>(base - 1));
  Integer rep = 0;
  Integer bj = 1;
  for (int j = 0; j < reps; ++j) {
    rep += bj;
    bj *= block;
  }
  return head * rep;
}

Integer repdigit(int digit, std::size_t count, int base) {
  check_base(base);
  if (digit < 0 || digit >= base) throw DomainError("digit outside base");
  Integer v = 0;
  for (std::size_t k = 0; k < count; ++k) v = v * base + digit;
  return v;
}

TrickTable trick_table(int base, int digit, int reps) {
  check_base(base);
  if (digit < 1 || digit > base - 1)
    throw DomainError("digit must lie in [1, base-1], got " + std::to_string(digit));
  Integer magic = magic_number(base, reps);
  Integer factor = Integer(base - 1) * digit;
  Integer rhs = repdigit(digit, static_cast<std::size_t>(base - 1) * static_cast<std::size_t>(reps), base);
  TrickTable out{lang::eq(lang::mul(lang::lit(magic), lang::lit(factor)), lang::lit(rhs)),
                 long_multiply_trace(magic, factor, base)};
  return out;
}

namespace {

std::string pad_left(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

}  // namespace

std::string render(const MultTrace& t) {
  std::string x = to_digits(t.multiplicand, t.base).str();
  std::string y = to_digits(t.multiplier, t.base).str();
  std::string res = t.result.str();
  std::size_t width = std::max({x.size(), y.size(), res.size()});
  for (const auto& r : t.partial_rows) width = std::max(width, r.row.size() + r.shift);
  std::string rule(width, '-');

  std::ostringstream os;
  os << pad_left(x, width) << '\n' << pad_left(y, width) << '\n' << rule << '\n';
  for (const auto& r : t.partial_rows) os << pad_left(r.row.str(), width - r.shift) << '\n';
  os << rule << '\n' << pad_left(res, width) << '\n';
  return os.str();
}

std::string render(const DivTrace& t) {
  std::string dividend = to_digits(t.dividend, t.base).str();
  std::string divisor = to_digits(t.divisor, t.base).str();
  std::string quotient = t.quotient_digits().str();
  std::size_t n = dividend.size();

  std::vector<std::string> left{dividend};
  for (std::size_t i = 1; i <= n; ++i) {
    std::string r = to_digits(t.steps[i - 1].partial_remainder, t.base).str();
    std::string line = pad_left(r, i);
    if (i < n) line += dividend[i];
    left.push_back(line);
  }
  std::vector<std::string> right{divisor, std::string(std::max(divisor.size(), quotient.size()), '-'),
                                 quotient};
  std::size_t lines = std::max(left.size(), right.size());

  std::ostringstream os;
  for (std::size_t k = 0; k < lines; ++k) {
    std::string l = k < left.size() ? left[k] : "";
    l.resize(n, ' ');
    os << l << '|' << (k < right.size() ? right[k] : "") << '\n';
  }
  return os.str();
}

}  // namespace explainer::numeral
