#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>

#include "charvar/errors.hpp"
#include "charvar/rational.hpp"

namespace charvar {

/// Sparse univariate polynomial in the variable q with exact rational
/// coefficients.  The zero polynomial has an empty term map and degree -1.
/// Exponents are capped at kMaxDegree to catch runaway computations.
class QPoly {
 public:
  static constexpr int kZeroDegree = -1;
  static constexpr int kMaxDegree = 10000;

  QPoly() = default;
  explicit QPoly(const Rational& constant) {
    if (constant != 0) terms_[0] = constant;
  }
  explicit QPoly(const BigInt& constant) : QPoly(Rational(constant)) {}
  explicit QPoly(long long constant) : QPoly(Rational(constant)) {}

  /// c * q^exp.
  static QPoly monomial(int exp, const Rational& c = Rational(1)) {
    check_exponent(exp);
    QPoly out;
    if (c != 0) out.terms_[exp] = c;
    return out;
  }

  /// The variable q itself.
  static QPoly variable() { return monomial(1); }

  bool is_zero() const { return terms_.empty(); }

  /// Degree of the polynomial; -1 for the zero polynomial.
  int degree() const {
    return terms_.empty() ? kZeroDegree : terms_.rbegin()->first;
  }

  /// Coefficient of q^exp (zero if the term is absent).
  Rational coeff(int exp) const {
    auto it = terms_.find(exp);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  /// Exponent -> nonzero coefficient, ascending exponent order.
  const std::map<int, Rational>& terms() const { return terms_; }

  QPoly& operator+=(const QPoly& rhs) {
    for (const auto& [e, c] : rhs.terms_) add_term(e, c);
    return *this;
  }
  QPoly& operator-=(const QPoly& rhs) {
    for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
    return *this;
  }
  QPoly& operator*=(const QPoly& rhs) {
    *this = *this * rhs;
    return *this;
  }
  QPoly& operator*=(const Rational& c) {
    if (c == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
  }

  friend QPoly operator+(QPoly lhs, const QPoly& rhs) {
    lhs += rhs;
    return lhs;
  }
  friend QPoly operator-(QPoly lhs, const QPoly& rhs) {
    lhs -= rhs;
    return lhs;
  }
  friend QPoly operator-(QPoly a) {
    for (auto& [e, c] : a.terms_) c = -c;
    return a;
  }
  friend QPoly operator*(const QPoly& lhs, const QPoly& rhs) {
    if (lhs.is_zero() || rhs.is_zero()) return QPoly();
    if (lhs.degree() + rhs.degree() > kMaxDegree) {
      throw GuardExceeded("polynomial product degree " +
                          std::to_string(lhs.degree() + rhs.degree()) +
                          " exceeds limit " + std::to_string(kMaxDegree));
    }
    QPoly out;
    for (const auto& [ea, ca] : lhs.terms_) {
      for (const auto& [eb, cb] : rhs.terms_) {
        out.add_term(ea + eb, ca * cb);
      }
    }
    return out;
  }
  friend QPoly operator*(QPoly lhs, const Rational& c) {
    lhs *= c;
    return lhs;
  }
  friend QPoly operator*(const Rational& c, QPoly rhs) {
    rhs *= c;
    return rhs;
  }

  friend bool operator==(const QPoly& a, const QPoly& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const QPoly& a, const QPoly& b) { return !(a == b); }

 private:
  static void check_exponent(int exp) {
    if (exp < 0) throw GuardExceeded("negative exponent");
    if (exp > kMaxDegree) {
      throw GuardExceeded("exponent " + std::to_string(exp) +
                          " exceeds limit " + std::to_string(kMaxDegree));
    }
  }

  void add_term(int exp, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(exp, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  std::map<int, Rational> terms_;
};

/// Shorthand for the variable q.
inline QPoly qvar() { return QPoly::variable(); }

/// a^n by binary exponentiation; a^0 = 1 including 0^0.
inline QPoly pow(QPoly a, unsigned long long n) {
  QPoly out{Rational(1)};
  while (n != 0) {
    if (n & 1ull) out = out * a;
    if ((n >>= 1ull) != 0) a = a * a;
  }
  return out;
}

inline std::string to_canonical_string(const QPoly& a);

/// Quotient a / b, required to be exact; throws NonExactDivision when the
/// remainder is nonzero (or b is the zero polynomial).
inline QPoly exact_div(const QPoly& a, const QPoly& b) {
  if (b.is_zero()) throw NonExactDivision("division by the zero polynomial");
  QPoly quotient;
  QPoly rem = a;
  const int db = b.degree();
  const Rational lead_b = b.coeff(db);
  while (!rem.is_zero() && rem.degree() >= db) {
    const int shift = rem.degree() - db;
    const Rational factor = rem.coeff(rem.degree()) / lead_b;
    const QPoly piece = QPoly::monomial(shift, factor);
    quotient += piece;
    rem -= piece * b;
  }
  if (!rem.is_zero()) {
    throw NonExactDivision("remainder " + to_canonical_string(rem) +
                           " dividing " + to_canonical_string(a) + " by " +
                           to_canonical_string(b));
  }
  return quotient;
}

/// Evaluate at a rational point.
inline Rational eval_at(const QPoly& a, const Rational& x) {
  Rational out = 0;
  Rational x_pow = 1;
  int cur = 0;
  for (const auto& [e, c] : a.terms()) {
    while (cur < e) {
      x_pow *= x;
      ++cur;
    }
    out += c * x_pow;
  }
  return out;
}

/// Verify every coefficient is an integer; returns its argument unchanged.
inline const QPoly& assert_integral(const QPoly& a) {
  for (const auto& [e, c] : a.terms()) {
    if (denominator(c) != 1) {
      throw NonIntegralPolynomial("coefficient of q^" + std::to_string(e) +
                                  " is " + rational_to_string(c));
    }
  }
  return a;
}

/// Evaluate a polynomial with integer coefficients at an integer point.
inline BigInt eval_at_integer(const QPoly& a, const BigInt& x) {
  assert_integral(a);
  BigInt out = 0;
  BigInt x_pow = 1;
  int cur = 0;
  for (const auto& [e, c] : a.terms()) {
    while (cur < e) {
      x_pow *= x;
      ++cur;
    }
    out += numerator(c) * x_pow;
  }
  return out;
}

/// Render in the canonical text form: terms in descending exponent order,
/// " + " / " - " separators, unit coefficients suppressed, "*" between a
/// coefficient and q, no "^1".  Examples: "q^8 - q^6 - q^5 + q^3",
/// "-2*q^3 + q^2 - 2*q", "1/2*q^2 - 1/2", "0".
inline std::string to_canonical_string(const QPoly& a) {
  if (a.is_zero()) return "0";
  std::string out;
  for (auto it = a.terms().rbegin(); it != a.terms().rend(); ++it) {
    const int e = it->first;
    const Rational& c = it->second;
    const bool negative = c < 0;
    const Rational mag = negative ? Rational(-c) : c;
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    const bool unit = (mag == 1);
    if (!unit || e == 0) out += rational_to_string(mag);
    if (e > 0) {
      if (!unit) out += "*";
      out += "q";
      if (e > 1) {
        out += "^";
        out += std::to_string(e);
      }
    }
  }
  return out;
}

namespace qpoly_detail {

struct Cursor {
  std::string_view s;
  size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
  }
  bool done() const { return pos >= s.size(); }
  char peek() const { return s[pos]; }
  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError("bad polynomial text at offset " + std::to_string(pos) +
                     ": " + why + " in \"" + std::string(s) + "\"");
  }
  BigInt read_uint() {
    if (done() || peek() < '0' || peek() > '9') fail("expected a digit");
    BigInt value = 0;
    while (!done() && peek() >= '0' && peek() <= '9') {
      value = value * 10 + (s[pos] - '0');
      ++pos;
    }
    return value;
  }
};

}  // namespace qpoly_detail

/// Inverse of to_canonical_string; also tolerates extra whitespace, an
/// optional omitted "*", and "^" exponents in any term order.
inline QPoly parse_qpoly(std::string_view text) {
  qpoly_detail::Cursor cur{text};
  cur.skip_ws();
  if (cur.done()) cur.fail("empty input");
  QPoly out;
  bool first = true;
  while (true) {
    int sign = 1;
    if (cur.peek() == '+' || cur.peek() == '-') {
      sign = cur.peek() == '-' ? -1 : 1;
      ++cur.pos;
      cur.skip_ws();
    } else if (!first) {
      cur.fail("expected '+' or '-' between terms");
    }
    if (cur.done()) cur.fail("dangling sign");

    Rational coeff = 1;
    bool have_number = false;
    bool consumed_star = false;
    if (cur.peek() >= '0' && cur.peek() <= '9') {
      const BigInt num = cur.read_uint();
      BigInt den = 1;
      if (!cur.done() && cur.peek() == '/') {
        ++cur.pos;
        den = cur.read_uint();
        if (den == 0) cur.fail("zero denominator");
      }
      coeff = Rational(num, den);
      have_number = true;
      cur.skip_ws();
      if (!cur.done() && cur.peek() == '*') {
        ++cur.pos;
        consumed_star = true;
        cur.skip_ws();
      }
    }

    int exp = 0;
    bool have_var = false;
    if (!cur.done() && cur.peek() == 'q') {
      ++cur.pos;
      have_var = true;
      exp = 1;
      cur.skip_ws();
      if (!cur.done() && cur.peek() == '^') {
        ++cur.pos;
        cur.skip_ws();
        const BigInt e = cur.read_uint();
        if (e > QPoly::kMaxDegree) cur.fail("exponent too large");
        exp = static_cast<int>(e);
      }
    }
    if (consumed_star && !have_var) cur.fail("'*' not followed by q");
    if (!have_number && !have_var) cur.fail("expected a term");

    out += QPoly::monomial(exp, sign * coeff);
    first = false;
    cur.skip_ws();
    if (cur.done()) break;
    if (cur.peek() != '+' && cur.peek() != '-') cur.fail("unexpected character");
  }
  return out;
}

}  // namespace charvar
