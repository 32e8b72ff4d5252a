#pragma once

#include <string>
#include <string_view>

#include "charvar/errors.hpp"
#include "charvar/qpoly.hpp"

namespace charvar {

/// Element of the representation ring of the symmetric group on three
/// letters, with QPoly coefficients: t*T + s*S + v*V where T is the trivial
/// representation, S the sign representation and V the standard
/// two-dimensional one.  Multiplication follows the character table:
///   V (x) V = T + S + V,   S (x) S = T,   S (x) V = V.
struct Sigma3Class {
  QPoly t, s, v;

  friend bool operator==(const Sigma3Class& a, const Sigma3Class& b) {
    return a.t == b.t && a.s == b.s && a.v == b.v;
  }
  friend bool operator!=(const Sigma3Class& a, const Sigma3Class& b) {
    return !(a == b);
  }
  friend Sigma3Class operator+(const Sigma3Class& a, const Sigma3Class& b) {
    return {a.t + b.t, a.s + b.s, a.v + b.v};
  }
  friend Sigma3Class operator-(const Sigma3Class& a, const Sigma3Class& b) {
    return {a.t - b.t, a.s - b.s, a.v - b.v};
  }
};

/// Element of the representation ring of the order-two group, with QPoly
/// coefficients: t*T + n*N where T is trivial and N is the sign
/// representation (N (x) N = T).
struct Z2Class {
  QPoly t, n;

  friend bool operator==(const Z2Class& a, const Z2Class& b) {
    return a.t == b.t && a.n == b.n;
  }
  friend bool operator!=(const Z2Class& a, const Z2Class& b) {
    return !(a == b);
  }
  friend Z2Class operator+(const Z2Class& a, const Z2Class& b) {
    return {a.t + b.t, a.n + b.n};
  }
  friend Z2Class operator-(const Z2Class& a, const Z2Class& b) {
    return {a.t - b.t, a.n - b.n};
  }
};

inline Sigma3Class sigma3_one() { return {QPoly(1LL), QPoly(), QPoly()}; }
inline Z2Class z2_one() { return {QPoly(1LL), QPoly()}; }

inline Sigma3Class sigma3_mul(const Sigma3Class& a, const Sigma3Class& b) {
  return {
      a.t * b.t + a.s * b.s + a.v * b.v,
      a.t * b.s + a.s * b.t + a.v * b.v,
      a.t * b.v + a.v * b.t + a.s * b.v + a.v * b.s + a.v * b.v,
  };
}

inline Z2Class z2_mul(const Z2Class& a, const Z2Class& b) {
  return {a.t * b.t + a.n * b.n, a.t * b.n + a.n * b.t};
}

inline Sigma3Class sigma3_pow(Sigma3Class a, unsigned long long r) {
  Sigma3Class out = sigma3_one();
  while (r != 0) {
    if (r & 1ull) out = sigma3_mul(out, a);
    if ((r >>= 1ull) != 0) a = sigma3_mul(a, a);
  }
  return out;
}

inline Z2Class z2_pow(Z2Class a, unsigned long long r) {
  Z2Class out = z2_one();
  while (r != 0) {
    if (r & 1ull) out = z2_mul(out, a);
    if ((r >>= 1ull) != 0) a = z2_mul(a, a);
  }
  return out;
}

/// Coefficient of the trivial representation: the invariant part.
inline const QPoly& invariant_part(const Sigma3Class& a) { return a.t; }
inline const QPoly& z2_invariant_part(const Z2Class& a) { return a.t; }

/// Virtual dimension: evaluate T -> 1, S -> 1, V -> 2.
inline QPoly dim(const Sigma3Class& a) { return a.t + a.s + a.v + a.v; }
/// Virtual dimension: evaluate T -> 1, N -> 1.
inline QPoly dim(const Z2Class& a) { return a.t + a.n; }

/// Restrict along the inclusion of the order-two subgroup: T -> T, S -> N,
/// V -> T + N.
inline Z2Class restrict_to_z2(const Sigma3Class& a) {
  return {a.t + a.v, a.s + a.v};
}

/// V^b expanded in the basis {T, S, V}: equals a(b)*V + a(b-1)*(T + S)
/// where a(b) = (2^b - (-1)^b) / 3, so a(b) = a(b-1) + 2*a(b-2).
inline Sigma3Class v_power(unsigned long long b) {
  if (b == 0) return sigma3_one();
  auto seq = [](unsigned long long m) -> BigInt {
    const BigInt two_m = int_pow(2, m);
    const BigInt sign = (m % 2 == 0) ? 1 : -1;
    return (two_m - sign) / 3;
  };
  const QPoly lower{seq(b - 1)};
  return {lower, lower, QPoly{seq(b)}};
}

/// Class of the r-th cartesian power of the diagonal maximal torus of the
/// rank-three special linear group, carrying the action of its Weyl group:
/// the r = 1 class is q^2*T + S - q*V, and the general class is its r-th
/// power, with closed-form coefficients
///   t = (q^2-1)^r/2 + (q-1)^{2r}/6 + (q^2+q+1)^r/3
///   s = -(q^2-1)^r/2 + (q-1)^{2r}/6 + (q^2+q+1)^r/3
///   v = ((q-1)^{2r} - (q^2+q+1)^r)/3.
inline Sigma3Class equivariant_torus_power(unsigned long long r) {
  if (r < 1) throw GuardExceeded("torus power needs r >= 1");
  if (r > 64) throw GuardExceeded("torus power capped at r = 64");
  const QPoly q = qvar();
  const QPoly one{1LL};
  const QPoly a = pow(q * q - one, r);        // (q^2-1)^r
  const QPoly b = pow(q - one, 2 * r);        // (q-1)^{2r}
  const QPoly c = pow(q * q + q + one, r);    // (q^2+q+1)^r
  const Rational half(1, 2), third(1, 3), sixth(1, 6);
  Sigma3Class out{
      half * a + sixth * b + third * c,
      Rational(-1, 2) * a + sixth * b + third * c,
      third * b - third * c,
  };
  assert_integral(out.t);
  assert_integral(out.s);
  assert_integral(out.v);
  return out;
}

/// Recover an equivariant class from three ordinary counts: the total space,
/// the quotient by the index-three subgroup, and the full quotient.  With
/// class a*T + b*S + c*V these are a+b+2c, a+c and a, so
///   a = e_mod_sigma3,  c = e_mod_h - a,  b = e_total - a - 2c.
inline Sigma3Class sigma3_from_quotients(const QPoly& e_total,
                                         const QPoly& e_mod_h,
                                         const QPoly& e_mod_sigma3) {
  const QPoly a = e_mod_sigma3;
  const QPoly c = e_mod_h - a;
  const QPoly b = e_total - a - c - c;
  return {a, b, c};
}

/// "(t)T + (s)S + (v)V" with each coefficient in canonical polynomial form.
inline std::string to_string(const Sigma3Class& a) {
  return "(" + to_canonical_string(a.t) + ")T + (" + to_canonical_string(a.s) +
         ")S + (" + to_canonical_string(a.v) + ")V";
}

/// "(t)T + (n)N" with each coefficient in canonical polynomial form.
inline std::string to_string(const Z2Class& a) {
  return "(" + to_canonical_string(a.t) + ")T + (" + to_canonical_string(a.n) +
         ")N";
}

namespace repring_detail {

inline QPoly take_component(std::string_view text, size_t& pos, char tag,
                            bool last) {
  auto fail = [&](const std::string& why) -> void {
    throw ParseError("bad class text at offset " + std::to_string(pos) + ": " +
                     why + " in \"" + std::string(text) + "\"");
  };
  while (pos < text.size() && text[pos] == ' ') ++pos;
  if (pos >= text.size() || text[pos] != '(') fail("expected '('");
  const size_t close = text.find(')', pos);
  if (close == std::string_view::npos) fail("missing ')'");
  const QPoly coeff = parse_qpoly(text.substr(pos + 1, close - pos - 1));
  pos = close + 1;
  if (pos >= text.size() || text[pos] != tag)
    fail(std::string("expected component tag '") + tag + "'");
  ++pos;
  while (pos < text.size() && text[pos] == ' ') ++pos;
  if (!last) {
    if (pos >= text.size() || text[pos] != '+') fail("expected '+'");
    ++pos;
  } else if (pos != text.size()) {
    fail("trailing characters");
  }
  return coeff;
}

}  // namespace repring_detail

inline Sigma3Class parse_sigma3(std::string_view text) {
  size_t pos = 0;
  Sigma3Class out;
  out.t = repring_detail::take_component(text, pos, 'T', false);
  out.s = repring_detail::take_component(text, pos, 'S', false);
  out.v = repring_detail::take_component(text, pos, 'V', true);
  return out;
}

inline Z2Class parse_z2(std::string_view text) {
  size_t pos = 0;
  Z2Class out;
  out.t = repring_detail::take_component(text, pos, 'T', false);
  out.n = repring_detail::take_component(text, pos, 'N', true);
  return out;
}

}  // namespace charvar
