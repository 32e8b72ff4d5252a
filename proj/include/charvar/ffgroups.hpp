#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "charvar/errors.hpp"

namespace charvar {

/// Finite-field element, encoded as an index in [0, q): the base-p digits of
/// the index are the coefficients of the residue polynomial, constant term
/// first.
using Fq = uint32_t;

namespace ff_detail {

inline bool is_prime_u32(uint32_t n) {
  if (n < 2) return false;
  for (uint32_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

/// Dense polynomial over F_p, coefficients ascending; used only while
/// constructing a field (trim keeps the invariant: no trailing zeros).
using PPoly = std::vector<uint32_t>;

inline void ppoly_trim(PPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline PPoly ppoly_mul(const PPoly& a, const PPoly& b, uint32_t p) {
  if (a.empty() || b.empty()) return {};
  PPoly out(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) {
      out[i + j] = (out[i + j] + static_cast<uint64_t>(a[i]) * b[j]) % p;
    }
  }
  ppoly_trim(out);
  return out;
}

inline PPoly ppoly_mod(PPoly a, const PPoly& m, uint32_t p) {
  // m is monic.
  while (a.size() >= m.size()) {
    const uint32_t lead = a.back();
    const size_t shift = a.size() - m.size();
    if (lead != 0) {
      for (size_t i = 0; i < m.size(); ++i) {
        uint64_t sub = static_cast<uint64_t>(lead) * m[i] % p;
        a[shift + i] = static_cast<uint32_t>((a[shift + i] + p - sub) % p);
      }
    }
    a.pop_back();
    ppoly_trim(a);
    if (a.size() < m.size()) break;
  }
  ppoly_trim(a);
  return a;
}

inline PPoly ppoly_powmod(PPoly base, uint64_t e, const PPoly& m, uint32_t p) {
  PPoly out{1};
  base = ppoly_mod(std::move(base), m, p);
  while (e != 0) {
    if (e & 1ull) out = ppoly_mod(ppoly_mul(out, base, p), m, p);
    base = ppoly_mod(ppoly_mul(base, base, p), m, p);
    e >>= 1ull;
  }
  return out;
}

inline PPoly ppoly_gcd(PPoly a, PPoly b, uint32_t p) {
  ppoly_trim(a);
  ppoly_trim(b);
  while (!b.empty()) {
    // Make b monic before reducing: scale by the inverse of its lead.
    uint32_t lead = b.back();
    if (lead != 1) {
      // Fermat inverse in F_p.
      uint32_t inv = 1, base = lead, e = p - 2;
      while (e != 0) {
        if (e & 1u) inv = static_cast<uint32_t>(
            static_cast<uint64_t>(inv) * base % p);
        base = static_cast<uint32_t>(static_cast<uint64_t>(base) * base % p);
        e >>= 1u;
      }
      for (auto& c : b) c = static_cast<uint32_t>(
          static_cast<uint64_t>(c) * inv % p);
    }
    PPoly r = ppoly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

/// Rabin irreducibility test for a monic polynomial of degree k over F_p.
inline bool ppoly_irreducible(const PPoly& f, uint32_t p) {
  const size_t k = f.size() - 1;
  if (k == 0) return false;
  const PPoly x{0, 1};
  // x^(p^k) must equal x modulo f.
  uint64_t pk = 1;
  for (size_t i = 0; i < k; ++i) pk *= p;
  PPoly xq = ppoly_powmod(x, pk, f, p);
  PPoly diff = xq;
  diff.resize(std::max<size_t>(diff.size(), 2), 0);
  diff[1] = (diff[1] + p - 1) % p;
  ppoly_trim(diff);
  if (!diff.empty()) return false;
  // For each prime divisor d of k, gcd(x^(p^(k/d)) - x, f) must be trivial.
  size_t rem = k;
  for (size_t d = 2; d <= rem; ++d) {
    if (rem % d != 0) continue;
    while (rem % d == 0) rem /= d;
    uint64_t pm = 1;
    for (size_t i = 0; i < k / d; ++i) pm *= p;
    PPoly xm = ppoly_powmod(x, pm, f, p);
    PPoly g = xm;
    g.resize(std::max<size_t>(g.size(), 2), 0);
    g[1] = (g[1] + p - 1) % p;
    ppoly_trim(g);
    PPoly gc = ppoly_gcd(f, g, p);
    if (gc.size() > 1) return false;
  }
  return true;
}

}  // namespace ff_detail

/// A concrete finite field GF(p^k) with a deterministically chosen modulus
/// and full arithmetic tables.  Immutable once constructed; all element
/// operations are table lookups.
class FieldSpec {
 public:
  static constexpr uint32_t kMaxOrder = 1u << 20;

  static FieldSpec make(uint32_t p, uint32_t k) { return FieldSpec(p, k); }

  uint32_t p() const { return p_; }
  uint32_t k() const { return k_; }
  uint32_t q() const { return q_; }

  /// Modulus coefficients, ascending; k+1 entries, monic.  For k = 1 the
  /// modulus is x itself and elements are plain residues mod p.
  const std::vector<uint32_t>& modulus() const { return modulus_; }

  Fq zero() const { return 0; }
  Fq one() const { return 1; }

  /// Image of an ordinary integer in the prime subfield.
  Fq scalar(uint64_t c) const { return static_cast<Fq>(c % p_); }

  Fq add(Fq a, Fq b) const {
    if (xor_add_) return a ^ b;
    if (!add_table_.empty())
      return add_table_[static_cast<size_t>(a) * q_ + b];
    return add_digits(a, b);
  }
  Fq neg(Fq a) const { return neg_[a]; }
  Fq sub(Fq a, Fq b) const { return add(a, neg_[b]); }

  Fq mul(Fq a, Fq b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[static_cast<size_t>(log_[a]) + log_[b]];
  }

  /// Multiplicative inverse; a must be nonzero.
  Fq inv(Fq a) const {
    if (a == 0) throw Error("inverse of zero");
    return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
  }

  Fq div(Fq a, Fq b) const { return mul(a, inv(b)); }

  Fq pow(Fq a, uint64_t e) const {
    if (a == 0) return e == 0 ? 1 : 0;
    const uint64_t le = static_cast<uint64_t>(log_[a]) * (e % (q_ - 1));
    return exp_[le % (q_ - 1)];
  }

  Fq frobenius(Fq a) const { return pow(a, p_); }

  /// Elements fixed by the d-th Frobenius power: the subfield GF(p^d) as a
  /// sorted list.  d must divide k.
  const std::vector<Fq>& subfield_elements(uint32_t d) const {
    auto it = subfields_.find(d);
    if (it == subfields_.end())
      throw NotASubfield("degree " + std::to_string(d) +
                         " does not divide " + std::to_string(k_));
    return it->second;
  }

  /// Residue coefficients of an element, ascending, length k.
  std::vector<uint32_t> coeffs(Fq a) const {
    std::vector<uint32_t> out(k_);
    for (uint32_t i = 0; i < k_; ++i) {
      out[i] = a % p_;
      a /= p_;
    }
    return out;
  }

  /// Canonical element text: plain residue for k = 1, else a polynomial in
  /// x with descending powers, e.g. "x^2 + 2*x + 1".
  std::string elem_to_string(Fq a) const {
    if (k_ == 1) return std::to_string(a);
    if (a == 0) return "0";
    const std::vector<uint32_t> c = coeffs(a);
    std::string out;
    for (int i = static_cast<int>(k_) - 1; i >= 0; --i) {
      if (c[i] == 0) continue;
      if (!out.empty()) out += " + ";
      if (c[i] != 1 || i == 0) out += std::to_string(c[i]);
      if (i > 0) {
        if (c[i] != 1) out += "*";
        out += "x";
        if (i > 1) out += "^" + std::to_string(i);
      }
    }
    return out;
  }

  friend bool operator==(const FieldSpec& a, const FieldSpec& b) {
    return a.p_ == b.p_ && a.k_ == b.k_ && a.modulus_ == b.modulus_;
  }
  friend bool operator!=(const FieldSpec& a, const FieldSpec& b) {
    return !(a == b);
  }

 private:
  FieldSpec(uint32_t p, uint32_t k) : p_(p), k_(k) {
    if (!ff_detail::is_prime_u32(p)) {
      throw NotPrime(std::to_string(p) + " is not prime");
    }
    if (k < 1 || k > 12) {
      throw GuardExceeded("extension degree must be in [1, 12]");
    }
    uint64_t q = 1;
    for (uint32_t i = 0; i < k; ++i) {
      q *= p;
      if (q > kMaxOrder) throw GuardExceeded("field order exceeds 2^20");
    }
    q_ = static_cast<uint32_t>(q);

    choose_modulus();
    build_mul_tables();
    build_add_tables();
    build_subfields();
  }

  /// Lexicographically smallest monic irreducible of degree k, coefficients
  /// compared from the constant term up.
  void choose_modulus() {
    if (k_ == 1) {
      modulus_ = {0, 1};  // x itself: plain residues mod p
      return;
    }
    // Iterate candidate coefficient tuples (c0, c1, ..., c_{k-1}) in true
    // lexicographic order with the constant term most significant.
    for (uint64_t idx = 0; idx < q_; ++idx) {
      std::vector<uint32_t> cand(k_ + 1, 0);
      cand[k_] = 1;
      uint64_t rest = idx;
      for (int pos = static_cast<int>(k_) - 1; pos >= 0; --pos) {
        cand[pos] = static_cast<uint32_t>(rest % p_);
        rest /= p_;
      }
      // cand[0] holds the most significant digit of idx, so ascending idx
      // walks tuples (c0, c1, ...) in ascending lexicographic order.
      ff_detail::PPoly f(cand.begin(), cand.end());
      if (ff_detail::ppoly_irreducible(f, p_)) {
        modulus_ = cand;
        return;
      }
    }
    throw Error("no irreducible modulus found");  // unreachable
  }

  Fq pack(const ff_detail::PPoly& a) const {
    Fq out = 0;
    for (size_t i = a.size(); i-- > 0;) out = out * p_ + a[i];
    return out;
  }

  ff_detail::PPoly unpack(Fq a) const {
    ff_detail::PPoly out;
    while (a != 0) {
      out.push_back(a % p_);
      a /= p_;
    }
    return out;
  }

  Fq mul_slow(Fq a, Fq b) const {
    ff_detail::PPoly prod = ff_detail::ppoly_mul(unpack(a), unpack(b), p_);
    ff_detail::PPoly modv(modulus_.begin(), modulus_.end());
    return pack(ff_detail::ppoly_mod(std::move(prod), modv, p_));
  }

  Fq pow_slow(Fq a, uint64_t e) const {
    Fq out = 1;
    while (e != 0) {
      if (e & 1ull) out = mul_slow(out, a);
      a = mul_slow(a, a);
      e >>= 1ull;
    }
    return out;
  }

  void build_mul_tables() {
    // Factor the group order.
    std::vector<uint32_t> prime_divisors;
    uint32_t m = q_ - 1;
    for (uint32_t d = 2; static_cast<uint64_t>(d) * d <= m; ++d) {
      if (m % d == 0) {
        prime_divisors.push_back(d);
        while (m % d == 0) m /= d;
      }
    }
    if (m > 1) prime_divisors.push_back(m);

    // Find a multiplicative generator.
    Fq gen = 0;
    for (Fq cand = 2; cand < q_; ++cand) {
      bool ok = true;
      for (uint32_t d : prime_divisors) {
        if (pow_slow(cand, (q_ - 1) / d) == 1) {
          ok = false;
          break;
        }
      }
      if (ok) {
        gen = cand;
        break;
      }
    }
    if (gen == 0 && q_ > 2) throw Error("no field generator found");
    if (q_ == 2) gen = 1;

    exp_.assign(2 * (q_ - 1), 1);
    log_.assign(q_, 0);
    Fq cur = 1;
    for (uint32_t i = 0; i < q_ - 1; ++i) {
      exp_[i] = cur;
      exp_[i + (q_ - 1)] = cur;
      log_[cur] = i;
      cur = mul_slow(cur, gen);
    }
  }

  void build_add_tables() {
    xor_add_ = (p_ == 2);
    neg_.resize(q_);
    for (Fq a = 0; a < q_; ++a) {
      Fq out = 0, mult = 1, x = a;
      for (uint32_t i = 0; i < k_; ++i) {
        const uint32_t d = x % p_;
        out += ((p_ - d) % p_) * mult;
        mult *= p_;
        x /= p_;
      }
      neg_[a] = out;
    }
    if (xor_add_) return;
    if (q_ <= 1024) {
      add_table_.resize(static_cast<size_t>(q_) * q_);
      for (Fq a = 0; a < q_; ++a) {
        for (Fq b = 0; b < q_; ++b) {
          add_table_[static_cast<size_t>(a) * q_ + b] = add_digits(a, b);
        }
      }
    }
  }

  Fq add_digits(Fq a, Fq b) const {
    Fq out = 0, mult = 1;
    for (uint32_t i = 0; i < k_; ++i) {
      uint32_t s = a % p_ + b % p_;
      if (s >= p_) s -= p_;
      out += s * mult;
      mult *= p_;
      a /= p_;
      b /= p_;
    }
    return out;
  }

  void build_subfields() {
    for (uint32_t d = 1; d <= k_; ++d) {
      if (k_ % d != 0) continue;
      std::vector<Fq> elems;
      uint64_t pd = 1;
      for (uint32_t i = 0; i < d; ++i) pd *= p_;
      for (Fq a = 0; a < q_; ++a) {
        if (a == 0 || pow(a, pd) == a) elems.push_back(a);
      }
      subfields_[d] = std::move(elems);
    }
  }

  uint32_t p_ = 2, k_ = 1, q_ = 2;
  std::vector<uint32_t> modulus_;
  std::vector<Fq> exp_, log_, neg_;
  std::vector<Fq> add_table_;
  bool xor_add_ = false;
  std::map<uint32_t, std::vector<Fq>> subfields_;
};

inline FieldSpec field_make(uint32_t p, uint32_t k) {
  return FieldSpec::make(p, k);
}

/// Ring embedding of `sub` into `sup`: the subfield generator goes to the
/// smallest root (in element order) of the sub-modulus inside `sup`.
/// Returns the full image table, indexed by sub-field elements.
inline std::vector<Fq> embed_table(const FieldSpec& sub,
                                   const FieldSpec& sup) {
  if (sub.p() != sup.p() || sup.k() % sub.k() != 0) {
    throw NotASubfield("GF(" + std::to_string(sub.p()) + "^" +
                       std::to_string(sub.k()) + ") does not embed into GF(" +
                       std::to_string(sup.p()) + "^" +
                       std::to_string(sup.k()) + ")");
  }
  // Root of the sub-modulus among the correspondingly sized subfield of sup.
  Fq root = 0;
  bool found = false;
  for (Fq cand : sup.subfield_elements(sub.k())) {
    Fq val = 0;
    for (size_t i = sub.modulus().size(); i-- > 0;) {
      val = sup.add(sup.mul(val, cand), sup.scalar(sub.modulus()[i]));
    }
    if (val == 0) {
      root = cand;
      found = true;
      break;  // elements scanned in ascending order: smallest root wins
    }
  }
  if (!found) throw NotASubfield("modulus has no root in the larger field");

  std::vector<Fq> table(sub.q());
  for (Fq e = 0; e < sub.q(); ++e) {
    const std::vector<uint32_t> c = sub.coeffs(e);
    Fq val = 0;
    for (size_t i = c.size(); i-- > 0;) {
      val = sup.add(sup.mul(val, root), sup.scalar(c[i]));
    }
    table[e] = val;
  }
  return table;
}

/// Image of a single element under the canonical embedding.
inline Fq embed(Fq e, const FieldSpec& sub, const FieldSpec& sup) {
  return embed_table(sub, sup)[e];
}

/// Square matrix over a finite field; n is 2 or 3, entries row-major.
struct FqMatrix {
  int n = 2;
  const FieldSpec* field = nullptr;
  std::array<Fq, 9> a{};

  Fq at(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }
  Fq& at(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }

  friend bool operator==(const FqMatrix& x, const FqMatrix& y) {
    if (x.n != y.n) return false;
    const size_t m = static_cast<size_t>(x.n) * x.n;
    for (size_t i = 0; i < m; ++i) {
      if (x.a[i] != y.a[i]) return false;
    }
    return true;
  }
  friend bool operator!=(const FqMatrix& x, const FqMatrix& y) {
    return !(x == y);
  }
};

inline FqMatrix mat_identity(int n, const FieldSpec& f) {
  FqMatrix m;
  m.n = n;
  m.field = &f;
  for (int i = 0; i < n; ++i) m.at(i, i) = f.one();
  return m;
}

inline FqMatrix mat_mul(const FqMatrix& x, const FqMatrix& y) {
  const FieldSpec& f = *x.field;
  FqMatrix out;
  out.n = x.n;
  out.field = x.field;
  for (int i = 0; i < x.n; ++i) {
    for (int j = 0; j < x.n; ++j) {
      Fq s = 0;
      for (int t = 0; t < x.n; ++t) s = f.add(s, f.mul(x.at(i, t), y.at(t, j)));
      out.at(i, j) = s;
    }
  }
  return out;
}

inline Fq mat_det(const FqMatrix& m) {
  const FieldSpec& f = *m.field;
  if (m.n == 2) {
    return f.sub(f.mul(m.at(0, 0), m.at(1, 1)), f.mul(m.at(0, 1), m.at(1, 0)));
  }
  auto minor2 = [&](int r0, int r1, int c0, int c1) {
    return f.sub(f.mul(m.at(r0, c0), m.at(r1, c1)),
                 f.mul(m.at(r0, c1), m.at(r1, c0)));
  };
  Fq out = f.mul(m.at(0, 0), minor2(1, 2, 1, 2));
  out = f.sub(out, f.mul(m.at(0, 1), minor2(1, 2, 0, 2)));
  out = f.add(out, f.mul(m.at(0, 2), minor2(1, 2, 0, 1)));
  return out;
}

inline Fq mat_trace(const FqMatrix& m) {
  const FieldSpec& f = *m.field;
  Fq s = 0;
  for (int i = 0; i < m.n; ++i) s = f.add(s, m.at(i, i));
  return s;
}

inline bool is_scalar(const FqMatrix& m) {
  for (int i = 0; i < m.n; ++i) {
    for (int j = 0; j < m.n; ++j) {
      if (i != j && m.at(i, j) != 0) return false;
    }
  }
  for (int i = 1; i < m.n; ++i) {
    if (m.at(i, i) != m.at(0, 0)) return false;
  }
  return true;
}

/// Adjugate (transposed cofactor matrix): A * adj(A) = det(A) * I.
inline FqMatrix mat_adjugate(const FqMatrix& m) {
  const FieldSpec& f = *m.field;
  FqMatrix out;
  out.n = m.n;
  out.field = m.field;
  if (m.n == 2) {
    out.at(0, 0) = m.at(1, 1);
    out.at(0, 1) = f.neg(m.at(0, 1));
    out.at(1, 0) = f.neg(m.at(1, 0));
    out.at(1, 1) = m.at(0, 0);
    return out;
  }
  auto minor2 = [&](int r0, int r1, int c0, int c1) {
    return f.sub(f.mul(m.at(r0, c0), m.at(r1, c1)),
                 f.mul(m.at(r0, c1), m.at(r1, c0)));
  };
  // adj = transpose of the cofactor matrix.
  auto cof = [&](int i, int j) {
    const int r0 = (i == 0) ? 1 : 0;
    const int r1 = (i == 2) ? 1 : 2;
    const int c0 = (j == 0) ? 1 : 0;
    const int c1 = (j == 2) ? 1 : 2;
    Fq v = minor2(r0, r1, c0, c1);
    if ((i + j) % 2 == 1) v = f.neg(v);
    return v;
  };
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) out.at(j, i) = cof(i, j);
  }
  return out;
}

/// Inverse for invertible matrices: adjugate divided by the determinant.
inline FqMatrix mat_inverse(const FqMatrix& m) {
  const FieldSpec& f = *m.field;
  const Fq d = mat_det(m);
  FqMatrix out = mat_adjugate(m);
  const Fq di = f.inv(d);
  const size_t cnt = static_cast<size_t>(m.n) * m.n;
  for (size_t i = 0; i < cnt; ++i) out.a[i] = f.mul(out.a[i], di);
  return out;
}

/// Inverse transpose, used to carry invariant planes to invariant lines of
/// the dual tuple.
inline FqMatrix mat_inverse_transpose(const FqMatrix& m) {
  const FqMatrix inv = mat_inverse(m);
  FqMatrix out;
  out.n = m.n;
  out.field = m.field;
  for (int i = 0; i < m.n; ++i) {
    for (int j = 0; j < m.n; ++j) out.at(i, j) = inv.at(j, i);
  }
  return out;
}

inline std::string to_string(const FqMatrix& m) {
  std::string out = "[";
  for (int i = 0; i < m.n; ++i) {
    out += (i == 0) ? "[" : ", [";
    for (int j = 0; j < m.n; ++j) {
      if (j > 0) out += ", ";
      out += m.field->elem_to_string(m.at(i, j));
    }
    out += "]";
  }
  out += "]";
  return out;
}

/// Characteristic polynomial det(xI - A), coefficients ascending, monic;
/// length n+1.  The companion matrix of a monic polynomial returns that
/// polynomial.
inline std::vector<Fq> char_poly(const FqMatrix& m) {
  const FieldSpec& f = *m.field;
  if (m.n == 2) {
    return {mat_det(m), f.neg(mat_trace(m)), f.one()};
  }
  if (m.n == 3) {
    auto minor2 = [&](int r0, int r1, int c0, int c1) {
      return f.sub(f.mul(m.at(r0, c0), m.at(r1, c1)),
                   f.mul(m.at(r0, c1), m.at(r1, c0)));
    };
    const Fq sum_minors = f.add(
        f.add(minor2(1, 2, 1, 2), minor2(0, 2, 0, 2)), minor2(0, 1, 0, 1));
    return {f.neg(mat_det(m)), sum_minors, f.neg(mat_trace(m)), f.one()};
  }
  throw GuardExceeded("characteristic polynomial needs n in {2, 3}");
}

enum class EigenlineKind { Finite, PlaneFamily, AllLines };

/// Projective point or plane coordinates; entries beyond the ambient
/// dimension stay zero.
using ProjVec = std::array<Fq, 3>;

/// The set of eigenlines of one matrix over an extension field: finitely
/// many canonical projective points, possibly a full plane of eigenlines
/// (a two-dimensional eigenspace, stored as a reduced basis), or every
/// line when the matrix is scalar.
struct EigenlineSet {
  int n = 2;
  bool all_lines = false;
  std::vector<ProjVec> points;                     // canonicalized, sorted
  std::vector<std::array<ProjVec, 2>> planes;      // reduced-echelon bases

  EigenlineKind kind() const {
    if (all_lines) return EigenlineKind::AllLines;
    if (!planes.empty()) return EigenlineKind::PlaneFamily;
    return EigenlineKind::Finite;
  }
};

namespace ff_detail {

/// Scale so the first nonzero coordinate is 1.
inline ProjVec canonical_point(ProjVec v, const FieldSpec& f, int n) {
  for (int i = 0; i < n; ++i) {
    if (v[i] != 0) {
      const Fq s = f.inv(v[i]);
      for (int j = 0; j < n; ++j) v[j] = f.mul(v[j], s);
      return v;
    }
  }
  throw Error("zero vector cannot be a projective point");
}

/// Reduced row-echelon form of a small matrix (rows x n, stored into rows);
/// returns the rank.
template <size_t R>
inline int rref(std::array<ProjVec, R>& rows, int nrows, int n,
                const FieldSpec& f) {
  int rank = 0;
  for (int col = 0; col < n && rank < nrows; ++col) {
    int pivot = -1;
    for (int r = rank; r < nrows; ++r) {
      if (rows[r][col] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(rows[rank], rows[pivot]);
    const Fq s = f.inv(rows[rank][col]);
    for (int j = 0; j < n; ++j) rows[rank][j] = f.mul(rows[rank][j], s);
    for (int r = 0; r < nrows; ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      const Fq factor = rows[r][col];
      for (int j = 0; j < n; ++j) {
        rows[r][j] = f.sub(rows[r][j], f.mul(factor, rows[rank][j]));
      }
    }
    ++rank;
  }
  return rank;
}

/// Kernel basis of an n x n matrix, via reduced row echelon form.
inline std::vector<ProjVec> kernel_basis(const FqMatrix& m) {
  const FieldSpec& f = *m.field;
  const int n = m.n;
  std::array<ProjVec, 3> rows{};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) rows[i][j] = m.at(i, j);
  }
  const int rank = rref(rows, n, n, f);

  // Identify pivot columns.
  std::array<int, 3> pivot_col{-1, -1, -1};
  std::array<bool, 3> is_pivot{};
  for (int r = 0; r < rank; ++r) {
    for (int c = 0; c < n; ++c) {
      if (rows[r][c] != 0) {
        pivot_col[r] = c;
        is_pivot[c] = true;
        break;
      }
    }
  }
  std::vector<ProjVec> basis;
  for (int c = 0; c < n; ++c) {
    if (is_pivot[c]) continue;
    ProjVec v{};
    v[c] = f.one();
    for (int r = 0; r < rank; ++r) {
      // Pivot variable = -(coefficient of the free column).
      v[pivot_col[r]] = f.neg(rows[r][c]);
    }
    basis.push_back(v);
  }
  return basis;
}

}  // namespace ff_detail

/// All eigenlines of A over the extension field `ext` (which must contain
/// A's field).  Scalar matrices own every line; otherwise each eigenvalue
/// contributes its eigenspace: one canonical projective point when the
/// space is a line, a plane entry when it is two-dimensional.
inline EigenlineSet eigenlines(const FqMatrix& m, const FieldSpec& ext) {
  const FieldSpec& base = *m.field;
  EigenlineSet out;
  out.n = m.n;
  if (is_scalar(m)) {
    out.all_lines = true;
    return out;
  }

  const std::vector<Fq> table = embed_table(base, ext);
  FqMatrix me;
  me.n = m.n;
  me.field = &ext;
  for (int i = 0; i < m.n; ++i) {
    for (int j = 0; j < m.n; ++j) me.at(i, j) = table[m.at(i, j)];
  }

  // Embedded characteristic polynomial.
  const std::vector<Fq> cp_base = char_poly(m);
  std::vector<Fq> cp(cp_base.size());
  for (size_t i = 0; i < cp_base.size(); ++i) cp[i] = table[cp_base[i]];

  // Roots lie in subfields of degree (base.k * d) with d at most n; scan
  // those candidate subfields only.
  std::vector<Fq> candidates;
  for (uint32_t d = 1; d <= static_cast<uint32_t>(m.n); ++d) {
    const uint32_t sub_deg = base.k() * d;
    if (ext.k() % sub_deg != 0) continue;
    const auto& elems = ext.subfield_elements(sub_deg);
    candidates.insert(candidates.end(), elems.begin(), elems.end());
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());

  auto eval_poly = [&](const std::vector<Fq>& poly, Fq x) {
    Fq v = 0;
    for (size_t i = poly.size(); i-- > 0;) v = ext.add(ext.mul(v, x), poly[i]);
    return v;
  };

  std::vector<Fq> roots;
  for (Fq cand : candidates) {
    if (eval_poly(cp, cand) == 0) roots.push_back(cand);
  }

  // Multiplicities via synthetic division; the polynomial must split.
  uint32_t total_mult = 0;
  for (Fq root : roots) {
    std::vector<Fq> cur = cp;
    while (cur.size() > 1) {
      // Divide by (x - root): synthetic division, remainder in acc.
      std::vector<Fq> quot(cur.size() - 1);
      Fq acc = 0;
      for (size_t i = cur.size(); i-- > 1;) {
        acc = ext.add(ext.mul(acc, root), cur[i]);
        quot[i - 1] = acc;
      }
      const Fq rem = ext.add(ext.mul(acc, root), cur[0]);
      if (rem != 0) break;
      ++total_mult;
      cur = std::move(quot);
    }
  }
  if (total_mult != static_cast<uint32_t>(m.n)) {
    throw ExtensionTooSmall(
        "characteristic polynomial does not split in the given extension");
  }

  for (Fq root : roots) {
    FqMatrix shifted = me;
    for (int i = 0; i < m.n; ++i) {
      shifted.at(i, i) = ext.sub(shifted.at(i, i), root);
    }
    std::vector<ProjVec> basis = ff_detail::kernel_basis(shifted);
    if (basis.size() == 1) {
      out.points.push_back(
          ff_detail::canonical_point(basis[0], ext, m.n));
    } else if (basis.size() == 2) {
      std::array<ProjVec, 2> rows{basis[0], basis[1]};
      ff_detail::rref(rows, 2, m.n, ext);
      out.planes.push_back(rows);
    } else if (basis.size() >= 3) {
      out.all_lines = true;  // unreachable for non-scalar input
    }
  }
  std::sort(out.points.begin(), out.points.end());
  out.points.erase(std::unique(out.points.begin(), out.points.end()),
                   out.points.end());
  return out;
}

/// Whether a canonical projective point lies on the plane spanned by a
/// basis pair (ambient dimension 3).
inline bool point_on_plane(const ProjVec& pt,
                           const std::array<ProjVec, 2>& plane,
                           const FieldSpec& f) {
  // Determinant of the 3x3 with rows (b0, b1, pt) vanishes iff coplanar.
  const ProjVec& u = plane[0];
  const ProjVec& v = plane[1];
  const Fq c0 = f.sub(f.mul(u[1], v[2]), f.mul(u[2], v[1]));
  const Fq c1 = f.sub(f.mul(u[2], v[0]), f.mul(u[0], v[2]));
  const Fq c2 = f.sub(f.mul(u[0], v[1]), f.mul(u[1], v[0]));
  Fq d = f.mul(pt[0], c0);
  d = f.add(d, f.mul(pt[1], c1));
  d = f.add(d, f.mul(pt[2], c2));
  return d == 0;
}

/// Whether two eigenline sets share at least one line.
inline bool eigen_sets_share_line(const EigenlineSet& a, const EigenlineSet& b,
                                  const FieldSpec& ext) {
  auto nonempty = [](const EigenlineSet& s) {
    return s.all_lines || !s.points.empty() || !s.planes.empty();
  };
  if (a.all_lines) return nonempty(b);
  if (b.all_lines) return nonempty(a);
  // Two planes in dimension three always meet in a line.
  if (!a.planes.empty() && !b.planes.empty()) return true;
  for (const ProjVec& p : a.points) {
    for (const ProjVec& q : b.points) {
      if (p == q) return true;
    }
  }
  for (const ProjVec& p : a.points) {
    for (const auto& pl : b.planes) {
      if (point_on_plane(p, pl, ext)) return true;
    }
  }
  for (const ProjVec& p : b.points) {
    for (const auto& pl : a.planes) {
      if (point_on_plane(p, pl, ext)) return true;
    }
  }
  return false;
}

/// Streams every determinant-one matrix exactly once, in row-major
/// lexicographic order of the entry tuple.  The first n^2 - 1 entries form
/// a prefix counter; the last entry is solved from the determinant
/// condition, so construction cost is proportional to the prefix space.
/// Supports deterministic partitioning by prefix range.
class SlEnumerator {
 public:
  SlEnumerator(int n, const FieldSpec& f)
      : SlEnumerator(n, f, 0, prefix_space(n, f)) {}

  SlEnumerator(int n, const FieldSpec& f, uint64_t prefix_begin,
               uint64_t prefix_end)
      : f_(&f), n_(n), cur_(prefix_begin), end_(prefix_end) {
    check_supported(n, f);
    decode_prefix();
  }

  /// Number of prefixes: q^(n^2 - 1).
  static uint64_t prefix_space(int n, const FieldSpec& f) {
    check_supported(n, f);
    uint64_t out = 1;
    for (int i = 0; i < n * n - 1; ++i) out *= f.q();
    return out;
  }

  std::optional<FqMatrix> next() {
    while (true) {
      if (pending_count_ > 0) {
        FqMatrix m;
        m.n = n_;
        m.field = f_;
        const int cnt = n_ * n_;
        for (int i = 0; i < cnt - 1; ++i) m.a[i] = digits_[i];
        m.a[cnt - 1] = pending_value_;
        ++pending_value_;
        --pending_count_;
        if (pending_count_ == 0) advance_prefix();
        return m;
      }
      if (cur_ >= end_) return std::nullopt;
      solve_last_entry();
      if (pending_count_ == 0) advance_prefix();
    }
  }

 private:
  static void check_supported(int n, const FieldSpec& f) {
    if (n != 2 && n != 3) {
      throw GuardExceeded("enumeration supports n in {2, 3}");
    }
    // q^(n^2) must stay within 2^36.
    long double total = 1.0L;
    for (int i = 0; i < n * n; ++i) total *= f.q();
    if (total > 68719476736.0L) {
      throw GuardExceeded("matrix space exceeds the 2^36 guard");
    }
  }

  void decode_prefix() {
    const int cnt = n_ * n_ - 1;
    uint64_t rest = cur_;
    for (int i = cnt - 1; i >= 0; --i) {
      digits_[i] = static_cast<Fq>(rest % f_->q());
      rest /= f_->q();
    }
    minors_dirty_ = true;
    pending_count_ = 0;
  }

  void advance_prefix() {
    ++cur_;
    if (cur_ >= end_) return;
    const int cnt = n_ * n_ - 1;
    int pos = cnt - 1;
    while (pos >= 0) {
      if (++digits_[pos] < f_->q()) break;
      digits_[pos] = 0;
      --pos;
    }
    if (n_ == 3 && pos <= 5) minors_dirty_ = true;
    if (n_ == 2 && pos <= 0) minors_dirty_ = true;
  }

  void solve_last_entry() {
    const FieldSpec& f = *f_;
    Fq coeff, residual;
    if (n_ == 2) {
      // det = e00*e11 - e01*e10.
      coeff = digits_[0];
      residual = f.neg(f.mul(digits_[1], digits_[2]));
    } else {
      if (minors_dirty_) {
        m20_ = f.sub(f.mul(digits_[1], digits_[5]),
                     f.mul(digits_[2], digits_[4]));
        m21_ = f.sub(f.mul(digits_[0], digits_[5]),
                     f.mul(digits_[2], digits_[3]));
        m22_ = f.sub(f.mul(digits_[0], digits_[4]),
                     f.mul(digits_[1], digits_[3]));
        minors_dirty_ = false;
      }
      // det = e20*m20 - e21*m21 + e22*m22.
      coeff = m22_;
      residual =
          f.sub(f.mul(digits_[6], m20_), f.mul(digits_[7], m21_));
    }
    if (coeff != 0) {
      pending_value_ = f.div(f.sub(f.one(), residual), coeff);
      pending_count_ = 1;
    } else if (residual == f.one()) {
      pending_value_ = 0;
      pending_count_ = f.q();  // every value of the last entry works
    } else {
      pending_count_ = 0;
    }
  }

  const FieldSpec* f_;
  int n_;
  uint64_t cur_, end_;
  std::array<Fq, 9> digits_{};
  Fq m20_ = 0, m21_ = 0, m22_ = 0;
  bool minors_dirty_ = true;
  Fq pending_value_ = 0;
  uint32_t pending_count_ = 0;
};

/// Convenience: collect the whole group (use only for small q).
inline std::vector<FqMatrix> enumerate_sl(int n, const FieldSpec& f) {
  std::vector<FqMatrix> out;
  SlEnumerator it(n, f);
  while (auto m = it.next()) out.push_back(*m);
  return out;
}

}  // namespace charvar
