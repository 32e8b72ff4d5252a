#pragma once

#include <vector>

#include "charvar/errors.hpp"
#include "charvar/grpvar.hpp"
#include "charvar/qpoly.hpp"
#include "charvar/repring.hpp"

namespace charvar {

namespace sl2_detail {

inline void check_rank(unsigned long long r) {
  if (r < 1) throw GuardExceeded("tuple length r must be at least 1");
  if (r > 64) throw GuardExceeded("tuple length r capped at 64");
}

/// Class of the punctured affine line of diagonal matrices diag(x, 1/x)
/// under the swap x <-> 1/x: invariant part q (the trace coordinate),
/// anti-invariant part -1.
inline Z2Class torus_inversion_class() {
  return {qvar(), QPoly(-1LL)};
}

/// Class of the flag quotient PGL(2)/D under the residual swap: the
/// invariant count is q^2, the anti-invariant one is q.
inline Z2Class frame_pair_class() {
  return {QPoly::monomial(2), qvar()};
}

inline const QPoly& require_equal(const QPoly& got, const QPoly& want,
                                  const char* what) {
  if (got != want) {
    throw StratumSumMismatch(std::string(what) + ": " +
                             to_canonical_string(got) + " != " +
                             to_canonical_string(want));
  }
  return got;
}

/// Shared layout of the four reducible-tuple pieces for the rank-two story;
/// `central` is the number of central elements of the group (2 for the
/// special linear group, 1 for its projective quotient).
inline std::vector<StratumEntry> rank2_red_strata(unsigned long long r,
                                                  long long central,
                                                  const char* prefix) {
  check_rank(r);
  const QPoly q = qvar();
  const QPoly one{1LL};
  const QPoly group = group_epoly({GroupFamily::PGL, 2});
  const QPoly n_central{int_pow(central, r)};

  // Tuples fixing both coordinate lines, viewed with the line swap; remove
  // the central tuples, then pair with the frames carrying the same swap.
  const Z2Class torus_tuples =
      z2_pow(torus_inversion_class(), r) - Z2Class{n_central, QPoly()};
  const QPoly r1 =
      z2_invariant_part(z2_mul(frame_pair_class(), torus_tuples));

  // One common eigenline, all diagonal characters central: base count
  // central^r * (q^r - 1) upper-triangular families, frames modulo the
  // stabilizer of order q(q-1).
  const QPoly r2 =
      n_central * (pow(q, r) - one) * exact_div(group, q * (q - one));
  require_equal(r2, n_central * (pow(q, r) - one) * (q + one),
                "printed form of the third reducible piece");

  // One common eigenline, noncentral diagonal part.
  const QPoly r3 = (pow(q, r) - q) *
                   (pow(q - one, r) - n_central) *
                   exact_div(group, q * (q - one));

  std::string p(prefix);
  std::vector<StratumEntry> out;
  out.push_back(
      make_stratum(p + "R0", "tuples of central elements", n_central));
  out.push_back(make_stratum(
      p + "R1", "tuples preserving two eigenlines, not all central", r1));
  out.push_back(make_stratum(
      p + "R2",
      "tuples preserving exactly one eigenline, central diagonal part", r2));
  out.push_back(make_stratum(
      p + "R3",
      "tuples preserving exactly one eigenline, noncentral diagonal part",
      r3));
  return out;
}

inline QPoly rank2_r_red(unsigned long long r, long long central,
                         const char* prefix) {
  QPoly total;
  for (const StratumEntry& s : rank2_red_strata(r, central, prefix))
    total += s.epoly;

  // Closed form printed for the special linear case; the projective strata
  // must sum to the very same polynomial.
  const QPoly q = qvar();
  const QPoly one{1LL};
  const Rational half(1, 2);
  const QPoly closed = half * (q * q - q) * pow(q + one, r) +
                       half * (q * q + q) * pow(q - one, r) +
                       (pow(q, r - 1) - one) * pow(q - one, r - 1) *
                           (pow(q, 3) - q);
  require_equal(total, closed, "reducible-tuple pieces vs closed form");
  return total;
}

}  // namespace sl2_detail

/// Reducible part of the rank-two character variety: tuples up to
/// conjugation and the eigenline swap.
inline QPoly sl2_m_red(unsigned long long r) {
  sl2_detail::check_rank(r);
  const QPoly via_classes = z2_invariant_part(
      z2_pow(sl2_detail::torus_inversion_class(), r));
  const QPoly q = qvar();
  const QPoly one{1LL};
  const Rational half(1, 2);
  sl2_detail::require_equal(via_classes,
                            half * (pow(q + one, r) + pow(q - one, r)),
                            "reducible moduli closed form");
  return via_classes;
}

/// The four pieces of the reducible-tuple locus in the rank-two case.
inline std::vector<StratumEntry> sl2_red_strata(unsigned long long r) {
  return sl2_detail::rank2_red_strata(r, 2, "");
}

/// Count of reducible tuples; pieces summed, checked against the closed form.
inline QPoly sl2_r_red(unsigned long long r) {
  return sl2_detail::rank2_r_red(r, 2, "");
}

/// Irreducible part of the rank-two character variety.  The irreducible
/// tuple locus is a free quotient by the projective group, so the division
/// below is exact; the result is checked against the printed closed form.
inline QPoly sl2_m_irr(unsigned long long r) {
  sl2_detail::check_rank(r);
  const QPoly group = group_epoly({GroupFamily::SL, 2});
  const QPoly via_division =
      exact_div(pow(group, r) - sl2_r_red(r), group);

  const QPoly q = qvar();
  const QPoly one{1LL};
  const Rational half(1, 2);
  const QPoly closed = pow(pow(q, 3) - q, r - 1) -
                       half * pow(q + one, r - 1) -
                       half * pow(q - one, r - 1) -
                       (pow(q, r - 1) - one) * pow(q - one, r - 1);
  sl2_detail::require_equal(via_division, closed,
                            "irreducible moduli closed form");
  return via_division;
}

/// Full rank-two character variety count: irreducible plus reducible parts,
/// checked against the printed closed form.
inline QPoly sl2_m(unsigned long long r) {
  sl2_detail::check_rank(r);
  const QPoly total = sl2_m_irr(r) + sl2_m_red(r);

  const QPoly q = qvar();
  const QPoly one{1LL};
  const Rational half(1, 2);
  const QPoly closed = pow(pow(q, 3) - q, r - 1) +
                       half * q * pow(q + one, r - 1) +
                       half * q * pow(q - one, r - 1) -
                       pow(q, r - 1) * pow(q - one, r - 1);
  sl2_detail::require_equal(total, closed, "rank-two moduli closed form");
  assert_integral(total);
  return total;
}

/// The four reducible pieces for the projective rank-two group.
inline std::vector<StratumEntry> pgl2_red_strata(unsigned long long r) {
  return sl2_detail::rank2_red_strata(r, 1, "bar");
}

/// Reducible-tuple count for the projective group; equals the special
/// linear one.
inline QPoly pgl2_r_red(unsigned long long r) {
  const QPoly out = sl2_detail::rank2_r_red(r, 1, "bar");
  sl2_detail::require_equal(out, sl2_r_red(r),
                            "projective vs special reducible count");
  return out;
}

/// Character variety count for the projective rank-two group; equals the
/// special linear one.
inline QPoly pgl2_m(unsigned long long r) {
  sl2_detail::check_rank(r);
  const QPoly group = group_epoly({GroupFamily::PGL, 2});
  const QPoly m_irr = exact_div(pow(group, r) - pgl2_r_red(r), group);
  const QPoly total = m_irr + sl2_m_red(r);
  sl2_detail::require_equal(total, sl2_m(r),
                            "projective vs special moduli count");
  return total;
}

}  // namespace charvar
