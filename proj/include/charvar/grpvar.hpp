#pragma once

#include <string>
#include <vector>

#include "charvar/errors.hpp"
#include "charvar/qpoly.hpp"
#include "charvar/repring.hpp"

namespace charvar {

enum class GroupFamily { GL, SL, PGL };

struct GroupKind {
  GroupFamily family;
  int n;  // matrix size
};

/// Counting polynomial of the group of rational points:
///   GL(n):        prod_{i=0}^{n-1} (q^n - q^i)
///   SL(n), PGL(n): the GL(n) count divided by (q - 1).
inline QPoly group_epoly(GroupKind g) {
  if (g.n < 1) throw RankGuard("matrix size must be at least 1");
  if (g.n > 16) throw RankGuard("matrix size capped at 16");
  const QPoly q = qvar();
  const QPoly qn = pow(q, static_cast<unsigned>(g.n));
  QPoly out{1LL};
  for (int i = 0; i < g.n; ++i) out *= qn - pow(q, static_cast<unsigned>(i));
  if (g.family == GroupFamily::GL) return out;
  return exact_div(out, q - QPoly(1LL));
}

/// One piece of a decomposition into locally closed pieces: an identifier,
/// a human-readable description, and the counting polynomial of the piece.
struct StratumEntry {
  std::string id;
  std::string description;
  QPoly epoly;
};

inline StratumEntry make_stratum(std::string id, std::string description,
                                 QPoly epoly) {
  assert_integral(epoly);
  return {std::move(id), std::move(description), std::move(epoly)};
}

namespace grpvar_detail {

inline void require_equal(const QPoly& got, const QPoly& want,
                          const std::string& what) {
  if (got != want) {
    throw StratumSumMismatch(what + ": " + to_canonical_string(got) +
                             " != " + to_canonical_string(want));
  }
}

/// Equivariant class of the plane with three marked punctured lines; the
/// quotient counts are q^2-5q+10, q^2-3q+5 and q^2-q+1.
inline Sigma3Class marked_plane_class() {
  return sigma3_from_quotients(parse_qpoly("q^2 - 5*q + 10"),
                               parse_qpoly("q^2 - 3*q + 5"),
                               parse_qpoly("q^2 - q + 1"));
}

/// Equivariant class of the quotient of the rank-three projective linear
/// group by its diagonal subgroup, under the residual permutation action;
/// the quotient counts are q^6+2q^5+2q^4+q^3, q^6+q^5+q^4 and q^6.
inline Sigma3Class torus_frame_class() {
  return sigma3_from_quotients(parse_qpoly("q^6 + 2*q^5 + 2*q^4 + q^3"),
                               parse_qpoly("q^6 + q^5 + q^4"),
                               parse_qpoly("q^6"));
}

}  // namespace grpvar_detail

/// Decomposition of the rank-three special linear group by conjugacy type:
///   X0  central elements
///   X1  one eigenvalue, a single Jordan block
///   X2  one eigenvalue, two Jordan blocks
///   X3  two eigenvalues, diagonalizable
///   X4  two eigenvalues, one 2x2 Jordan block
///   X5  three distinct eigenvalues
/// Each noncentral piece is an orbit space: (parameter count) x (group /
/// stabilizer).  The last piece pairs eigenvalue triples with frames using
/// the permutation-equivariant product.
inline std::vector<StratumEntry> sl3_conjugation_strata() {
  const QPoly q = qvar();
  const QPoly one{1LL};
  const QPoly group = group_epoly({GroupFamily::PGL, 3});

  const QPoly x0{3LL};
  const QPoly x1 =
      QPoly(3LL) * exact_div(group, pow(q, 3) * (q - one));
  const QPoly x2 = QPoly(3LL) * exact_div(group, q * q);
  const QPoly x3 = (q - QPoly(4LL)) *
                   exact_div(group, (q * q - one) * (q * q - q));
  const QPoly x4 = (q - QPoly(4LL)) * exact_div(group, q * (q - one));
  const QPoly x5 = invariant_part(
      sigma3_mul(grpvar_detail::marked_plane_class(),
                 grpvar_detail::torus_frame_class()));

  std::vector<StratumEntry> out;
  out.push_back(make_stratum("X0", "central elements", x0));
  out.push_back(make_stratum(
      "X1", "one eigenvalue, a single rank-two Jordan block", x1));
  out.push_back(make_stratum(
      "X2", "one eigenvalue, a single rank-one Jordan block", x2));
  out.push_back(
      make_stratum("X3", "two distinct eigenvalues, diagonalizable", x3));
  out.push_back(make_stratum(
      "X4", "two distinct eigenvalues, one Jordan block", x4));
  out.push_back(
      make_stratum("X5", "three distinct eigenvalues", x5));
  return out;
}

/// Sum of the conjugacy-type pieces; asserted to equal the group count.
inline QPoly sl3_conjugation_sum_check() {
  QPoly total;
  for (const StratumEntry& s : sl3_conjugation_strata()) total += s.epoly;
  grpvar_detail::require_equal(total, group_epoly({GroupFamily::SL, 3}),
                               "conjugacy pieces must cover the group");
  return total;
}

/// Count for the rank-three character variety of the free group on one
/// generator: closed conjugation orbits are the semisimple classes, i.e.
/// points of the torus modulo its permutation action, so the count is the
/// invariant part of the equivariant torus class — the plane of
/// characteristic polynomials.
inline QPoly m_1_3() {
  const QPoly out = invariant_part(equivariant_torus_power(1));
  grpvar_detail::require_equal(out, parse_qpoly("q^2"),
                               "orbit count at r = 1");
  return out;
}

}  // namespace charvar
