#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "charvar/errors.hpp"
#include "charvar/grpvar.hpp"
#include "charvar/qpoly.hpp"
#include "charvar/repring.hpp"
#include "charvar/sl2.hpp"

namespace charvar {

/// Euler-characteristic summary of the rank-three character variety.
/// chi_M_abelian_claimed carries the conventional closed form for the
/// abelian locus; the computed value disagrees with it, and the record
/// surfaces both instead of silently preferring one.
struct EulerRecord {
  unsigned long long r = 0;
  BigInt chi_M;
  BigInt chi_M_abelian;
  BigInt chi_M_smooth;
  BigInt chi_M_singular;
  BigInt chi_M_abelian_claimed;
  bool abelian_discrepancy = false;
};

/// Full stratification report for the rank-three pipelines.
struct Sl3StrataReport {
  GroupFamily family = GroupFamily::SL;  // SL or PGL variant
  unsigned long long r = 0;
  std::vector<StratumEntry> strata;      // fine pieces and family subtotals
  std::vector<StratumEntry> aggregates;  // Rred, Rirr, M0, M1, Mred, Mirr, M
  std::optional<EulerRecord> euler;      // populated for r >= 2
};

namespace sl3_detail {

using sl2_detail::check_rank;
using sl2_detail::require_equal;

/// Shared numeric inputs of one pipeline run.  The projective variant
/// differs from the special linear one only through `s`, the number of
/// tuples of central elements, which feeds every scalar-character count.
struct Params {
  unsigned long long r = 1;
  bool bar = false;
  QPoly s;             // central tuple count: 3^r, or 1 for the bar variant
  std::string prefix;  // id prefix: "" or "bar"
};

inline Params make_params(unsigned long long r, bool bar) {
  check_rank(r);
  return {r, bar, bar ? QPoly(1LL) : QPoly(int_pow(3, r)),
          bar ? std::string("bar") : std::string()};
}

struct FamilyBundle {
  std::vector<StratumEntry> entries;  // fine pieces, then the family total
  QPoly total;
};

inline QPoly q_pow(unsigned long long e) {
  return QPoly::monomial(static_cast<int>(e));
}

/// Orbit factor: the projective rank-three group divided by the stabilizer
/// read off from the fibration; division must be exact.
inline QPoly orbit(const QPoly& stabilizer) {
  return exact_div(group_epoly({GroupFamily::PGL, 3}), stabilizer);
}

/// Pieces whose rank-two constituent acts irreducibly.  These carry no
/// scalar-character factor, so both variants share them.
inline FamilyBundle r0_family(const Params& p) {
  const QPoly q = qvar();
  const QPoly one{1LL};
  const unsigned long long r = p.r;

  // Irreducible rank-two tuple count, imported from the rank-two pipeline.
  const QPoly rirr2 = pow(group_epoly({GroupFamily::SL, 2}), r) -
                      sl2_r_red(r);
  const QPoly gl2 = group_epoly({GroupFamily::GL, 2});

  const QPoly r01 = pow(q - one, r) * q_pow(2 * r) * rirr2 *
                    orbit(q * q * gl2);
  const QPoly r02 = r01;
  const QPoly cap = pow(q - one, r) * rirr2 * orbit(gl2);
  const QPoly total = r01 + r02 - cap;

  FamilyBundle out;
  out.entries.push_back(make_stratum(
      p.prefix + "R01",
      "tuples with an invariant line and irreducible quotient-plane action",
      r01));
  out.entries.push_back(make_stratum(
      p.prefix + "R02",
      "tuples with an invariant plane carrying an irreducible action", r02));
  out.entries.push_back(make_stratum(
      p.prefix + "R01capR02",
      "tuples with an invariant line inside an invariant plane and "
      "irreducible rank-two constituent",
      cap));
  out.entries.push_back(make_stratum(
      p.prefix + "R0",
      "tuples with an irreducible rank-two constituent (inclusion-exclusion "
      "of the line and plane cases)",
      total));
  out.total = total;
  return out;
}

/// Pieces whose diagonal characters all coincide (scalar semisimple part).
inline FamilyBundle r1_family(const Params& p) {
  const QPoly q = qvar();
  const QPoly one{1LL};
  const unsigned long long r = p.r;
  const QPoly qr = pow(q, r);
  const QPoly qm1_sq = (q - one) * (q - one);

  const QPoly r11 = p.s;
  const QPoly r12 = p.s * (qr - one) * orbit(qm1_sq * q_pow(3));
  const QPoly r13 =
      p.s * (qr - one) * (qr - q) *
      orbit((q * q - one) * (q * q - q) * q_pow(2));
  const QPoly r14 = r13;  // the two configurations count identically
  const QPoly r15 = p.s * (qr - one) * (qr - one) * qr *
                    orbit(qm1_sq * q_pow(3));
  const QPoly total = r11 + r12 + r13 + r14 + r15;

  const QPoly closed =
      p.s * (one + (q * q + q + one) *
                       (q_pow(3 * r + 1) + q_pow(3 * r) -
                        QPoly(2LL) * q_pow(2 * r + 1) + q - one));
  require_equal(total, closed, "single-character family vs closed form");

  const char* kDesc[] = {
      "central tuples",
      "single diagonal character, one minimal unipotent step",
      "single diagonal character, rank-one unipotent parts in a line "
      "configuration",
      "single diagonal character, rank-one unipotent parts in a plane "
      "configuration",
      "single diagonal character, full unipotent parts",
  };
  const QPoly vals[] = {r11, r12, r13, r14, r15};
  FamilyBundle out;
  for (int i = 0; i < 5; ++i) {
    out.entries.push_back(make_stratum(
        p.prefix + "R1" + std::to_string(i + 1), kDesc[i], vals[i]));
  }
  out.entries.push_back(make_stratum(
      p.prefix + "R1", "tuples with a single diagonal character", total));
  out.total = total;
  return out;
}

/// Pieces with exactly two distinct diagonal characters.
inline FamilyBundle r2_family(const Params& p) {
  const QPoly q = qvar();
  const QPoly one{1LL};
  const unsigned long long r = p.r;
  const QPoly qr = pow(q, r);
  const QPoly par = pow(q - one, r) - p.s;  // character pairs parameter
  const QPoly qm1_sq = (q - one) * (q - one);
  const QPoly full = (q * q - one) * (q * q - q);

  const QPoly r21 = par * orbit(full);
  const QPoly r22 = par * (qr - one) * q_pow(2 * r) * orbit(qm1_sq * q_pow(3));
  const QPoly r23 = par * (qr - q) * orbit(qm1_sq * q_pow(2));
  const QPoly r24 =
      par * (qr - q) * (qr - q * q) * orbit(full * q_pow(2));
  const QPoly r25 =
      par * (qr - one) * (qr - q) * qr * orbit(qm1_sq * q_pow(3));
  const QPoly r26 = par * (qr - one) * (qr - q) * orbit(qm1_sq * q_pow(2));
  const QPoly r27 = par * (qr - q) * orbit(qm1_sq * q_pow(2));
  const QPoly r28 =
      par * (qr - q) * (qr - q * q) * orbit(full * q_pow(2));
  const QPoly r29 = par * (qr - q) * (qr - q) * qr * orbit(qm1_sq * q_pow(3));
  const QPoly total = r21 + r22 + r23 + r24 + r25 + r26 + r27 + r28 + r29;

  const QPoly closed =
      par * (q * q + q + one) *
      (QPoly(3LL) * q_pow(3 * r + 1) + QPoly(3LL) * q_pow(3 * r) -
       QPoly(2LL) * q_pow(2 * r + 2) - QPoly(4LL) * q_pow(2 * r + 1) +
       q_pow(3));
  require_equal(total, closed, "two-character family vs closed form");

  const char* kDesc[] = {
      "diagonalizable with exactly two distinct diagonal characters",
      "two distinct characters, unipotent part in the repeated eigenvalue "
      "block",
      "two distinct characters, one elementary unipotent step",
      "two distinct characters, unipotent step joining the distinct "
      "eigenvalues",
      "two distinct characters, combined block-and-step unipotent part",
      "two distinct characters, two-step unipotent chain",
      "two distinct characters, one elementary unipotent step (dual "
      "position)",
      "two distinct characters, unipotent step joining the distinct "
      "eigenvalues (dual position)",
      "two distinct characters, full unipotent part",
  };
  const QPoly vals[] = {r21, r22, r23, r24, r25, r26, r27, r28, r29};
  FamilyBundle out;
  for (int i = 0; i < 9; ++i) {
    out.entries.push_back(make_stratum(
        p.prefix + "R2" + std::to_string(i + 1), kDesc[i], vals[i]));
  }
  out.entries.push_back(make_stratum(
      p.prefix + "R2", "tuples with exactly two distinct diagonal characters",
      total));
  out.total = total;
  return out;
}

/// Equivariant class of the distinct-character parameter space: torus
/// character tuples minus the degenerate ones, carrying the permutation
/// action of the residual symmetric group.
inline Sigma3Class distinct_character_class(const Params& p) {
  const QPoly q = qvar();
  const QPoly coincident = pow(q - QPoly(1LL), p.r);
  const Sigma3Class degenerate{coincident, QPoly(), coincident - p.s};
  return equivariant_torus_power(p.r) - degenerate;
}

/// Pieces with three distinct diagonal characters.
inline FamilyBundle r3_family(const Params& p) {
  const QPoly q = qvar();
  const QPoly one{1LL};
  const unsigned long long r = p.r;
  const QPoly qr = pow(q, r);
  const QPoly qm1_sq = (q - one) * (q - one);

  const Sigma3Class b_cls = distinct_character_class(p);
  const QPoly e_b = dim(b_cls);
  require_equal(e_b,
                pow(q - one, 2 * r) - QPoly(3LL) * pow(q - one, r) +
                    QPoly(2LL) * p.s,
                "distinct-character base count");

  // Diagonalizable piece: pair the base with the frame space equivariantly.
  const QPoly r31 = invariant_part(
      sigma3_mul(b_cls, grpvar_detail::torus_frame_class()));

  const QPoly r32 = e_b * (qr - q) * orbit(qm1_sq * q);

  // The two swap-symmetric pieces: pair the restriction of the base with
  // the square of the punctured character space and the residual frame
  // factor, all carrying the order-two action.
  const Z2Class step_pairs{q_pow(2 * r) - q_pow(r + 1),
                           q * q - q_pow(r + 1)};
  const Z2Class frame_factor{q_pow(4) + q_pow(3) + q * q,
                             q_pow(3) + q * q + q};
  const QPoly r33 = z2_invariant_part(
      z2_mul(z2_mul(restrict_to_z2(b_cls), step_pairs), frame_factor));
  const QPoly r34 = r33;  // equal by the swap symmetry of the two positions

  const QPoly r35 = e_b * (qr - q) * (qr - q) * qr * orbit(qm1_sq * q_pow(3));
  const QPoly total = r31 + r32 + r33 + r34 + r35;

  // Printed closed form, a five-line combination.
  const QPoly qm1r = pow(q - one, r);
  const QPoly qm1_2r = pow(q - one, 2 * r);
  const QPoly q2m1r = pow(q * q - one, r);
  const QPoly cycr = pow(q * q + q + one, r);
  const QPoly two_s = QPoly(2LL) * p.s;
  const QPoly line1 = (two_s - QPoly(3LL) * qm1r + qm1_2r) * (q + one) *
                      (q * q + q + one) * (qr - q) *
                      (q * q + q_pow(2 * r) - q_pow(r + 1));
  const QPoly line2 = (two_s - QPoly(2LL) * qm1r + qm1_2r - q2m1r) * q *
                      (q * q + q + one) * (qr - q) * (qr - q * q);
  const QPoly line3 = (two_s - QPoly(4LL) * qm1r + qm1_2r + q2m1r) * q * q *
                      (q * q + q + one) * (qr - one) * (qr - q);
  const QPoly line4 =
      Rational(1, 6) * q_pow(3) *
      (qm1_2r - QPoly(3LL) * q2m1r + QPoly(2LL) * cycr +
       QPoly(2LL) * q * (q + one) *
           (QPoly(3LL) * p.s - QPoly(3LL) * qm1r + qm1_2r - cycr));
  const QPoly line5 =
      Rational(1, 6) * q_pow(6) *
      (QPoly(-6LL) * qm1r + qm1_2r + QPoly(3LL) * q2m1r + QPoly(2LL) * cycr);
  require_equal(total, line1 + line2 + line3 + line4 + line5,
                "three-character family vs closed form");

  const char* kDesc[] = {
      "diagonalizable with three distinct diagonal characters",
      "three distinct characters, one elementary unipotent step",
      "three distinct characters, unipotent step with residual swap "
      "symmetry",
      "three distinct characters, unipotent step with residual swap "
      "symmetry (dual position)",
      "three distinct characters, full unipotent part",
  };
  const QPoly vals[] = {r31, r32, r33, r34, r35};
  FamilyBundle out;
  for (int i = 0; i < 5; ++i) {
    out.entries.push_back(make_stratum(
        p.prefix + "R3" + std::to_string(i + 1), kDesc[i], vals[i]));
  }
  out.entries.push_back(make_stratum(
      p.prefix + "R3",
      "tuples with three distinct diagonal characters", total));
  out.total = total;
  return out;
}

/// Reducible-tuple count for one variant, with the closed-form check.
inline QPoly r_red_total(const Params& p) {
  const QPoly total = r0_family(p).total + r1_family(p).total +
                      r2_family(p).total + r3_family(p).total;

  const QPoly q = qvar();
  const QPoly one{1LL};
  const unsigned long long r = p.r;
  const QPoly cyc = q * q + q + one;
  const QPoly closed =
      Rational(1, 3) * pow(cyc, r) * (q - one) * (q - one) * q_pow(3) *
          (q + one) +
      cyc * (QPoly(2LL) * q_pow(2 * r) - q * q) * pow(q - one, 2 * r) *
          pow(q, r) * pow(q + one, r) -
      Rational(1, 3) * pow(q - one, 2 * r) * (q + one) * cyc *
          (QPoly(3LL) * q_pow(3 * r) - QPoly(3LL) * q_pow(r + 2) + q_pow(3));
  require_equal(total, closed, "reducible-tuple total vs closed form");
  assert_integral(total);
  return total;
}

}  // namespace sl3_detail

/// Pieces with an irreducible rank-two constituent.
inline std::vector<StratumEntry> sl3_r0(unsigned long long r) {
  return sl3_detail::r0_family(sl3_detail::make_params(r, false)).entries;
}

/// Pieces with a single diagonal character.
inline std::vector<StratumEntry> sl3_r1(unsigned long long r) {
  return sl3_detail::r1_family(sl3_detail::make_params(r, false)).entries;
}

/// Pieces with exactly two distinct diagonal characters.
inline std::vector<StratumEntry> sl3_r2(unsigned long long r) {
  return sl3_detail::r2_family(sl3_detail::make_params(r, false)).entries;
}

/// Pieces with three distinct diagonal characters.
inline std::vector<StratumEntry> sl3_r3(unsigned long long r) {
  return sl3_detail::r3_family(sl3_detail::make_params(r, false)).entries;
}

/// Reducible tuples in the rank-three case.
inline QPoly sl3_r_red(unsigned long long r) {
  return sl3_detail::r_red_total(sl3_detail::make_params(r, false));
}

/// Irreducible part of the rank-three character variety; also the smooth
/// locus for r >= 2.  The irreducible tuple locus is a free quotient by the
/// projective group, so the division is exact.
inline QPoly sl3_m_irr(unsigned long long r) {
  sl3_detail::check_rank(r);
  const QPoly group = group_epoly({GroupFamily::SL, 3});
  return exact_div(pow(group, r) - sl3_r_red(r), group);
}

/// Moduli of classes with an irreducible rank-two constituent.
inline QPoly sl3_m0(unsigned long long r) {
  sl3_detail::check_rank(r);
  return pow(qvar() - QPoly(1LL), r) * sl2_m_irr(r);
}

/// Moduli of diagonalizable classes: the abelian locus, equal to the
/// character variety of the free abelian group of the same rank.
inline QPoly sl3_m1(unsigned long long r) {
  sl3_detail::check_rank(r);
  const QPoly via_classes = invariant_part(equivariant_torus_power(r));
  const QPoly q = qvar();
  const QPoly one{1LL};
  const QPoly closed = Rational(1, 2) * pow(q * q - one, r) +
                       Rational(1, 6) * pow(q - one, 2 * r) +
                       Rational(1, 3) * pow(q * q + q + one, r);
  sl3_detail::require_equal(via_classes, closed, "abelian locus closed form");
  return via_classes;
}

/// Reducible part of the rank-three character variety; the singular locus
/// for r >= 2.
inline QPoly sl3_m_red(unsigned long long r) {
  return sl3_m0(r) + sl3_m1(r);
}

/// The printed six-term closed form of the full rank-three count.
inline QPoly theorem_main(unsigned long long r) {
  sl3_detail::check_rank(r);
  const QPoly q = qvar();
  const QPoly one{1LL};
  const QPoly group = group_epoly({GroupFamily::SL, 3});
  const QPoly qm1_r1 = pow(q - one, r - 1);         // (q-1)^{r-1}
  const QPoly qm1_2r2 = pow(q - one, 2 * (r - 1));  // (q-1)^{2r-2}
  const QPoly q2m1_r1 = pow(q * q - one, r - 1);    // (q^2-1)^{r-1}
  const QPoly cyc_r1 = pow(q * q + q + one, r - 1);
  const QPoly out =
      pow(group, r - 1) +
      qm1_2r2 * (sl3_detail::q_pow(3 * (r - 1)) - pow(q, r)) +
      Rational(1, 6) * qm1_2r2 * q * (q + one) +
      Rational(1, 2) * q2m1_r1 * q * (q - one) +
      Rational(1, 3) * cyc_r1 * q * (q + one) -
      qm1_r1 * pow(q, r - 1) * q2m1_r1 *
          (QPoly(2LL) * sl3_detail::q_pow(2 * (r - 1)) - q);
  assert_integral(out);
  return out;
}

/// Full rank-three character variety count, assembled from the strata and
/// checked against the closed form.
inline QPoly sl3_m(unsigned long long r) {
  const QPoly total = sl3_m_irr(r) + sl3_m_red(r);
  sl3_detail::require_equal(total, theorem_main(r),
                            "rank-three moduli vs closed form");
  assert_integral(total);
  return total;
}

/// Reducible-tuple count for the projective variant; equals the special
/// linear one.
inline QPoly pgl3_r_red(unsigned long long r) {
  const QPoly out =
      sl3_detail::r_red_total(sl3_detail::make_params(r, true));
  sl3_detail::require_equal(out, sl3_r_red(r),
                            "projective vs special reducible count");
  return out;
}

/// Character variety count for the projective variant; equals the special
/// linear one.
inline QPoly pgl3_m(unsigned long long r) {
  sl3_detail::check_rank(r);
  const QPoly group = group_epoly({GroupFamily::PGL, 3});
  const QPoly m_irr = exact_div(pow(group, r) - pgl3_r_red(r), group);
  const QPoly total = m_irr + sl3_m_red(r);
  sl3_detail::require_equal(total, sl3_m(r),
                            "projective vs special moduli count");
  return total;
}

/// Euler characteristics at q = 1 of the whole space and its loci.
/// The abelian value is computed and also compared against the claimed
/// closed form 3^{r-2}, which disagrees; both are reported.
inline EulerRecord euler_characteristics(unsigned long long r) {
  if (r < 2) throw GuardExceeded("Euler characteristics need r >= 2");
  sl3_detail::check_rank(r);
  EulerRecord out;
  out.r = r;
  out.chi_M = eval_at_integer(sl3_m(r), 1);
  out.chi_M_abelian = eval_at_integer(sl3_m1(r), 1);
  out.chi_M_smooth = eval_at_integer(sl3_m_irr(r), 1);
  out.chi_M_singular = eval_at_integer(sl3_m_red(r), 1);
  out.chi_M_abelian_claimed = int_pow(3, r - 2);
  out.abelian_discrepancy = out.chi_M_abelian != out.chi_M_abelian_claimed;
  const BigInt expected = 2 * int_pow(3, r - 2);
  if (out.chi_M != expected) {
    throw EulerMismatch("chi at q=1 is " + out.chi_M.str() +
                        ", expected " + expected.str());
  }
  return out;
}

namespace sl3_detail {

inline Sl3StrataReport build_report(unsigned long long r, bool bar) {
  const Params p = make_params(r, bar);
  Sl3StrataReport report;
  report.family = bar ? GroupFamily::PGL : GroupFamily::SL;
  report.r = r;

  QPoly red_total;
  for (auto* fam : {&r0_family, &r1_family, &r2_family, &r3_family}) {
    FamilyBundle bundle = (*fam)(p);
    red_total += bundle.total;
    for (auto& e : bundle.entries)
      report.strata.push_back(std::move(e));
  }

  const QPoly r_red = bar ? pgl3_r_red(r) : sl3_r_red(r);
  require_equal(red_total, r_red, "family totals vs reducible count");

  const QPoly group = group_epoly(
      {bar ? GroupFamily::PGL : GroupFamily::SL, 3});
  const QPoly r_irr = pow(group, r) - r_red;
  const QPoly m_irr = exact_div(r_irr, group);
  const QPoly m0 = sl3_m0(r);
  const QPoly m1 = sl3_m1(r);
  const QPoly m_red = m0 + m1;
  const QPoly m = bar ? pgl3_m(r) : sl3_m(r);
  require_equal(m, m_irr + m_red, "moduli assembly");

  const bool labeled = r >= 2;
  report.aggregates.push_back(
      make_stratum(p.prefix + "Rred", "reducible tuples", r_red));
  report.aggregates.push_back(
      make_stratum(p.prefix + "Rirr", "irreducible tuples", r_irr));
  report.aggregates.push_back(make_stratum(
      p.prefix + "M0",
      "moduli classes with an irreducible rank-two constituent", m0));
  report.aggregates.push_back(make_stratum(
      p.prefix + "M1",
      labeled ? "moduli classes of diagonalizable tuples (abelian locus)"
              : "moduli classes of diagonalizable tuples",
      m1));
  report.aggregates.push_back(make_stratum(
      p.prefix + "Mred",
      labeled ? "reducible moduli classes (singular locus)"
              : "reducible moduli classes",
      m_red));
  report.aggregates.push_back(make_stratum(
      p.prefix + "Mirr",
      labeled ? "irreducible moduli classes (smooth locus)"
              : "irreducible moduli classes",
      m_irr));
  report.aggregates.push_back(
      make_stratum(p.prefix + "M", "the full character variety", m));

  if (r >= 2) report.euler = euler_characteristics(r);
  return report;
}

}  // namespace sl3_detail

/// Full stratification report for the special linear variant.
inline Sl3StrataReport sl3_strata(unsigned long long r) {
  return sl3_detail::build_report(r, false);
}

/// Full stratification report for the projective variant.
inline Sl3StrataReport pgl3_strata(unsigned long long r) {
  return sl3_detail::build_report(r, true);
}

}  // namespace charvar
