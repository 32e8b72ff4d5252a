// Acceptance battery: twelve end-to-end checks covering the closed-form
// polynomial layer, the equivariant engine, and the brute-force finite-field
// counting scans.  Each criterion prints exactly one PASS/FAIL line with its
// pinned values spelled out in code below; the process exits nonzero when any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <exception>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "charvar/oracle.hpp"

using namespace charvar;

namespace {

int failures = 0;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool ok = false;
  std::string detail;
};

template <typename Fn>
void criterion(int idx, const char* label, Fn&& fn) {
  Outcome out;
  try {
    out = fn();
  } catch (const std::exception& e) {
    out.ok = false;
    out.detail = std::string("exception: ") + e.what();
  }
  std::printf("%s  criterion %2d  %s%s%s\n", out.ok ? "PASS" : "FAIL", idx,
              label, out.detail.empty() ? "" : "  -- ", out.detail.c_str());
  std::fflush(stdout);
  if (!out.ok) ++failures;
}

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1fs", s);
  return buf;
}

// ---------------------------------------------------------------------------

Outcome check_group_orders() {
  const auto t0 = Clock::now();
  const QPoly want = parse_qpoly("q^8 - q^6 - q^5 + q^3");
  bool ok = group_epoly({GroupFamily::SL, 3}) == want &&
            group_epoly({GroupFamily::PGL, 3}) == want;
  ok = ok && eval_at_integer(want, BigInt(4)) == BigInt(60480);

  // Enumerate every determinant-one matrix over the four-element field and
  // compare the count against the polynomial value.
  const FieldSpec f4 = field_make(2, 2);
  SlEnumerator en(3, f4);
  unsigned long long count = 0;
  while (en.next()) ++count;
  ok = ok && count == 60480;

  const double dt = seconds_since(t0);
  ok = ok && dt < 60.0;
  return {ok, "|SL(3,F_4)| enumerated = " + std::to_string(count) + ", " +
                  fmt_seconds(dt)};
}

Outcome check_conjugation_strata() {
  const std::vector<StratumEntry> strata = sl3_conjugation_strata();
  bool ok = strata.size() == 6;
  QPoly sum;
  for (const StratumEntry& s : strata) sum += s.epoly;
  ok = ok && sum == group_epoly({GroupFamily::SL, 3});
  ok = ok && strata[5].epoly ==
                 parse_qpoly("q^8 - q^7 - q^6 + 2*q^5 + 4*q^4 + q^3");
  // The helper that re-derives the sum must agree as well.
  ok = ok && sl3_conjugation_sum_check() == sum;
  return {ok, "six strata sum to the group order"};
}

Outcome check_rank2_closed_form() {
  const QPoly q = qvar();
  const QPoly one{1LL};
  const Rational half(1, 2);
  bool ok = true;
  for (unsigned long long r = 1; r <= 20; ++r) {
    const QPoly closed = pow(q * q * q - q, r - 1) +
                         QPoly(half) * q * pow(q + one, r - 1) +
                         QPoly(half) * q * pow(q - one, r - 1) -
                         pow(q, r - 1) * pow(q - one, r - 1);
    const QPoly got = sl2_m(r);
    assert_integral(got);
    ok = ok && got == closed;
  }
  ok = ok && sl2_m(1) == q && sl2_m(2) == QPoly::monomial(3);
  return {ok, "sl2_m matches the closed form for r <= 20"};
}

Outcome check_pgl_equals_sl() {
  bool ok = true;
  for (unsigned long long r = 1; r <= 20; ++r) {
    ok = ok && pgl2_m(r) == sl2_m(r);
    ok = ok && pgl3_m(r) == sl3_m(r);
    ok = ok && pgl2_r_red(r) == sl2_r_red(r);
    ok = ok && pgl3_r_red(r) == sl3_r_red(r);
  }
  // Every aggregate row of the stratification reports must agree between the
  // barred and unbarred pipelines.
  for (unsigned long long r : {1ull, 2ull, 3ull, 5ull, 10ull, 20ull}) {
    const Sl3StrataReport a = sl3_strata(r);
    const Sl3StrataReport b = pgl3_strata(r);
    ok = ok && a.aggregates.size() == b.aggregates.size();
    for (size_t i = 0; ok && i < a.aggregates.size(); ++i) {
      ok = a.aggregates[i].epoly == b.aggregates[i].epoly;
    }
  }
  return {ok, "adjoint-form counts equal the special-linear ones, r <= 20"};
}

Outcome check_main_closed_form() {
  bool ok = true;
  for (unsigned long long r = 1; r <= 20; ++r) {
    ok = ok && sl3_m(r) == theorem_main(r);
  }
  ok = ok && sl3_m(1) == QPoly::monomial(2);
  return {ok, "assembled quotient count equals the closed form, r <= 20"};
}

Outcome check_euler_values() {
  bool ok = true;
  for (unsigned long long r = 2; r <= 10; ++r) {
    const BigInt want = BigInt(2) * int_pow(3, r - 2);
    ok = ok && eval_at_integer(theorem_main(r), BigInt(1)) == want;
  }
  return {ok, "value at 1 equals 2*3^(r-2) for 2 <= r <= 10"};
}

Outcome check_abelian_discrepancy() {
  bool ok = true;
  for (unsigned long long r = 2; r <= 10; ++r) {
    const BigInt computed = int_pow(3, r - 1);
    const BigInt claimed = int_pow(3, r - 2);
    ok = ok && eval_at_integer(sl3_m1(r), BigInt(1)) == computed;
    const EulerRecord rec = euler_characteristics(r);
    ok = ok && rec.chi_M_abelian == computed;
    ok = ok && rec.chi_M_abelian_claimed == claimed;
    ok = ok && rec.abelian_discrepancy;
  }
  return {ok,
          "abelian locus evaluates to 3^(r-1), documented against the "
          "claimed 3^(r-2); the computed value is asserted"};
}

Outcome check_equivariant_engine() {
  const QPoly q = qvar();
  bool ok = true;

  // Torus powers: the r-th power of q^2*T + S - q*V.
  const Sigma3Class base{q * q, QPoly(1LL), QPoly() - q};
  for (unsigned long long r = 1; r <= 15; ++r) {
    ok = ok && sigma3_pow(base, r) == equivariant_torus_power(r);
  }

  // Standard-representation powers: closed form (2^b - (-1)^b)/3 and the
  // first-order recurrence a_b = a_{b-1} + 2*a_{b-2}.
  auto seq = [](unsigned long long m) -> BigInt {
    const BigInt sign = (m % 2 == 0) ? 1 : -1;
    return (int_pow(2, m) - sign) / 3;
  };
  const Sigma3Class v{QPoly(), QPoly(), QPoly(1LL)};
  for (unsigned long long b = 2; b <= 30; ++b) {
    ok = ok && seq(b) == seq(b - 1) + BigInt(2) * seq(b - 2);
    ok = ok && v_power(b) == sigma3_mul(v_power(b - 1), v);
    const Sigma3Class want{QPoly(seq(b - 1)), QPoly(seq(b - 1)),
                           QPoly(seq(b))};
    ok = ok && v_power(b) == want;
  }

  // Dimension and restriction are ring morphisms: check multiplicativity and
  // additivity on seeded random pairs.
  std::mt19937_64 rng(0x5157ULL);
  std::uniform_int_distribution<int> coeff(-9, 9);
  std::uniform_int_distribution<unsigned> deg(0, 4);
  auto random_poly = [&]() {
    QPoly out;
    const unsigned d = deg(rng);
    for (unsigned i = 0; i <= d; ++i) {
      out += Rational(coeff(rng)) * QPoly::monomial(i);
    }
    return out;
  };
  auto random_class = [&]() {
    return Sigma3Class{random_poly(), random_poly(), random_poly()};
  };
  for (int i = 0; ok && i < 1000; ++i) {
    const Sigma3Class a = random_class();
    const Sigma3Class b = random_class();
    const Sigma3Class prod = sigma3_mul(a, b);
    ok = ok && dim(prod) == dim(a) * dim(b);
    ok = ok && dim(a + b) == dim(a) + dim(b);
    ok = ok && restrict_to_z2(prod) ==
                   z2_mul(restrict_to_z2(a), restrict_to_z2(b));
    ok = ok && restrict_to_z2(a + b) ==
                   restrict_to_z2(a) + restrict_to_z2(b);
  }
  return {ok, "torus powers, recurrence to b = 30, morphisms on 1000 pairs"};
}

Outcome check_rank2_oracle() {
  const auto t0 = Clock::now();
  bool ok = true;
  std::string counts;
  for (uint32_t p : {3u, 5u}) {
    const FieldSpec f = field_make(p, 1);
    for (unsigned r = 1; r <= 3; ++r) {
      const CountReport rep = count_sl2(r, f, CountPredicate::reducible());
      ok = ok && rep.matched;
      if (p == 3 && r == 2) {
        ok = ok && rep.raw_count == 168;  // pinned spot value
      }
    }
  }
  const double dt = seconds_since(t0);
  ok = ok && dt < 600.0;
  return {ok, "reducible tuples over F_3 and F_5 for r <= 3, " +
                  fmt_seconds(dt)};
}

Outcome check_rank3_classification() {
  const auto t0 = Clock::now();
  bool ok = true;
  const FieldSpec f4 = field_make(2, 2);
  for (int k = 0; k < 6; ++k) {
    const CountReport rep =
        count_sl3(1, f4, CountPredicate::conj_stratum(k));
    ok = ok && rep.matched;
    if (k == 3) ok = ok && rep.raw_count == 0;
  }
  const double dt4 = seconds_since(t0);
  ok = ok && dt4 < 60.0;

  const auto t1 = Clock::now();
  const FieldSpec f7 = field_make(7, 1);
  for (int k = 0; k < 6; ++k) {
    const CountReport rep =
        count_sl3(1, f7, CountPredicate::conj_stratum(k));
    ok = ok && rep.matched;
  }
  const double dt7 = seconds_since(t1);
  ok = ok && dt7 < 1800.0;
  return {ok, "all six conjugation strata match at q=4 (" + fmt_seconds(dt4) +
                  ") and q=7 (" + fmt_seconds(dt7) + "); the extra-unipotent "
                  "stratum is empty at q=4"};
}

Outcome check_rank3_pairs() {
  const FieldSpec f4 = field_make(2, 2);

  const auto t0 = Clock::now();
  const CountReport serial =
      count_sl3(2, f4, CountPredicate::reducible(), /*jobs=*/1);
  const double dt_serial = seconds_since(t0);

  const auto t1 = Clock::now();
  const CountReport parallel =
      count_sl3(2, f4, CountPredicate::reducible(), /*jobs=*/2);
  const double dt_parallel = seconds_since(t1);

  bool ok = serial.matched && parallel.matched;
  ok = ok && serial.raw_count == parallel.raw_count;
  ok = ok && BigInt(serial.raw_count) == eval_at_integer(sl3_r_red(2), BigInt(4));
  ok = ok && dt_serial < 3600.0;
  return {ok, "reducible pairs over F_4 = " + std::to_string(serial.raw_count) +
                  ", serial " + fmt_seconds(dt_serial) + " == 2-worker " +
                  fmt_seconds(dt_parallel) + " bit for bit"};
}

Outcome check_consistency_chain() {
  bool ok = true;
  const QPoly e2 = group_epoly({GroupFamily::SL, 2});
  const QPoly e3 = group_epoly({GroupFamily::SL, 3});
  for (unsigned long long r = 1; r <= 20; ++r) {
    ok = ok && pow(e2, r) == sl2_r_red(r) + e2 * sl2_m_irr(r);
    ok = ok && pow(e3, r) == sl3_r_red(r) + e3 * sl3_m_irr(r);
    // Every public polynomial must have integer coefficients.
    assert_integral(sl2_m(r));
    assert_integral(sl2_m_red(r));
    assert_integral(sl2_m_irr(r));
    assert_integral(sl2_r_red(r));
    assert_integral(pgl2_m(r));
    assert_integral(pgl2_r_red(r));
    assert_integral(sl3_m(r));
    assert_integral(sl3_m0(r));
    assert_integral(sl3_m1(r));
    assert_integral(sl3_m_red(r));
    assert_integral(sl3_m_irr(r));
    assert_integral(sl3_r_red(r));
    assert_integral(pgl3_m(r));
    assert_integral(pgl3_r_red(r));
    assert_integral(theorem_main(r));
  }
  ok = ok && sl3_r_red(1) == e3;
  return {ok, "tuple counts split into reducible plus irreducible, r <= 20"};
}

}  // namespace

int main() {
  criterion(1, "rank-3 group order polynomial and enumerated point count",
            check_group_orders);
  criterion(2, "conjugation strata sum to the group order",
            check_conjugation_strata);
  criterion(3, "rank-2 quotient count closed form", check_rank2_closed_form);
  criterion(4, "adjoint-form pipelines agree with special-linear ones",
            check_pgl_equals_sl);
  criterion(5, "assembled rank-3 quotient count equals the closed form",
            check_main_closed_form);
  criterion(6, "value at q=1 of the closed form", check_euler_values);
  criterion(7, "abelian-locus value discrepancy is surfaced",
            check_abelian_discrepancy);
  criterion(8, "equivariant engine identities", check_equivariant_engine);
  criterion(9, "rank-2 reducible-tuple counts match brute force",
            check_rank2_oracle);
  criterion(10, "rank-3 conjugation-class counts match brute force",
            check_rank3_classification);
  criterion(11, "rank-3 reducible-pair count matches brute force",
            check_rank3_pairs);
  criterion(12, "consistency chain and integrality of public polynomials",
            check_consistency_chain);

  if (failures == 0) {
    std::printf("acceptance: all 12 criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criterion(s) FAILED\n", failures);
  return 1;
}
