#include <catch_amalgamated.hpp>

#include "charvar/grpvar.hpp"

using namespace charvar;

namespace {
QPoly P(const char* text) { return parse_qpoly(text); }
}  // namespace

TEST_CASE("group counting polynomials", "[grpvar]") {
  CHECK(group_epoly({GroupFamily::SL, 2}) == P("q^3 - q"));
  CHECK(group_epoly({GroupFamily::SL, 3}) == P("q^8 - q^6 - q^5 + q^3"));
  CHECK(group_epoly({GroupFamily::GL, 2}) == P("q^4 - q^3 - q^2 + q"));
  CHECK(group_epoly({GroupFamily::GL, 1}) == P("q - 1"));
  CHECK(group_epoly({GroupFamily::SL, 1}) == P("1"));
  CHECK(group_epoly({GroupFamily::PGL, 1}) == P("1"));

  for (int n = 1; n <= 16; ++n) {
    const QPoly sl = group_epoly({GroupFamily::SL, n});
    const QPoly pgl = group_epoly({GroupFamily::PGL, n});
    const QPoly gl = group_epoly({GroupFamily::GL, n});
    CHECK(sl == pgl);
    CHECK(gl == (qvar() - QPoly(1LL)) * pgl);
  }

  CHECK_THROWS_AS(group_epoly({GroupFamily::SL, 0}), RankGuard);
  CHECK_THROWS_AS(group_epoly({GroupFamily::GL, 17}), RankGuard);
}

TEST_CASE("group counts match classical orders at small q", "[grpvar]") {
  CHECK(eval_at(group_epoly({GroupFamily::SL, 2}), Rational(3)) ==
        Rational(24));
  CHECK(eval_at(group_epoly({GroupFamily::SL, 2}), Rational(7)) ==
        Rational(336));
  CHECK(eval_at(group_epoly({GroupFamily::SL, 3}), Rational(4)) ==
        Rational(60480));
  CHECK(eval_at(group_epoly({GroupFamily::SL, 3}), Rational(7)) ==
        Rational(5630688));
  CHECK(eval_at(group_epoly({GroupFamily::GL, 2}), Rational(4)) ==
        Rational(180));
}

TEST_CASE("conjugacy-type pieces of the rank-three group", "[grpvar]") {
  const auto strata = sl3_conjugation_strata();
  REQUIRE(strata.size() == 6);

  CHECK(strata[0].id == "X0");
  CHECK(strata[0].epoly == P("3"));
  CHECK(strata[1].epoly == P("3*q^4 + 3*q^3 - 3*q - 3"));
  CHECK(strata[2].epoly == P("3*q^6 - 3*q^4 - 3*q^3 + 3*q"));
  CHECK(strata[3].epoly == P("q^5 - 3*q^4 - 3*q^3 - 4*q^2"));
  CHECK(strata[4].epoly == P("q^7 - 3*q^6 - 4*q^5 - q^4 + 3*q^3 + 4*q^2"));
  CHECK(strata[5].epoly == P("q^8 - q^7 - q^6 + 2*q^5 + 4*q^4 + q^3"));

  for (const auto& s : strata) {
    CHECK_NOTHROW(assert_integral(s.epoly));
    CHECK(!s.description.empty());
    // Values the point-count comparisons rely on must be non-negative.
    CHECK(eval_at(s.epoly, Rational(4)) >= 0);
    CHECK(eval_at(s.epoly, Rational(7)) >= 0);
  }
  // The two-eigenvalue pieces vanish identically at q = 4.
  CHECK(eval_at(strata[3].epoly, Rational(4)) == 0);
  CHECK(eval_at(strata[4].epoly, Rational(4)) == 0);
}

TEST_CASE("conjugacy pieces cover the whole group", "[grpvar]") {
  CHECK(sl3_conjugation_sum_check() == group_epoly({GroupFamily::SL, 3}));
  CHECK(eval_at(sl3_conjugation_sum_check(), Rational(1)) == Rational(0));
  CHECK(eval_at(sl3_conjugation_sum_check(), Rational(4)) == Rational(60480));
}

TEST_CASE("frozen piece values at the oracle fields", "[grpvar]") {
  const auto strata = sl3_conjugation_strata();
  const long long at4[6] = {3, 945, 11340, 0, 0, 48192};
  const long long at7[6] = {3, 8208, 344736, 8379, 402192, 4867170};
  for (int i = 0; i < 6; ++i) {
    CHECK(eval_at(strata[i].epoly, Rational(4)) == Rational(at4[i]));
    CHECK(eval_at(strata[i].epoly, Rational(7)) == Rational(at7[i]));
  }
}

TEST_CASE("one-generator character variety of rank three", "[grpvar]") {
  CHECK(m_1_3() == P("q^2"));
  CHECK(eval_at(m_1_3(), Rational(1)) == Rational(1));
}
