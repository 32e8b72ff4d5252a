#include <catch_amalgamated.hpp>

#include <random>

#include "charvar/repring.hpp"

using namespace charvar;

namespace {

QPoly P(const char* text) { return parse_qpoly(text); }

QPoly small_poly(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> n_terms(0, 3);
  std::uniform_int_distribution<int> exp_dist(0, 4);
  std::uniform_int_distribution<long long> coeff(-4, 4);
  QPoly out;
  const int n = n_terms(rng);
  for (int i = 0; i < n; ++i)
    out += QPoly::monomial(exp_dist(rng), Rational(coeff(rng)));
  return out;
}

Sigma3Class random_sigma3(std::mt19937_64& rng) {
  return {small_poly(rng), small_poly(rng), small_poly(rng)};
}

Z2Class random_z2(std::mt19937_64& rng) {
  return {small_poly(rng), small_poly(rng)};
}

const Sigma3Class kV{QPoly(), QPoly(), QPoly(1LL)};
const Sigma3Class kS{QPoly(), QPoly(1LL), QPoly()};

}  // namespace

TEST_CASE("three-letter product table", "[repring]") {
  CHECK(sigma3_mul(kV, kV) == Sigma3Class{QPoly(1LL), QPoly(1LL), QPoly(1LL)});
  CHECK(sigma3_mul(kS, kS) == sigma3_one());
  CHECK(sigma3_mul(kS, kV) == kV);
  const Sigma3Class x{P("q"), P("1"), P("q - 1")};
  CHECK(sigma3_mul(sigma3_one(), x) == x);
}

TEST_CASE("order-two product table", "[repring]") {
  const Z2Class n{QPoly(), QPoly(1LL)};
  CHECK(z2_mul(n, n) == z2_one());
  const Z2Class x{P("q^2"), P("-q")};
  CHECK(z2_mul(z2_one(), x) == x);
  CHECK(z2_mul(x, n) == Z2Class{P("-q"), P("q^2")});
}

TEST_CASE("powers agree with naive repeated multiplication", "[repring]") {
  std::mt19937_64 rng(77u);
  for (int trial = 0; trial < 20; ++trial) {
    const Sigma3Class a = random_sigma3(rng);
    Sigma3Class acc = sigma3_one();
    for (unsigned r = 0; r <= 6; ++r) {
      CHECK(sigma3_pow(a, r) == acc);
      acc = sigma3_mul(acc, a);
    }
    const Z2Class b = random_z2(rng);
    Z2Class bcc = z2_one();
    for (unsigned r = 0; r <= 6; ++r) {
      CHECK(z2_pow(b, r) == bcc);
      bcc = z2_mul(bcc, b);
    }
  }
}

TEST_CASE("standard representation powers", "[repring]") {
  CHECK(v_power(0) == sigma3_one());
  CHECK(v_power(1) == kV);
  CHECK(v_power(2) == Sigma3Class{P("1"), P("1"), P("1")});
  CHECK(v_power(3) == Sigma3Class{P("1"), P("1"), P("3")});

  // Recurrence and closed form agree out to b = 30.
  Sigma3Class acc = sigma3_one();
  for (unsigned b = 1; b <= 30; ++b) {
    acc = sigma3_mul(acc, kV);
    CHECK(v_power(b) == acc);
  }
}

TEST_CASE("equivariant torus power", "[repring]") {
  CHECK(equivariant_torus_power(1) ==
        Sigma3Class{P("q^2"), P("1"), P("-q")});

  // The closed-form coefficients match genuine powers of the r = 1 class.
  const Sigma3Class base = equivariant_torus_power(1);
  for (unsigned r = 1; r <= 15; ++r) {
    CHECK(equivariant_torus_power(r) == sigma3_pow(base, r));
  }

  CHECK_THROWS_AS(equivariant_torus_power(0), GuardExceeded);
  CHECK_THROWS_AS(equivariant_torus_power(65), GuardExceeded);
}

TEST_CASE("invariants, dimensions and restriction", "[repring]") {
  const Sigma3Class a{P("q^2"), P("1"), P("-q")};
  CHECK(invariant_part(a) == P("q^2"));
  CHECK(dim(a) == P("q^2 - 2*q + 1"));  // matches the split-torus count
  CHECK(restrict_to_z2(a) == Z2Class{P("q^2 - q"), P("1 - q")});
  CHECK(z2_invariant_part(restrict_to_z2(a)) == P("q^2 - q"));
  CHECK(dim(restrict_to_z2(a)) == dim(a));
}

TEST_CASE("restriction and dimension are ring morphisms", "[repring]") {
  std::mt19937_64 rng(20240818u);
  for (int trial = 0; trial < 300; ++trial) {
    const Sigma3Class a = random_sigma3(rng);
    const Sigma3Class b = random_sigma3(rng);

    CHECK(sigma3_mul(a, b) == sigma3_mul(b, a));
    CHECK(restrict_to_z2(sigma3_mul(a, b)) ==
          z2_mul(restrict_to_z2(a), restrict_to_z2(b)));
    CHECK(dim(sigma3_mul(a, b)) == dim(a) * dim(b));
    CHECK(restrict_to_z2(a + b) == restrict_to_z2(a) + restrict_to_z2(b));

    const Sigma3Class c = random_sigma3(rng);
    CHECK(sigma3_mul(sigma3_mul(a, b), c) == sigma3_mul(a, sigma3_mul(b, c)));
    CHECK(sigma3_mul(a, b + c) == sigma3_mul(a, b) + sigma3_mul(a, c));

    const Z2Class x = random_z2(rng);
    const Z2Class y = random_z2(rng);
    CHECK(z2_mul(x, y) == z2_mul(y, x));
    CHECK(dim(z2_mul(x, y)) == dim(x) * dim(y));
  }
}

TEST_CASE("class recovery from quotient counts", "[repring]") {
  // Punctured-line arrangement in the plane: total, half-quotient and full
  // quotient counts determine the class.
  const Sigma3Class b = sigma3_from_quotients(
      P("q^2 - 5*q + 10"), P("q^2 - 3*q + 5"), P("q^2 - q + 1"));
  CHECK(b == Sigma3Class{P("q^2 - q + 1"), P("1"), P("-2*q + 4")});

  const Sigma3Class c = sigma3_from_quotients(
      P("q^6 + 2*q^5 + 2*q^4 + q^3"), P("q^6 + q^5 + q^4"), P("q^6"));
  CHECK(c == Sigma3Class{P("q^6"), P("q^3"), P("q^5 + q^4")});

  // Round trip: the three quotient counts of any class recover it.
  std::mt19937_64 rng(5150u);
  for (int trial = 0; trial < 100; ++trial) {
    const Sigma3Class a = random_sigma3(rng);
    const QPoly total = dim(a);
    const QPoly mod_h = a.t + a.v;
    const QPoly mod_all = a.t;
    CHECK(sigma3_from_quotients(total, mod_h, mod_all) == a);
  }
}

TEST_CASE("class text round-trips", "[repring]") {
  const Sigma3Class a{P("q^2"), P("1"), P("-q")};
  CHECK(to_string(a) == "(q^2)T + (1)S + (-q)V");
  CHECK(parse_sigma3(to_string(a)) == a);

  const Z2Class b{P("q"), P("-1")};
  CHECK(to_string(b) == "(q)T + (-1)N");
  CHECK(parse_z2(to_string(b)) == b);

  std::mt19937_64 rng(31337u);
  for (int trial = 0; trial < 100; ++trial) {
    const Sigma3Class x = random_sigma3(rng);
    CHECK(parse_sigma3(to_string(x)) == x);
    const Z2Class y = random_z2(rng);
    CHECK(parse_z2(to_string(y)) == y);
  }

  CHECK_THROWS_AS(parse_sigma3("(q)T + (1)S"), ParseError);
  CHECK_THROWS_AS(parse_sigma3("(q)T + (1)S + (0)N"), ParseError);
  CHECK_THROWS_AS(parse_z2("(q)T + (1)N junk"), ParseError);
  CHECK_THROWS_AS(parse_z2("q T + 1 N"), ParseError);
}
