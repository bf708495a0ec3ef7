#include <random>
#include <vector>

#include <catch_amalgamated.hpp>

#include "hecke2/gf2poly.hpp"

using namespace hecke2;

namespace {

// Reference multiplication by plain coefficient convolution, independent of
// the word-packed path.
Gf2Poly naive_mul(const Gf2Poly& a, const Gf2Poly& b) {
  Gf2Poly out;
  for (long i : a.support())
    for (long j : b.support()) out.flip_coeff(i + j);
  return out;
}

Gf2Poly random_poly(std::mt19937_64& rng, long max_deg) {
  std::uniform_int_distribution<long> deg(0, max_deg);
  long d = deg(rng);
  Gf2Poly p;
  for (long e = 0; e <= d; ++e)
    if (rng() & 1) p.flip_coeff(e);
  return p;
}

}  // namespace

TEST_CASE("degree and zero sentinel") {
  Gf2Poly z;
  CHECK(z.is_zero());
  CHECK(z.degree() == Gf2Poly::kNegInfDegree);
  CHECK(Gf2Poly::one().degree() == 0);
  CHECK(Gf2Poly::monomial(77).degree() == 77);
  Gf2Poly p = Gf2Poly::from_exponents({3, 100});
  p.flip_coeff(100);
  CHECK(p.degree() == 3);
}

TEST_CASE("addition is characteristic 2") {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 50; ++it) {
    Gf2Poly g = random_poly(rng, 500);
    CHECK((g + g).is_zero());
  }
}

TEST_CASE("hand-checked products") {
  // (t^2+t)(t+1) = t^3+t over GF(2)
  CHECK(Gf2Poly::from_exponents({1, 2}) * Gf2Poly::from_exponents({0, 1}) ==
        Gf2Poly::from_exponents({1, 3}));
  CHECK(square(Gf2Poly::from_exponents({0, 1})) == Gf2Poly::from_exponents({0, 2}));
}

TEST_CASE("compose_square doubles exponents") {
  CHECK(compose_square(Gf2Poly::one()) == Gf2Poly::one());
  CHECK(compose_square(Gf2Poly::from_exponents({0, 1})) == Gf2Poly::from_exponents({0, 2}));
  CHECK(compose_square(Gf2Poly::from_exponents({1, 2, 4})) == Gf2Poly::from_exponents({2, 4, 8}));
}

TEST_CASE("square equals self-product equals compose_square") {
  std::mt19937_64 rng(22);
  for (int it = 0; it < 200; ++it) {
    Gf2Poly a = random_poly(rng, it < 150 ? 300 : 2500);
    Gf2Poly sq = square(a);
    CHECK(sq == a * a);
    CHECK(sq == compose_square(a));
  }
}

TEST_CASE("Frobenius additivity") {
  std::mt19937_64 rng(33);
  for (int it = 0; it < 100; ++it) {
    Gf2Poly a = random_poly(rng, 400), b = random_poly(rng, 400);
    CHECK(square(a + b) == square(a) + square(b));
  }
}

TEST_CASE("multiplication against the naive oracle, across the karatsuba cutoff") {
  std::mt19937_64 rng(44);
  for (long max_deg : {40l, 500l, 2200l, 4500l}) {
    for (int it = 0; it < 6; ++it) {
      Gf2Poly a = random_poly(rng, max_deg), b = random_poly(rng, max_deg);
      CHECK(a * b == naive_mul(a, b));
    }
  }
}

TEST_CASE("multiplication ring laws") {
  std::mt19937_64 rng(55);
  Gf2Poly a = random_poly(rng, 700), b = random_poly(rng, 700), c = random_poly(rng, 700);
  CHECK(a * b == b * a);
  CHECK((a * b) * c == a * (b * c));
  CHECK(a * (b + c) == a * b + a * c);
  CHECK(a * Gf2Poly::one() == a);
  CHECK((a * Gf2Poly()).is_zero());
}

TEST_CASE("divmod round-trips") {
  std::mt19937_64 rng(66);
  for (int it = 0; it < 200; ++it) {
    Gf2Poly a = random_poly(rng, 600);
    Gf2Poly b = random_poly(rng, 120);
    if (b.is_zero()) b = Gf2Poly::one();
    PolyDivMod d = divmod(a, b);
    CHECK(d.quot * b + d.rem == a);
    CHECK(d.rem.degree() < b.degree());
  }
  CHECK_THROWS_AS(divmod(Gf2Poly::one(), Gf2Poly()), DivisionImpossible);
  CHECK_THROWS_AS(div_exact(Gf2Poly::from_exponents({0, 1}), Gf2Poly::from_exponents({1, 2})),
                  DivisionImpossible);
}

TEST_CASE("shift is multiplication by a monomial") {
  Gf2Poly a = Gf2Poly::from_exponents({0, 3, 5});
  CHECK((a << 4) == a * Gf2Poly::monomial(4));
  CHECK((Gf2Poly() << 9).is_zero());
}

TEST_CASE("codec formats canonical ascending lists") {
  CHECK(format_poly(Gf2Poly::from_exponents({1, 2, 4})) == "[1,2,4]");
  CHECK(format_poly(Gf2Poly()) == "[]");
  CHECK(parse_poly("[]").is_zero());
  CHECK(parse_poly("[0,5]") == Gf2Poly::from_exponents({0, 5}));
  CHECK(parse_poly("[1, 2, 4]") == Gf2Poly::from_exponents({1, 2, 4}));
}

TEST_CASE("codec rejects malformed input") {
  CHECK_THROWS_AS(parse_poly("[2,1]"), MalformedInput);
  CHECK_THROWS_AS(parse_poly("[3,3]"), MalformedInput);
  CHECK_THROWS_AS(parse_poly("[-1]"), MalformedInput);
  CHECK_THROWS_AS(parse_poly("[1,2"), MalformedInput);
  CHECK_THROWS_AS(parse_poly("1,2]"), MalformedInput);
  CHECK_THROWS_AS(parse_poly("[1,2] junk"), MalformedInput);
}

TEST_CASE("parse-format identity on 1000 random polynomials") {
  std::mt19937_64 rng(77);
  for (int it = 0; it < 1000; ++it) {
    Gf2Poly p = random_poly(rng, 2000);
    CHECK(parse_poly(format_poly(p)) == p);
  }
}

TEST_CASE("pow matches repeated multiplication") {
  Gf2Poly b = Gf2Poly::from_exponents({0, 1, 3});
  Gf2Poly acc = Gf2Poly::one();
  for (long e = 0; e <= 9; ++e) {
    CHECK(pow(b, e) == acc);
    acc *= b;
  }
}
