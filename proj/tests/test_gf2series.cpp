#include <random>

#include <catch_amalgamated.hpp>

#include "hecke2/gf2series.hpp"

using namespace hecke2;

namespace {

Gf2Series random_series(std::mt19937_64& rng, long prec, long min_val = 0) {
  Gf2Series s(prec);
  for (long e = min_val; e < prec; ++e)
    if (rng() & 1) s.flip_coeff(e);
  return s;
}

}  // namespace

TEST_CASE("precision bookkeeping on add") {
  Gf2Series a = Gf2Series::from_exponents(10, {1, 3});
  Gf2Series b = Gf2Series::from_exponents(7, {1, 5});
  Gf2Series sum = a + b;
  CHECK(sum.precision() == 7);
  CHECK(sum == Gf2Series::from_exponents(7, {3, 5}));
  CHECK((a + a).is_zero());
}

TEST_CASE("hand-checked truncated product") {
  // (x+x^3)^2 = x^2+x^6; inputs known to precision 8, output to 9.
  Gf2Series a = Gf2Series::from_exponents(8, {1, 3});
  Gf2Series p = a * a;
  CHECK(p.precision() == 9);
  CHECK(p == Gf2Series::from_exponents(9, {2, 6}));
}

TEST_CASE("mul precision honors valuations") {
  Gf2Series a = Gf2Series::from_exponents(10, {2});   // val 2
  Gf2Series b = Gf2Series::from_exponents(6, {3});    // val 3
  CHECK((a * b).precision() == std::min(10 + 3, 6 + 2));
  Gf2Series z(5);                                      // zero to precision 5
  CHECK(z.valuation() == 5);
  CHECK((a * z).precision() == std::min({10 + 5, 5 + 2, 10 + 5}));
  CHECK((a * z).is_zero());
}

TEST_CASE("square doubles precision and exponents") {
  Gf2Series a = Gf2Series::from_exponents(6, {1, 4});
  Gf2Series sq = square(a);
  CHECK(sq.precision() == 12);
  CHECK(sq == Gf2Series::from_exponents(12, {2, 8}));
}

TEST_CASE("hand-checked exact division") {
  Gf2Series num = Gf2Series::from_exponents(9, {2, 6});
  Gf2Series den = Gf2Series::from_exponents(9, {1, 3});
  Gf2Series q = div_exact(num, den);
  CHECK(q.precision() == 8);
  CHECK(q == Gf2Series::from_exponents(8, {1, 3}));
}

TEST_CASE("division errors") {
  Gf2Series a = Gf2Series::from_exponents(10, {3});
  Gf2Series b = Gf2Series::from_exponents(10, {5});
  CHECK_THROWS_AS(div_exact(a, b), DivisionImpossible);
  CHECK_THROWS_AS(div_exact(a, Gf2Series(10)), DivisionImpossible);
}

TEST_CASE("div_exact inverts mul") {
  std::mt19937_64 rng(123);
  for (int it = 0; it < 300; ++it) {
    Gf2Series a = random_series(rng, 60);
    Gf2Series b = random_series(rng, 60);
    if (b.is_zero()) b.flip_coeff(7);
    if (b.valuation() > a.valuation()) std::swap(a, b);
    if (b.is_zero()) continue;
    Gf2Series prod = a * b;
    Gf2Series q = div_exact(prod, b);
    CHECK(q == a.truncated(q.precision()));
  }
}

TEST_CASE("series codec round-trip") {
  Gf2Series s = Gf2Series::from_exponents(30, {1, 9, 25});
  CHECK(format_series(s) == "{\"precision\":30,\"exponents\":[1,9,25]}");
  CHECK(parse_series(format_series(s)) == s);
  std::mt19937_64 rng(9);
  for (int it = 0; it < 100; ++it) {
    Gf2Series r = random_series(rng, 200);
    CHECK(parse_series(format_series(r)) == r);
  }
  CHECK_THROWS_AS(parse_series("{\"precision\":4,\"exponents\":[9]}"), MalformedInput);
  CHECK_THROWS_AS(parse_series("{\"exponents\":[1]}"), MalformedInput);
}

TEST_CASE("coefficients beyond precision are unreadable") {
  Gf2Series s(5);
  CHECK_THROWS_AS(s.coeff(5), Error);
  CHECK_THROWS_AS(s.flip_coeff(7), Error);
  CHECK_THROWS_AS(Gf2Series::from_exponents(5, {6}), MalformedInput);
}
