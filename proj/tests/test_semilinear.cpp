#include <random>

#include <catch_amalgamated.hpp>

#include "hecke2/semilinear.hpp"

using namespace hecke2;

namespace {

Gf2Poly random_poly(std::mt19937_64& rng, long max_deg) {
  Gf2Poly p;
  std::uniform_int_distribution<long> deg(0, max_deg);
  long d = deg(rng);
  for (long e = 0; e <= d; ++e)
    if (rng() & 1) p.flip_coeff(e);
  return p;
}

PolyInR r_power(long e) { return PolyInR{Gf2Poly::monomial(e)}; }

}  // namespace

TEST_CASE("ring constants") {
  CHECK(f_const() == Gf2Poly::from_exponents({1, 2, 5, 6}));
  CHECK(g_const() == Gf2Poly::from_exponents({5, 6}));
  CHECK(f_const() + g_const() == Gf2Poly::from_exponents({1, 2}));
  CHECK(pow(f_const() + g_const(), 6) == f_const() * g_const());
}

TEST_CASE("G-basis decomposition of small powers") {
  GCoords c3 = g_basis_decompose(r_power(3));
  CHECK(c3.a[3] == Gf2Poly::one());
  for (int i : {0, 1, 2, 4, 5}) CHECK(c3.a[std::size_t(i)].is_zero());

  // r^6 = G + r^5
  GCoords c6 = g_basis_decompose(r_power(6));
  CHECK(c6.a[5] == Gf2Poly::one());
  CHECK(c6.a[0] == Gf2Poly::monomial(1));

  // r^8 = (r^2+r)G + r^6 = G r^2 + G r + (G + r^5)
  GCoords c8 = g_basis_decompose(r_power(8));
  CHECK(c8.a[5] == Gf2Poly::one());
  CHECK(c8.a[2] == Gf2Poly::monomial(1));
  CHECK(c8.a[1] == Gf2Poly::monomial(1));
  CHECK(c8.a[0] == Gf2Poly::monomial(1));
}

TEST_CASE("decompose-recompose round-trip") {
  std::mt19937_64 rng(7);
  for (int it = 0; it < 120; ++it) {
    PolyInR f{random_poly(rng, 900)};
    CHECK(recompose(g_basis_decompose(f)) == f);
  }
}

TEST_CASE("U on basis and named elements") {
  CHECK(apply_u(r_power(5)).v == Gf2Poly::from_exponents({1, 4, 5}));
  CHECK(apply_u(PolyInR{g_const()}).v == f_const());
  // U(r^4+r^3) = (r^2+r)(r^2+1)
  CHECK(apply_u(PolyInR{Gf2Poly::from_exponents({3, 4})}).v ==
        Gf2Poly::from_exponents({1, 2}) * Gf2Poly::from_exponents({0, 2}));
}

TEST_CASE("U is semi-linear: U(Gf) = F U(f)") {
  std::mt19937_64 rng(17);
  for (int it = 0; it < 60; ++it) {
    PolyInR f{random_poly(rng, 500)};
    CHECK(apply_u(PolyInR{g_const() * f.v}).v == f_const() * apply_u(f).v);
  }
}

TEST_CASE("U respects squares") {
  std::mt19937_64 rng(27);
  for (int it = 0; it < 60; ++it) {
    PolyInR f{random_poly(rng, 600)};
    CHECK(apply_u(PolyInR{square(f.v)}).v == square(apply_u(f).v));
  }
}

TEST_CASE("U on powers of F+G") {
  Gf2Poly s = f_const() + g_const();
  CHECK(apply_u(PolyInR{s}).v == s);
  CHECK(apply_u(PolyInR{pow(s, 3)}).v == pow(s, 3));
  CHECK(apply_u(PolyInR{pow(s, 5)}).v == pow(s, 5) + f_const());
}

TEST_CASE("U maps powers of F to powers of G") {
  for (long n = 0; n <= 4; ++n)
    CHECK(apply_u(PolyInR{pow(f_const(), n)}).v == pow(g_const(), n));
  CHECK(apply_u(PolyInR{pow(f_const(), 5)}).v == pow(g_const(), 5) + f_const());
}

TEST_CASE("M(odd) conversions") {
  CHECK(modd_from_g(Gf2Poly::one()).v == Gf2Poly::from_exponents({1, 2}));
  CHECK(modd_from_g(Gf2Poly::monomial(2)).v == g_const());
  // u_5 = (F+G)^4 G + (F+G) F G has g = t^5+t^3
  Gf2Poly s = f_const() + g_const();
  Gf2Poly u5 = pow(s, 4) * g_const() + s * f_const() * g_const();
  CHECK(modd_to_g(PolyInR{u5}) == Gf2Poly::from_exponents({3, 5}));
  CHECK_THROWS_AS(modd_to_g(PolyInR{Gf2Poly::monomial(3)}), NotInMOdd);
  CHECK_THROWS_AS(modd_to_g(PolyInR{Gf2Poly::one()}), NotInMOdd);
}

TEST_CASE("round-trip through M(odd) and stability under U") {
  std::mt19937_64 rng(37);
  for (int it = 0; it < 80; ++it) {
    Gf2Poly g = random_poly(rng, 300);
    PolyInR f = modd_from_g(g);
    CHECK(modd_to_g(f) == g);
    CHECK_NOTHROW(modd_to_g(apply_u(f)));  // U stabilizes M(odd)
  }
}

TEST_CASE("U+I on (r^2+r)r^2n gives the recurrence values") {
  CHECK(u_plus_i_on_modd(0).is_zero());
  CHECK(u_plus_i_on_modd(1) == Gf2Poly::one());
  CHECK(u_plus_i_on_modd(5) == Gf2Poly::from_exponents({1, 2, 4}));
}

TEST_CASE("T base cases and one recursion step") {
  TTable tt(40);
  for (long n = 0; n <= 4; ++n) CHECK(tt.t_power(n).is_zero());
  CHECK(tt.t_power(5) == Gf2Poly::monomial(1));
  CHECK(tt.t_power(7) == Gf2Poly::monomial(3));
  CHECK(tt.apply(Gf2Poly::monomial(2)).is_zero());
  CHECK_THROWS_AS(tt.t_power(41), TableTooSmall);
}

TEST_CASE("T table agrees with the direct U+alpha route") {
  TTable tt(60);
  for (long n = 0; n <= 60; ++n)
    CHECK(tt.t_power(n) == apply_t_direct(Gf2Poly::monomial(n)));
  std::mt19937_64 rng(47);
  for (int it = 0; it < 20; ++it) {
    Gf2Poly h = random_poly(rng, 60);
    CHECK(tt.apply(h) == apply_t_direct(h));
  }
}

TEST_CASE("T parity and degree law") {
  const long bound = 400;
  TTable tt(bound);
  for (long n = 0; n <= bound; ++n) {
    const Gf2Poly& t = tt.t_power(n);
    CHECK(t.degree() <= n - 4);
    for (long k : t.support()) CHECK((k - n) % 2 == 0);
  }
}

TEST_CASE("U^2+I on F^i G^k factors through T") {
  std::mt19937_64 rng(57);
  TTable tt(64);
  for (int it = 0; it < 40; ++it) {
    long i = long(rng() % 5);
    long k = long(rng() % 64);
    Gf2Poly x = pow(f_const(), i) * pow(g_const(), k);
    Gf2Poly lhs = apply_u(apply_u(PolyInR{x})).v + x;
    Gf2Poly rhs = pow(f_const(), i) * eval_at(tt.t_power(k), f_const());
    CHECK(lhs == rhs);
  }
}
