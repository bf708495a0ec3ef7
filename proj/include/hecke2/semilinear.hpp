#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "hecke2/common.hpp"
#include "hecke2/gf2poly.hpp"

namespace hecke2 {

struct ShapeViolation : Error {
  using Error::Error;
};
struct NotInMOdd : Error {
  using Error::Error;
};
struct TableTooSmall : Error {
  using Error::Error;
};

/// An element of Z/2[r] (the polynomial wrapped is read in the variable r).
struct PolyInR {
  Gf2Poly v;
  friend bool operator==(const PolyInR&, const PolyInR&) = default;
};

/// An element (r^2+r)*g(r^2) of M(odd), stored through its g-polynomial.
struct MOddElem {
  Gf2Poly g;
  friend bool operator==(const MOddElem&, const MOddElem&) = default;
};

/// Coordinates of an element of Z/2[r] over the Z/2[G]-basis 1,r,...,r^5.
/// Each entry is a polynomial in a formal variable standing for G.
struct GCoords {
  std::array<Gf2Poly, 6> a;
  friend bool operator==(const GCoords&, const GCoords&) = default;
};

namespace detail {

struct RingConstants {
  Gf2Poly F;  // r(r+1)^5 = r^6+r^5+r^2+r
  Gf2Poly G;  // r^5(r+1) = r^6+r^5
  std::array<Gf2Poly, 6> u_image;  // U on the basis 1,r,...,r^5

  RingConstants() {
    Gf2Poly r = Gf2Poly::monomial(1);
    Gf2Poly r1 = r + Gf2Poly::one();
    F = r * pow(r1, 5);
    G = pow(r, 5) * r1;
    Gf2Poly sum = F + G;
    if (sum != Gf2Poly::from_exponents({1, 2}))
      throw Error("ring constant check failed: F+G != r^2+r");
    if (pow(sum, 6) + F * G != Gf2Poly())
      throw Error("ring constant check failed: (F+G)^6+FG != 0");
    u_image[0] = Gf2Poly::one();
    u_image[1] = Gf2Poly::monomial(1);
    u_image[2] = Gf2Poly::monomial(2);
    u_image[3] = Gf2Poly::from_exponents({1, 2, 3});
    u_image[4] = Gf2Poly::monomial(4);
    u_image[5] = Gf2Poly::from_exponents({1, 4, 5});
  }
};

inline const RingConstants& ring() {
  static const RingConstants c;
  return c;
}

}  // namespace detail

inline const Gf2Poly& f_const() { return detail::ring().F; }
inline const Gf2Poly& g_const() { return detail::ring().G; }

/// Substitute the degree-6 element e (F or G) for the formal variable of q.
inline Gf2Poly eval_at(const Gf2Poly& q, const Gf2Poly& e) {
  Gf2Poly acc;
  for (long k = q.degree(); k >= 0; --k) {
    acc *= e;
    if (q.coeff(k)) acc += Gf2Poly::one();
  }
  if (q.degree() == Gf2Poly::kNegInfDegree) return {};
  return acc;
}

/// Inverse of eval_at for elements known to lie in Z/2[e] with e monic of
/// degree 6 (greedy top-degree elimination). Throws if p is not in Z/2[e].
inline Gf2Poly poly_in_powers_of(const Gf2Poly& p, const Gf2Poly& e, const char* what) {
  Gf2Poly cur = p, out;
  std::vector<Gf2Poly> powers{Gf2Poly::one()};
  while (!cur.is_zero()) {
    long d = cur.degree();
    if (d % 6 != 0) throw ShapeViolation(std::string("element is not a polynomial in ") + what);
    long k = d / 6;
    while (long(powers.size()) <= k) powers.push_back(powers.back() * e);
    out.flip_coeff(k);
    cur += powers[std::size_t(k)];
    if (!cur.is_zero() && cur.degree() >= d)
      throw ShapeViolation(std::string("element is not a polynomial in ") + what);
  }
  return out;
}

/// G-adic expansion of f: f = sum a_i(G) r^i, found by top-down rewriting
/// r^m -> r^{m-1} + G r^{m-6} (one Euclidean division by G per G-level).
inline GCoords g_basis_decompose(const PolyInR& f) {
  GCoords out;
  Gf2Poly cur = f.v;
  long level = 0;
  while (!cur.is_zero()) {
    PolyDivMod d = divmod(cur, g_const());
    for (int i = 0; i < 6; ++i)
      if (d.rem.coeff(i)) out.a[std::size_t(i)].flip_coeff(level);
    cur = std::move(d.quot);
    ++level;
  }
  return out;
}

inline PolyInR recompose(const GCoords& c) {
  Gf2Poly acc;
  for (int i = 0; i < 6; ++i) acc += eval_at(c.a[std::size_t(i)], g_const()) << i;
  return PolyInR{std::move(acc)};
}

/// The semi-linear operator U: decompose over the Z/2[G]-basis, replace G by
/// F in the coordinates, and apply U's basis images.
inline PolyInR apply_u(const PolyInR& f) {
  GCoords c = g_basis_decompose(f);
  Gf2Poly acc;
  for (int i = 0; i < 6; ++i) {
    if (c.a[std::size_t(i)].is_zero()) continue;
    acc += eval_at(c.a[std::size_t(i)], f_const()) * detail::ring().u_image[std::size_t(i)];
  }
  return PolyInR{std::move(acc)};
}

/// (r^2+r)*g(r^2) from its g-polynomial: bit e becomes the pair 2e+1, 2e+2.
inline PolyInR modd_from_g(const Gf2Poly& g) {
  Gf2Poly sq = compose_square(g);
  return PolyInR{(sq << 2) + (sq << 1)};
}

inline PolyInR modd_from_g(const MOddElem& m) { return modd_from_g(m.g); }

/// Inverse of modd_from_g; throws NotInMOdd when f is not of the required
/// shape (every exponent pair 2e+1, 2e+2 present together and nothing else).
inline Gf2Poly modd_to_g(const PolyInR& f) {
  Gf2Poly g;
  if (f.v.coeff(0)) throw NotInMOdd("constant term present");
  long d = f.v.degree();
  for (long e = 0; 2 * e + 1 <= d; ++e) {
    bool odd = f.v.coeff(2 * e + 1);
    bool even = f.v.coeff(2 * e + 2);
    if (odd != even) throw NotInMOdd("unpaired exponent at " + std::to_string(2 * e + 1 + (odd ? 0 : 1)));
    if (odd) g.flip_coeff(e);
  }
  return g;
}

/// C_n computed by applying U+I to (r^2+r)r^{2n} and reading off the
/// g-polynomial.
/// ShapeViolation here would falsify the stability of M(odd) under U.
inline Gf2Poly u_plus_i_on_modd(long n) {
  PolyInR basis{Gf2Poly::from_exponents({2 * n + 1, 2 * n + 2})};
  PolyInR img = apply_u(basis);
  img.v += basis.v;
  try {
    return modd_to_g(img);
  } catch (const NotInMOdd& e) {
    throw ShapeViolation(std::string("(U+I) image left M(odd) at n=") + std::to_string(n) + ": " + e.what());
  }
}

/// T(F^n) table, built once from the base images of T on 1..F^5 and the
/// five-term recursion coming from (F+G)^6 + FG = 0, then shared read-only.
/// All entries are polynomials in the F-variable.
class TTable {
 public:
  explicit TTable(long nmax) : t_(std::size_t(nmax) + 1) {
    if (nmax < 5) t_.resize(6);
    // T kills 1..F^4 and sends F^5 to F.
    t_[5] = Gf2Poly::monomial(1);
    for (std::size_t n = 6; n < t_.size(); ++n)
      t_[n] = (t_[n - 2] << 2) + (t_[n - 4] << 4) + (t_[n - 6] << 6) + (t_[n - 5] << 1);
  }

  long max_n() const { return long(t_.size()) - 1; }

  const Gf2Poly& t_power(long n) const {
    if (n < 0 || n > max_n()) throw TableTooSmall("T table covers n <= " + std::to_string(max_n()));
    return t_[std::size_t(n)];
  }

  /// Linear extension: h is a polynomial in the F-variable.
  Gf2Poly apply(const Gf2Poly& h) const {
    Gf2Poly out;
    for (long n : h.support()) out += t_power(n);
    return out;
  }

 private:
  std::vector<Gf2Poly> t_;
};

/// T by its definition U + alpha, computed in Z/2[r] and converted back to
/// the F-variable. Independent of the TTable recursion; the two are
/// cross-checked in tests.
inline Gf2Poly apply_t_direct(const Gf2Poly& h_in_f) {
  Gf2Poly in_r = eval_at(h_in_f, f_const());
  Gf2Poly img = apply_u(PolyInR{in_r}).v + eval_at(h_in_f, g_const());
  return poly_in_powers_of(img, f_const(), "F");
}

}  // namespace hecke2
