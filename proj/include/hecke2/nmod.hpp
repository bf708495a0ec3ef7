#pragma once

#include <algorithm>
#include <array>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "hecke2/common.hpp"
#include "hecke2/gf2poly.hpp"
#include "hecke2/recurrence.hpp"
#include "hecke2/semilinear.hpp"

namespace hecke2 {

struct BadIndex : Error {
  using Error::Error;
};
struct NotInN2 : Error {
  using Error::Error;
};
struct ProjectionMismatch : Error {
  long n;
  ProjectionMismatch(long n_, const std::string& msg) : Error(msg), n(n_) {}
};

/// Coordinates over the Z/2[G^2]-basis u_0,u_1,u_2,u_4,u_5 of N2. Entry
/// slots follow that order; each entry is a polynomial in a formal variable
/// standing for G^2.
struct N2Coords {
  static constexpr std::array<int, 5> kGenerator = {0, 1, 2, 4, 5};
  std::array<Gf2Poly, 5> coeff;
  friend bool operator==(const N2Coords&, const N2Coords&) = default;
};

/// A sum of basis elements J_k of N2/N1, stored as the set of indices k
/// (all positive and coprime to 10). Addition is symmetric difference.
class JVector {
 public:
  static bool valid_index(long k) { return k > 0 && std::gcd(k, 10l) == 1; }

  void toggle(long k) {
    if (!valid_index(k)) throw BadIndex("J-index must be positive and coprime to 10");
    auto it = std::lower_bound(ks_.begin(), ks_.end(), k);
    if (it != ks_.end() && *it == k)
      ks_.erase(it);
    else
      ks_.insert(it, k);
  }

  bool contains(long k) const { return std::binary_search(ks_.begin(), ks_.end(), k); }
  bool empty() const { return ks_.empty(); }
  long max_index() const { return ks_.empty() ? 0 : ks_.back(); }
  const std::vector<long>& indices() const { return ks_; }

  friend JVector operator+(const JVector& a, const JVector& b) {
    JVector out;
    std::set_symmetric_difference(a.ks_.begin(), a.ks_.end(), b.ks_.begin(), b.ks_.end(),
                                  std::back_inserter(out.ks_));
    return out;
  }
  JVector& operator+=(const JVector& o) {
    *this = *this + o;
    return *this;
  }
  friend bool operator==(const JVector&, const JVector&) = default;

 private:
  std::vector<long> ks_;
};

/// The mod 20 character: +1 on 1,3,7,9 and -1 on 11,13,17,19.
inline int chi(long k) {
  if (std::gcd(k, 10l) != 1) throw BadIndex("chi is defined only for k coprime to 10");
  long r = ((k % 20) + 20) % 20;
  return (r == 1 || r == 3 || r == 7 || r == 9) ? 1 : -1;
}

namespace detail {

struct NmodConstants {
  std::array<Gf2Poly, 5> u;        // u_0,u_1,u_2,u_4,u_5 in r
  std::array<Gf2Poly, 5> u_g;      // their g-polynomials
  std::array<Gf2Poly, 4> j_base;   // J_1, J_3, J_7, J_9 in r
  Gf2Poly g_squared;               // G^2 in r
  // Images of u_0,u_1,u_2,u_4,u_5 in N2/N1 over the J-basis.
  std::array<std::vector<long>, 5> j_of_u = {{{1}, {3, 7}, {}, {7}, {7, 9, 11}}};

  NmodConstants() {
    const Gf2Poly& F = f_const();
    const Gf2Poly& G = g_const();
    Gf2Poly s = F + G;
    u[0] = s;
    u[1] = pow(s, 3) + G;
    u[2] = G;
    u[3] = square(s) * G;
    u[4] = pow(s, 4) * G + s * F * G;
    u_g = {Gf2Poly::one(), Gf2Poly::monomial(1), Gf2Poly::monomial(2),
           Gf2Poly::from_exponents({3, 4}), Gf2Poly::from_exponents({3, 5})};
    for (int i = 0; i < 5; ++i)
      if (modd_from_g(u_g[std::size_t(i)]).v != u[std::size_t(i)])
        throw Error("u generator check against its g-polynomial failed");
    // J_3 = F^8/G is the exact polynomial quotient (r^3 (r+1)^39).
    j_base[0] = F;
    j_base[1] = div_exact(pow(F, 8), G);
    j_base[2] = square(F) * G;
    j_base[3] = pow(F, 4) * G;
    g_squared = square(G);
  }
};

inline const NmodConstants& nmod() {
  static const NmodConstants c;
  return c;
}

}  // namespace detail

inline const Gf2Poly& u_generator(int slot) { return detail::nmod().u[std::size_t(slot)]; }
inline const Gf2Poly& u_generator_g(int slot) { return detail::nmod().u_g[std::size_t(slot)]; }

/// Membership-with-coordinates for the rank-5 free Z/2[G^2]-module N2. The
/// generators u_i G^{2n} have pairwise distinct degrees ({2,4,6,10,12}+12n),
/// so greedy leading-term elimination decides membership.
inline N2Coords n2_decompose(const PolyInR& f) {
  const auto& c = detail::nmod();
  N2Coords out;
  Gf2Poly cur = f.v;
  std::vector<Gf2Poly> g2pow{Gf2Poly::one()};
  while (!cur.is_zero()) {
    long d = cur.degree();
    int slot;
    long n;
    switch (d % 12) {
      case 2: slot = 0; n = (d - 2) / 12; break;
      case 4: slot = 1; n = (d - 4) / 12; break;
      case 6: slot = 2; n = (d - 6) / 12; break;
      case 10: slot = 3; n = (d - 10) / 12; break;
      case 0: slot = 4; n = d / 12 - 1; break;
      default:
        throw NotInN2("leading degree " + std::to_string(d) + " matches no generator");
    }
    if (n < 0) throw NotInN2("leading degree " + std::to_string(d) + " matches no generator");
    while (long(g2pow.size()) <= n) g2pow.push_back(g2pow.back() * c.g_squared);
    cur += c.u[std::size_t(slot)] * g2pow[std::size_t(n)];
    out.coeff[std::size_t(slot)].flip_coeff(n);
  }
  return out;
}

inline PolyInR n2_recompose(const N2Coords& coords) {
  const auto& c = detail::nmod();
  Gf2Poly acc;
  for (int slot = 0; slot < 5; ++slot)
    for (long n : coords.coeff[std::size_t(slot)].support())
      acc += c.u[std::size_t(slot)] * pow(c.g_squared, n);
  return PolyInR{std::move(acc)};
}

/// The image of f in N2/N1 over the J-basis (u_2 = G generates N1 and
/// contributes nothing; G^{2n} shifts every J-index by 10n).
inline JVector j_image(const PolyInR& f) {
  N2Coords coords = n2_decompose(f);
  const auto& c = detail::nmod();
  JVector out;
  for (int slot = 0; slot < 5; ++slot)
    for (long n : coords.coeff[std::size_t(slot)].support())
      for (long base : c.j_of_u[std::size_t(slot)]) out.toggle(base + 10 * n);
  return out;
}

/// Explicit polynomial representative of J_k.
inline PolyInR j_element(long k) {
  if (!JVector::valid_index(k)) throw BadIndex("J-index must be positive and coprime to 10");
  const auto& c = detail::nmod();
  long base = k % 10;  // 1, 3, 7 or 9
  int which = base == 1 ? 0 : base == 3 ? 1 : base == 7 ? 2 : 3;
  return PolyInR{c.j_base[std::size_t(which)] * pow(c.g_squared, (k - base) / 10)};
}

inline JVector project_a(const JVector& v) {
  JVector out;
  for (long k : v.indices())
    if (chi(k) == 1) out.toggle(k);
  return out;
}

inline JVector project_b(const JVector& v) {
  JVector out;
  for (long k : v.indices())
    if (chi(k) == -1) out.toggle(k);
  return out;
}

/// One verified row of the K -> N2a leading-term law.
struct ProjectionRow {
  long n = 0;
  long leading = 0;          // observed (and required) leading J-index
  std::vector<long> remainder;  // indices below the leading one
};

/// Check the four image laws for f_{12m}, f_{12m+2}, f_{12m+6}, f_{12m+8}:
/// leading J-index exactly as stated, remainder bounded by the stated O*.
inline std::vector<ProjectionRow> verify_projection(long m, const KernelBasis& kb) {
  if (kb.normalization != KernelBasis::Norm::Windowed)
    throw Error("verify_projection requires the window-normalized basis");
  struct Law {
    long n, lead, bound;
  };
  const Law laws[4] = {{12 * m, 20 * m + 1, 20 * m - 11},
                       {12 * m + 2, 20 * m + 7, 20 * m + 3},
                       {12 * m + 6, 20 * m + 3, 20 * m + 1},
                       {12 * m + 8, 20 * m + 9, 20 * m + 7}};
  std::vector<ProjectionRow> rows;
  for (const Law& law : laws) {
    PolyInR f = modd_from_g(kb.at_degree(law.n));
    JVector va = project_a(j_image(f));
    ProjectionRow row;
    row.n = law.n;
    row.leading = va.max_index();
    for (long k : va.indices())
      if (k != va.max_index()) row.remainder.push_back(k);
    if (va.empty() || va.max_index() != law.lead)
      throw ProjectionMismatch(law.n, "f_" + std::to_string(law.n) + " has leading J-index " +
                                          std::to_string(va.max_index()) + ", expected " +
                                          std::to_string(law.lead) + "; image " +
                                          format_exponents(va.indices()));
    for (long k : row.remainder)
      if (k > law.bound)
        throw ProjectionMismatch(law.n, "f_" + std::to_string(law.n) + " remainder index " +
                                            std::to_string(k) + " exceeds O*(J_" +
                                            std::to_string(law.bound) + "); image " +
                                            format_exponents(va.indices()));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace hecke2
