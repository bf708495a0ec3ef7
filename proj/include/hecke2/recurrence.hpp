#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "hecke2/common.hpp"
#include "hecke2/gf2linalg.hpp"
#include "hecke2/gf2poly.hpp"
#include "hecke2/semilinear.hpp"

namespace hecke2 {

struct TheoremViolated : Error {
  long n;
  TheoremViolated(long n_, const std::string& msg) : Error(msg), n(n_) {}
};
struct LemmaViolated : Error {
  long n, degree;
  LemmaViolated(long n_, long degree_, const std::string& msg) : Error(msg), n(n_), degree(degree_) {}
};
struct NotApplicable : Error {
  using Error::Error;
};
struct DimensionViolation : Error {
  using Error::Error;
};

/// The sequences C_n and A_n, filled by their six-step recurrences and
/// cross-checked against C_n = A_n + t^n.
struct SequenceTable {
  std::vector<Gf2Poly> C, A;
  long max_n() const { return long(C.size()) - 1; }
};

inline SequenceTable gen_sequences(long n_max) {
  if (n_max < 5) throw Error("gen_sequences requires a bound of at least 5");
  SequenceTable tab;
  tab.C.reserve(std::size_t(n_max) + 1);
  tab.A.reserve(std::size_t(n_max) + 1);
  tab.C = {Gf2Poly(),
           Gf2Poly::one(),
           Gf2Poly::one(),
           Gf2Poly::monomial(1),
           Gf2Poly::monomial(2),
           Gf2Poly::from_exponents({1, 2, 4})};
  tab.A = {Gf2Poly::one(),
           Gf2Poly::from_exponents({0, 1}),
           Gf2Poly::from_exponents({0, 2}),
           Gf2Poly::from_exponents({1, 3}),
           Gf2Poly::from_exponents({2, 4}),
           Gf2Poly::from_exponents({1, 2, 4, 5})};
  const Gf2Poly step = Gf2Poly::from_exponents({1, 2, 5, 6});
  const Gf2Poly tail = Gf2Poly::from_exponents({1, 2});
  for (long n = 6; n <= n_max; ++n) {
    std::size_t i = std::size_t(n);
    tab.C.push_back(tab.C[i - 1] + step * tab.C[i - 6] + (tail << (n - 6)));
    tab.A.push_back(tab.A[i - 1] + step * tab.A[i - 6]);
  }
  for (long n = 0; n <= n_max; ++n)
    if (tab.C[std::size_t(n)] != tab.A[std::size_t(n)] + Gf2Poly::monomial(n))
      throw Error("sequence cross-check C_n = A_n + t^n failed at n=" + std::to_string(n));
  return tab;
}

/// The Z/2-linear map phi taking t^k to C_k, extended over the support of g.
inline Gf2Poly phi(const Gf2Poly& g, const SequenceTable& tab) {
  if (g.degree() > tab.max_n())
    throw TableTooSmall("sequence table covers n <= " + std::to_string(tab.max_n()));
  Gf2Poly out;
  for (long k : g.support()) out += tab.C[std::size_t(k)];
  return out;
}

/// Echelonized basis of ker(phi): one g_n of degree n per n = 0,2 mod 6.
struct KernelBasis {
  enum class Norm { ReducedEchelon, Windowed };

  std::vector<Gf2Poly> g;  // ascending by degree
  long max_n = -1;         // covers every kernel degree <= max_n
  Norm normalization = Norm::ReducedEchelon;

  static bool is_kernel_degree(long n) { return n >= 0 && (n % 6 == 0 || n % 6 == 2); }

  static long degree_for_index(std::size_t i) { return 6 * long(i / 2) + (i % 2 ? 2 : 0); }

  static std::size_t index_for_degree(long n) {
    return 2 * std::size_t(n / 6) + (n % 6 == 2 ? 1 : 0);
  }

  /// Number of kernel degrees <= n.
  static long count_through(long n) {
    if (n < 0) return 0;
    return n / 6 + 1 + (n >= 2 ? (n - 2) / 6 + 1 : 0);
  }

  const Gf2Poly& at_degree(long n) const {
    if (!is_kernel_degree(n) || n > max_n)
      throw TableTooSmall("kernel basis has no element of degree " + std::to_string(n));
    return g[index_for_degree(n)];
  }
};

/// Streaming echelon reduction of C_0..C_N. Whenever C_n reduces to zero the
/// combination gives g_n = t^n + lower terms; the set of such n must be
/// exactly the n = 0,2 mod 6 (Theorem violation otherwise, reported with an
/// echelon-state hash as certificate). The returned family is in fully
/// reduced row-echelon form.
inline KernelBasis kernel_basis(const SequenceTable& tab, long n_max) {
  if (n_max > tab.max_n())
    throw TableTooSmall("sequence table covers n <= " + std::to_string(tab.max_n()));
  struct Pivot {
    Gf2Poly p, c;
    bool present = false;
  };
  std::vector<Pivot> piv(std::size_t(std::max<long>(n_max, 1)));
  KernelBasis kb;
  kb.max_n = n_max;
  kb.g.reserve(std::size_t(KernelBasis::count_through(n_max)));
  auto state_hash = [&piv]() {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (const auto& pv : piv)
      if (pv.present) h = wordops::fnv1a(pv.p.words(), h);
    return h;
  };
  for (long n = 0; n <= n_max; ++n) {
    Gf2Poly p = tab.C[std::size_t(n)];
    Gf2Poly c = Gf2Poly::monomial(n);
    while (!p.is_zero()) {
      Pivot& pv = piv[std::size_t(p.degree())];
      if (!pv.present) break;
      p += pv.p;
      c += pv.c;
    }
    bool dependent = p.is_zero();
    if (dependent != KernelBasis::is_kernel_degree(n))
      throw TheoremViolated(
          n, "C_" + std::to_string(n) + (dependent ? " is dependent" : " is independent") +
                 " against the n = 0,2 mod 6 law; echelon hash " + std::to_string(state_hash()));
    if (dependent) {
      // Full reduction against earlier kernel vectors' leading degrees.
      for (std::size_t i = kb.g.size(); i-- > 0;) {
        long d = KernelBasis::degree_for_index(i);
        if (c.coeff(d)) c += kb.g[i];
      }
      kb.g.push_back(std::move(c));
    } else {
      Pivot& pv = piv[std::size_t(p.degree())];
      pv.p = std::move(p);
      pv.c = std::move(c);
      pv.present = true;
    }
  }
  return kb;
}

/// The set S with C_n = sum of C_k, k in S (empty for C_0 = 0).
inline std::vector<long> express_c(long n, const KernelBasis& kb) {
  if (!KernelBasis::is_kernel_degree(n))
    throw NotApplicable("C_n is dependent only for n = 0,2 mod 6; got n=" + std::to_string(n));
  std::vector<long> s = kb.at_degree(n).support();
  s.pop_back();  // drop the leading t^n
  return s;
}

namespace detail {

struct WindowPattern {
  int width;
  std::array<bool, 6> set;  // offset j from the top: set[j] wanted at t^{n-j}
};

inline WindowPattern window_pattern(long n) {
  auto mk = [](int w, std::initializer_list<int> offs) {
    WindowPattern p{w, {}};
    for (int o : offs) p.set[std::size_t(o)] = true;
    return p;
  };
  switch (n % 12) {
    case 0:
      return mk(2, {});
    case 2:
      return mk(2, {1});
    case 8:
      return n % 24 == 8 ? mk(4, {}) : mk(4, {2});
    default:  // n % 12 == 6
      switch (n % 48) {
        case 6:
          return mk(6, {1, 2, 3, 4, 5});
        case 18:
          return mk(6, {1});
        case 30:
          return mk(6, {1, 2, 3});
        default:  // 42
          return mk(6, {1, 4, 5});
      }
  }
}

}  // namespace detail

/// Adjust each g_n by lower basis elements so its top window matches the
/// residue-class pattern of the n = 0,2 mod 6 normal form. A mismatch at a
/// non-pivot degree cannot be repaired and is reported as a LemmaViolated.
inline KernelBasis normalize_windows(const KernelBasis& in) {
  KernelBasis kb = in;
  kb.normalization = KernelBasis::Norm::Windowed;
  for (std::size_t i = 0; i < kb.g.size(); ++i) {
    long n = KernelBasis::degree_for_index(i);
    detail::WindowPattern pat = detail::window_pattern(n);
    for (int off = 1; off < pat.width; ++off) {
      long j = n - off;
      if (j < 0) break;
      bool want = pat.set[std::size_t(off)];
      if (kb.g[i].coeff(j) == want) continue;
      if (!KernelBasis::is_kernel_degree(j))
        throw LemmaViolated(n, j,
                            "window mismatch at non-pivot degree " + std::to_string(j) +
                                " in g_" + std::to_string(n) + ": " + format_poly(kb.g[i]));
      kb.g[i] += kb.g[KernelBasis::index_for_degree(j)];
    }
  }
  return kb;
}

/// Kernel of U+I on L* (g-degree <= 6m+5), with an optional comparison of
/// ker(U+I)^2 on L* versus its subspace L (the two must coincide).
struct KmReport {
  long dim = 0;
  std::vector<MOddElem> basis;
  bool squared_checked = false;
  long squared_dim_l_star = -1;
  long squared_dim_l = -1;
};

inline KmReport km_kernel(long m, const SequenceTable& tab, const KernelBasis& kb,
                          bool check_squared = true) {
  if (m < 0) throw Error("km_kernel requires m >= 0");
  long deg_cap = 6 * m + 5;
  if (kb.max_n < deg_cap) throw TableTooSmall("kernel basis does not cover degree 6m+5");
  KmReport rep;
  for (long n = 0; n <= deg_cap; ++n) {
    if (!KernelBasis::is_kernel_degree(n)) continue;
    const Gf2Poly& g = kb.at_degree(n);
    if (!phi(g, tab).is_zero())
      throw TheoremViolated(n, "stored kernel element fails phi at n=" + std::to_string(n));
    rep.basis.push_back(MOddElem{g});
    ++rep.dim;
  }
  if (rep.dim != 2 * m + 2)
    throw DimensionViolation("dim K_m = " + std::to_string(rep.dim) + " != 2m+2 at m=" +
                             std::to_string(m));
  if (!check_squared) return rep;

  auto squared_image_row = [&](const Gf2Poly& g) {
    PolyInR v = modd_from_g(g);
    PolyInR w1{apply_u(v).v + v.v};
    PolyInR w2{apply_u(w1).v + w1.v};
    Gf2Poly img = modd_to_g(w2);
    if (img.degree() > deg_cap)
      throw DimensionViolation("(U+I)^2 image left L* at input " + format_poly(g));
    return img.words();
  };
  std::vector<gf2::Vec> rows_star;
  for (long j = 0; j <= deg_cap; ++j) rows_star.push_back(squared_image_row(Gf2Poly::monomial(j)));
  rep.squared_dim_l_star = (deg_cap + 1) - gf2::rank(rows_star);

  static const std::array<Gf2Poly, 5> u_gens = {
      Gf2Poly::one(), Gf2Poly::monomial(1), Gf2Poly::monomial(2),
      Gf2Poly::from_exponents({3, 4}), Gf2Poly::from_exponents({3, 5})};
  const Gf2Poly g_sq = Gf2Poly::from_exponents({5, 6});  // g-side factor for G^2
  std::vector<gf2::Vec> rows_l;
  Gf2Poly shift = Gf2Poly::one();
  for (long k = 0; k <= m; ++k) {
    for (const Gf2Poly& u : u_gens) rows_l.push_back(squared_image_row(shift * u));
    shift *= g_sq;
  }
  rep.squared_dim_l = (5 * m + 5) - gf2::rank(rows_l);
  rep.squared_checked = true;
  if (rep.squared_dim_l != rep.squared_dim_l_star)
    throw DimensionViolation("ker(U+I)^2 differs on L (" + std::to_string(rep.squared_dim_l) +
                             ") vs L* (" + std::to_string(rep.squared_dim_l_star) + ") at m=" +
                             std::to_string(m));
  return rep;
}

}  // namespace hecke2
