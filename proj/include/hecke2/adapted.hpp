#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "hecke2/common.hpp"
#include "hecke2/gf2linalg.hpp"
#include "hecke2/gf2poly.hpp"
#include "hecke2/gf2series.hpp"
#include "hecke2/modforms.hpp"
#include "hecke2/nmod.hpp"
#include "hecke2/recurrence.hpp"
#include "hecke2/semilinear.hpp"

namespace hecke2 {

struct MembershipFailure : Error {
  long n;
  MembershipFailure(long n_, const std::string& msg) : Error(msg), n(n_) {}
};
struct ClosureFailure : Error {
  long n;
  ClosureFailure(long n_, const std::string& msg) : Error(msg), n(n_) {}
};
struct NoSolution : Error {
  int i, j;
  NoSolution(int i_, int j_, const std::string& msg) : Error(msg), i(i_), j(j_) {}
};
struct NotMultiplication : Error {
  long p;
  NotMultiplication(long p_, const std::string& msg) : Error(msg), p(p_) {}
};
struct EquivarianceFailure : Error {
  long n, q;
  EquivarianceFailure(long n_, long q_, const std::string& msg) : Error(msg), n(n_), q(q_) {}
};

/// The basis f_n of K at finite level: each element kept both as its
/// g-polynomial and as a series at the policy precision, with U_5-fixedness
/// asserted per element. The reconstruction table reaches beyond the top
/// basis degree so that an operator image escaping the span is detected
/// rather than silently truncated.
class KBasis {
 public:
  KBasis(const KernelBasis& kb, long n_max, const PrecisionPolicy& policy)
      : max_n_(n_max), modd_(policy.dmax, policy.precision()) {
    if (policy.dmax < n_max) throw Error("policy dmax must cover the basis degrees");
    if (kb.max_n < n_max) throw TableTooSmall("kernel basis does not reach the requested bound");
    for (long n = 0; n <= n_max; ++n) {
      if (!KernelBasis::is_kernel_degree(n)) continue;
      const Gf2Poly& g = kb.at_degree(n);
      Gf2Series s(policy.precision());
      for (long e : g.support()) s += modd_.row(e);
      Gf2Series fixed = u5(s);
      if (fixed != s.truncated(fixed.precision()))
        throw MembershipFailure(n, "f_" + std::to_string(n) + " is not fixed by U_5");
      degrees_.push_back(n);
      g_.push_back(g);
      series_.push_back(std::move(s));
    }
  }

  std::size_t size() const { return degrees_.size(); }
  long max_n() const { return max_n_; }
  long precision() const { return modd_.precision(); }
  long degree_at(std::size_t idx) const { return degrees_[idx]; }
  const Gf2Poly& g_at(std::size_t idx) const { return g_[idx]; }
  const Gf2Series& series_at(std::size_t idx) const { return series_[idx]; }
  const MOddSeriesBasis& modd_basis() const { return modd_; }

  long index_of_degree(long n) const {
    if (!KernelBasis::is_kernel_degree(n) || n > max_n_) return -1;
    return long(KernelBasis::index_for_degree(n));
  }

  /// g-polynomial of the combination given by a coordinate bitvector.
  Gf2Poly combine_g(const gf2::Vec& coords) const {
    Gf2Poly out;
    for (std::size_t i = 0; i < size(); ++i)
      if (wordops::get_bit(coords, long(i))) out += g_[i];
    return out;
  }

 private:
  long max_n_;
  MOddSeriesBasis modd_;
  std::vector<long> degrees_;
  std::vector<Gf2Poly> g_;
  std::vector<Gf2Series> series_;
};

/// T_p over the KBasis coordinates: column n holds the coordinates of
/// T_p(f_n). max_output_degree is the closure certificate.
struct OperatorMatrix {
  long p = 0;
  std::size_t dim = 0;
  std::vector<gf2::Vec> cols;
  long max_output_degree = -1;

  gf2::Vec apply(const gf2::Vec& x) const {
    gf2::Vec out;
    for (std::size_t j = 0; j < dim; ++j)
      if (wordops::get_bit(x, long(j))) wordops::xor_into(out, cols[j]);
    wordops::trim(out);
    return out;
  }
};

/// Apply T_p to every basis series, reconstruct the image g-polynomial, and
/// re-express it over the basis by its (strictly decreasing) leading degrees.
/// An image outside the span means the basis bound is too small.
inline OperatorMatrix t_matrix(long p, const KBasis& basis) {
  OperatorMatrix mat;
  mat.p = p;
  mat.dim = basis.size();
  mat.cols.resize(basis.size());
  for (std::size_t idx = 0; idx < basis.size(); ++idx) {
    long src = basis.degree_at(idx);
    Gf2Series img = hecke_tp(basis.series_at(idx), p);
    Gf2Poly g;
    try {
      g = poly_of_series(img, basis.modd_basis());
    } catch (const NotInMOddSpan& e) {
      throw ClosureFailure(src, "T_" + std::to_string(p) + "(f_" + std::to_string(src) +
                                    ") left M(odd) reconstruction: " + e.what());
    }
    gf2::Vec col;
    while (!g.is_zero()) {
      long d = g.degree();
      long j = basis.index_of_degree(d);
      if (j < 0)
        throw ClosureFailure(src, "T_" + std::to_string(p) + "(f_" + std::to_string(src) +
                                      ") has component of degree " + std::to_string(d) +
                                      " outside the basis span");
      wordops::flip_bit(col, j);
      g += basis.g_at(std::size_t(j));
      mat.max_output_degree = std::max(mat.max_output_degree, d);
    }
    mat.cols[idx] = std::move(col);
  }
  return mat;
}

/// The adapted grid m_{i,j}, i+j <= depth, as coordinate vectors over a
/// KBasis. Cells are stored diagonal-major: index of (i,j) is
/// (i+j)(i+j+1)/2 + i.
struct AdaptedBasis {
  int depth = 0;
  std::size_t dim = 0;
  std::vector<gf2::Vec> cell;

  static std::size_t cell_index(int i, int j) {
    int s = i + j;
    return std::size_t(s) * (std::size_t(s) + 1) / 2 + std::size_t(i);
  }
  static std::size_t cell_count(int depth) {
    return std::size_t(depth + 1) * std::size_t(depth + 2) / 2;
  }
  const gf2::Vec& at(int i, int j) const { return cell[cell_index(i, j)]; }
};

/// Solve the joint shift system T_3 m_{i,j} = m_{i-1,j} (or 0) and
/// T_7 m_{i,j} = m_{i,j-1} (or 0) cell by cell in diagonal order. Among the
/// affine solution set the representative minimizing the largest set
/// coordinate (ties: cleared at every eliminable position) is chosen, which
/// makes builds reproducible. Grid independence is verified as cells are
/// added.
inline AdaptedBasis build_adapted(int depth, const KBasis& basis, const OperatorMatrix& m3,
                                  const OperatorMatrix& m7) {
  if (m3.p != 3 || m7.p != 7) throw Error("build_adapted expects the T_3 and T_7 matrices");
  if (m3.dim != basis.size() || m7.dim != basis.size())
    throw Error("operator matrices do not match the basis");
  const std::size_t dim = basis.size();
  AdaptedBasis ab;
  ab.depth = depth;
  ab.dim = dim;
  ab.cell.resize(AdaptedBasis::cell_count(depth));

  // Stacked columns [M3; M7] for the joint solve.
  std::vector<gf2::Vec> stacked(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    gf2::Vec v = m3.cols[j];
    v.resize(wordops::words_for_bits(long(dim)), 0);
    for (std::size_t i = 0; i < dim; ++i)
      if (wordops::get_bit(m7.cols[j], long(i))) wordops::flip_bit(v, long(dim + i));
    wordops::trim(v);
    stacked[j] = std::move(v);
  }

  std::vector<gf2::Vec> echelon;  // incremental independence check
  auto add_independent = [&](gf2::Vec v, int i, int j) {
    long d = wordops::top_bit(v);
    while (d >= 0) {
      bool hit = false;
      for (auto& e : echelon)
        if (wordops::top_bit(e) == d) {
          wordops::xor_into(v, e);
          d = wordops::top_bit(v);
          hit = true;
          break;
        }
      if (!hit) break;
    }
    if (d < 0)
      throw NoSolution(i, j, "grid element m_{" + std::to_string(i) + "," + std::to_string(j) +
                                 "} is dependent on earlier cells");
    echelon.push_back(std::move(v));
  };

  long f0 = basis.index_of_degree(0);
  if (f0 < 0) throw Error("basis does not contain f_0");
  gf2::Vec m00;
  wordops::flip_bit(m00, f0);
  add_independent(m00, 0, 0);
  ab.cell[AdaptedBasis::cell_index(0, 0)] = std::move(m00);

  for (int s = 1; s <= depth; ++s) {
    for (int i = 0; i <= s; ++i) {
      int j = s - i;
      gf2::Vec rhs;
      if (i > 0) rhs = ab.at(i - 1, j);
      rhs.resize(wordops::words_for_bits(long(dim)), 0);
      if (j > 0)
        for (std::size_t t = 0; t < dim; ++t)
          if (wordops::get_bit(ab.at(i, j - 1), long(t))) wordops::flip_bit(rhs, long(dim + t));
      wordops::trim(rhs);
      gf2::LinearSolution sol = gf2::solve_combination(stacked, rhs);
      if (!sol.consistent)
        throw NoSolution(i, j, "no joint preimage for cell (" + std::to_string(i) + "," +
                                   std::to_string(j) + "); kernel dimension " +
                                   std::to_string(sol.kernel.size()));
      gf2::Vec x = gf2::canonicalize_mod_kernel(sol.particular, sol.kernel);
      add_independent(x, i, j);
      ab.cell[AdaptedBasis::cell_index(i, j)] = std::move(x);
    }
  }
  return ab;
}

/// T_p written as a polynomial in the two shifts X (= T_3) and Y (= T_7):
/// the support of u_p over monomials X^a Y^b, constant term always absent.
struct UElement {
  long p = 0;
  int depth = 0;
  std::vector<std::pair<int, int>> support;  // (a, b), sorted
};

/// Solve T_p m_{i,j} = sum u_{a,b} m_{i-a,j-b} for all grid cells at once.
/// The cell (0,0) equation forces T_p(f_0) = 0, i.e. a zero constant term.
inline UElement extract_u(long p, const AdaptedBasis& ab, const OperatorMatrix& mp) {
  if (p == 2 || p == 5) throw BadPrime("u_p is defined for p != 2, 5");
  if (mp.p != p) throw Error("operator matrix prime does not match");
  const int depth = ab.depth;
  std::vector<std::pair<int, int>> unknowns;
  for (int s = 1; s <= depth; ++s)
    for (int a = 0; a <= s; ++a) unknowns.emplace_back(a, s - a);

  const std::size_t cells = AdaptedBasis::cell_count(depth);
  const long block = long(ab.dim);
  std::vector<gf2::Vec> cols(unknowns.size());
  gf2::Vec rhs;
  for (std::size_t c = 0; c < cells; ++c) {
    // Recover (i,j) from the cell index.
    int s = 0;
    while (AdaptedBasis::cell_count(s) <= c) ++s;
    int i = int(c - AdaptedBasis::cell_count(s - 1));
    int j = s - i;
    gf2::Vec img = mp.apply(ab.at(i, j));
    for (std::size_t t = 0; t < img.size() * wordops::kWordBits; ++t)
      if (wordops::get_bit(img, long(t))) wordops::flip_bit(rhs, long(c) * block + long(t));
    for (std::size_t u = 0; u < unknowns.size(); ++u) {
      auto [a, b] = unknowns[u];
      if (a > i || b > j) continue;
      const gf2::Vec& m = ab.at(i - a, j - b);
      for (std::size_t t = 0; t < m.size() * wordops::kWordBits; ++t)
        if (wordops::get_bit(m, long(t))) wordops::flip_bit(cols[u], long(c) * block + long(t));
    }
  }
  gf2::LinearSolution sol = gf2::solve_combination(cols, rhs);
  if (!sol.consistent)
    throw NotMultiplication(p, "T_" + std::to_string(p) +
                                   " is not multiplication by any element of (X,Y) at depth " +
                                   std::to_string(depth));
  gf2::Vec x = gf2::canonicalize_mod_kernel(sol.particular, sol.kernel);
  UElement u;
  u.p = p;
  u.depth = depth;
  for (std::size_t k = 0; k < unknowns.size(); ++k)
    if (wordops::get_bit(x, long(k))) u.support.push_back(unknowns[k]);
  return u;
}

/// One row of the K -> W_a comparison.
struct WaRow {
  long n = 0;
  long leading_j = 0;   // leading J-index of the N2a part (polynomial route)
  long min_j = 0;       // smallest J-index of the N2a part
  long valuation = 0;   // valuation of the w-series (series route); equals min_j
};

struct WaReport {
  std::vector<WaRow> rows;
  bool independent = false;
  long compared_precision = 0;
};

/// The composite K -> N2a -> W_a map: w(f) = pr(series of the N2a part of f),
/// with the N2a part computed on the polynomial side. Verifies w(f_0) = D,
/// T_q-equivariance for q in {3,7} (polynomial route vs series route), and
/// linear independence of the w(f_n).
inline WaReport wa_check(const KBasis& basis, long n_max) {
  if (n_max > basis.max_n()) throw TableTooSmall("wa_check bound exceeds the basis");
  const long prec = basis.precision();
  OperatorMatrix m3 = t_matrix(3, basis);
  OperatorMatrix m7 = t_matrix(7, basis);

  std::vector<std::size_t> picked;
  for (std::size_t idx = 0; idx < basis.size(); ++idx)
    if (basis.degree_at(idx) <= n_max) picked.push_back(idx);

  // Shared r-power table covering every J-representative we will expand.
  long max_j_degree = 0;
  auto n2a_part_series = [&](const Gf2Poly& g, long precision, RPowerTable* rp) {
    JVector va = project_a(j_image(modd_from_g(g)));
    Gf2Poly elem;
    for (long k : va.indices()) elem += j_element(k).v;
    Gf2Series s(precision);
    if (rp) {
      for (long e : elem.support()) s += rp->power(e).truncated(precision);
    } else {
      s = series_of_poly(PolyInR{elem}, precision);
    }
    return std::pair(pr(s), va);
  };
  // Sizing pass for the shared table.
  for (std::size_t idx : picked) {
    JVector va = project_a(j_image(modd_from_g(basis.g_at(idx))));
    for (long k : va.indices())
      max_j_degree = std::max(max_j_degree, j_element(k).v.degree());
    gf2::Vec c3 = m3.cols[idx], c7 = m7.cols[idx];
    for (const gf2::Vec* c : {&c3, &c7}) {
      JVector vi = project_a(j_image(modd_from_g(basis.combine_g(*c))));
      for (long k : vi.indices())
        max_j_degree = std::max(max_j_degree, j_element(k).v.degree());
    }
  }
  RPowerTable rp(max_j_degree, prec);

  WaReport rep;
  std::vector<Gf2Series> w(picked.size(), Gf2Series(1));
  for (std::size_t t = 0; t < picked.size(); ++t) {
    std::size_t idx = picked[t];
    long n = basis.degree_at(idx);
    auto [ws, va] = n2a_part_series(basis.g_at(idx), prec, &rp);
    if (n == 0 && ws != gen_theta(ThetaKind::D, prec))
      throw EquivarianceFailure(0, 0, "w(f_0) differs from the theta series D");
    WaRow row{n, va.max_index(), va.empty() ? 0 : va.indices().front(), ws.valuation()};
    // The pr(J_k) have valuation exactly k, so the series-side valuation must
    // reproduce the polynomial-side minimal index.
    if (row.valuation != row.min_j)
      throw EquivarianceFailure(n, 0,
                                "w(f_" + std::to_string(n) + ") valuation " +
                                    std::to_string(row.valuation) +
                                    " differs from the minimal J-index " +
                                    std::to_string(row.min_j));
    w[t] = std::move(ws);
    rep.rows.push_back(row);
  }

  // Equivariance: polynomial route against the series route.
  for (long q : {3l, 7l}) {
    const OperatorMatrix& mq = q == 3 ? m3 : m7;
    for (std::size_t t = 0; t < picked.size(); ++t) {
      std::size_t idx = picked[t];
      Gf2Series rhs = hecke_tp(w[t], q);
      auto [lhs, va] = n2a_part_series(basis.combine_g(mq.cols[idx]), prec, &rp);
      (void)va;
      if (lhs.truncated(rhs.precision()) != rhs)
        throw EquivarianceFailure(basis.degree_at(idx), q,
                                  "w(T_" + std::to_string(q) + " f_" +
                                      std::to_string(basis.degree_at(idx)) +
                                      ") != T_" + std::to_string(q) + " w(f_n)");
    }
  }

  std::vector<gf2::Vec> rows;
  for (const auto& s : w) rows.push_back(s.words());
  rep.independent = gf2::rank(rows) == long(rows.size());
  rep.compared_precision = prec;
  if (!rep.independent)
    throw EquivarianceFailure(-1, 0, "w(f_n) family is linearly dependent at the tested precision");
  return rep;
}

}  // namespace hecke2
