#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hecke2/common.hpp"
#include "hecke2/gf2poly.hpp"
#include "hecke2/gf2series.hpp"
#include "hecke2/semilinear.hpp"

namespace hecke2 {

struct BadPrime : Error {
  using Error::Error;
};
struct NotInMOddSpan : Error {
  long exponent;
  NotInMOddSpan(long exponent_, const std::string& msg) : Error(msg), exponent(exponent_) {}
};
struct AgreementFailure : Error {
  long n;
  AgreementFailure(long n_, const std::string& msg) : Error(msg), n(n_) {}
};

/// The four theta series of the power-series realization.
enum class ThetaKind { R, F, G, D };

inline Gf2Series gen_theta(ThetaKind kind, long precision) {
  Gf2Series s(precision);
  auto add_squares = [&](long scale, bool odd_only, bool coprime_ten) {
    for (long n = 1; scale * n * n < precision; ++n) {
      if (odd_only && n % 2 == 0) continue;
      if (coprime_ten && (n % 2 == 0 || n % 5 == 0)) continue;
      s.flip_coeff(scale * n * n);
    }
  };
  switch (kind) {
    case ThetaKind::R:
      add_squares(1, false, false);
      add_squares(2, false, false);
      add_squares(5, false, false);
      add_squares(10, false, false);
      break;
    case ThetaKind::F:
      add_squares(1, true, false);
      break;
    case ThetaKind::G:
      add_squares(5, true, false);
      break;
    case ThetaKind::D:
      add_squares(1, false, true);
      break;
  }
  return s;
}

inline bool is_odd_prime_not_5(long p) {
  if (p < 3 || p == 5 || p % 2 == 0) return false;
  for (long d = 3; d * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

/// U_5: coefficient n of the output is coefficient 5n of the input.
inline Gf2Series u5(const Gf2Series& f) {
  long out_prec = (f.precision() - 1) / 5 + 1;
  Gf2Series out(out_prec);
  for (long n = 0; n < out_prec; ++n)
    if (f.coeff(5 * n)) out.flip_coeff(n);
  return out;
}

/// The formal Hecke operator for an odd prime p != 5 in characteristic 2:
/// coefficient n of the output is c(pn) + c(n/p) (second term only when p|n).
inline Gf2Series hecke_tp(const Gf2Series& f, long p) {
  if (!is_odd_prime_not_5(p)) throw BadPrime("T_p needs an odd prime p != 5, got " + std::to_string(p));
  long out_prec = (f.precision() - 1) / p + 1;
  Gf2Series out(out_prec);
  for (long n = 0; n < out_prec; ++n) {
    bool c = f.coeff(p * n);
    if (n % p == 0) c ^= f.coeff(n / p);
    if (c) out.flip_coeff(n);
  }
  return out;
}

/// pr: kill every coefficient whose index is divisible by 5.
inline Gf2Series pr(const Gf2Series& f) {
  Gf2Series out = f;
  for (long n = 0; n < f.precision(); n += 5)
    if (f.coeff(n)) out.flip_coeff(n);
  return out;
}

/// Powers of the theta series r at a fixed precision, built once by repeated
/// sparse multiplication and shared read-only.
class RPowerTable {
 public:
  RPowerTable(long max_exp, long precision) : prec_(precision) {
    pw_.reserve(std::size_t(max_exp) + 1);
    pw_.push_back(Gf2Series::from_exponents(precision, {0}));
    if (max_exp >= 1) pw_.push_back(gen_theta(ThetaKind::R, precision));
    for (long e = 2; e <= max_exp; ++e)
      pw_.push_back((pw_.back() * pw_[1]).truncated(precision));
  }

  long precision() const { return prec_; }
  long max_exp() const { return long(pw_.size()) - 1; }

  const Gf2Series& power(long e) const {
    if (e < 0 || e > max_exp()) throw TableTooSmall("r-power table covers e <= " + std::to_string(max_exp()));
    return pw_[std::size_t(e)];
  }

 private:
  std::vector<Gf2Series> pw_;
  long prec_;
};

/// Expansion of an element of Z/2[r] at the theta series r, exact to the
/// requested precision.
inline Gf2Series series_of_poly(const PolyInR& f, const RPowerTable& rp) {
  Gf2Series out(rp.precision());
  for (long e : f.v.support()) out += rp.power(e);
  return out;
}

inline Gf2Series series_of_poly(const PolyInR& f, long precision) {
  RPowerTable rp(std::max<long>(f.v.degree(), 0), precision);
  return series_of_poly(f, rp);
}

inline Gf2Series series_of_poly(const MOddElem& m, long precision) {
  return series_of_poly(modd_from_g(m.g), precision);
}

/// Series of the basis elements (r^2+r) r^{2n}, n <= dmax, at a fixed
/// precision. Row n has valuation exactly 2n+1, which is what makes the
/// greedy reconstruction in poly_of_series work. Even powers of r come from
/// half-precision powers via the cheap characteristic-2 square.
class MOddSeriesBasis {
 public:
  MOddSeriesBasis(long dmax, long precision) : dmax_(dmax), prec_(precision) {
    long half = (precision + 1) / 2;
    Gf2Series r_half = gen_theta(ThetaKind::R, half);
    Gf2Series r_full = gen_theta(ThetaKind::R, precision);
    rows_.reserve(std::size_t(dmax) + 1);
    Gf2Series pw_half = Gf2Series::from_exponents(half, {0});  // r^n at half precision
    Gf2Series even = Gf2Series::from_exponents(precision, {0});  // r^{2n} at full precision
    for (long n = 0;; ++n) {
      Gf2Series odd = (even * r_full).truncated(std::min(precision, even.precision() + 1));
      // (r^2+r) r^{2n} = r^{2n+2} + r^{2n+1}
      pw_half = (pw_half * r_half).truncated(half);
      Gf2Series even_next = square(pw_half).truncated(precision);
      rows_.push_back((even_next + odd).truncated(precision));
      if (n == dmax) break;
      even = even_next;
    }
  }

  long dmax() const { return dmax_; }
  long precision() const { return prec_; }

  const Gf2Series& row(long n) const {
    if (n < 0 || n > dmax_) throw TableTooSmall("basis series table covers n <= " + std::to_string(dmax_));
    return rows_[std::size_t(n)];
  }

 private:
  std::vector<Gf2Series> rows_;
  long dmax_, prec_;
};

/// Recover g from the series of (r^2+r) g(r^2) by greedy elimination from
/// the lowest valuation up. All coefficients below the verification window
/// min(precision(s), 2*dmax+3) must be accounted for; an unmatched even
/// exponent (or an odd one beyond the window) reports the obstruction.
inline Gf2Poly poly_of_series(const Gf2Series& s, const MOddSeriesBasis& basis) {
  long window = std::min(s.precision(), 2 * basis.dmax() + 3);
  if (basis.precision() < window) throw Error("basis series table precision is too small");
  wordops::Words rem = s.words();
  wordops::mask_above(rem, window);
  Gf2Poly g;
  while (true) {
    long v = wordops::low_bit(rem);
    if (v < 0) break;
    if (v % 2 == 0)
      throw NotInMOddSpan(v, "residual exponent " + std::to_string(v) + " is not in the span");
    long n = (v - 1) / 2;
    g.flip_coeff(n);
    wordops::xor_shifted(rem, basis.row(n).words(), 0, window);
  }
  return g;
}

inline Gf2Poly poly_of_series(const Gf2Series& s, long dmax) {
  return poly_of_series(s, MOddSeriesBasis(dmax, s.precision()));
}

/// Input precision needed so that applying an operator that divides
/// precision by `factor` still recovers g-coefficients up to degree dmax.
struct PrecisionPolicy {
  long dmax = 0;
  long factor = 1;
  long precision() const { return factor * (2 * dmax + 3); }
};

/// Check that U_5 on series agrees with U on (r^2+r) r^{2n}.
inline void verify_u_agreement(long n, long precision) {
  if (precision < 5 * (4 * n + 6))
    throw Error("verify_u_agreement needs precision >= 5*(4n+6)");
  PolyInR basis{Gf2Poly::from_exponents({2 * n + 1, 2 * n + 2})};
  RPowerTable rp(2 * n + 2, precision);
  Gf2Series lhs = u5(series_of_poly(basis, rp));
  PolyInR img = apply_u(basis);
  RPowerTable rp2(std::max<long>(img.v.degree(), 0), precision);
  Gf2Series rhs = series_of_poly(img, rp2).truncated(lhs.precision());
  if (lhs != rhs)
    throw AgreementFailure(n, "U_5 and U disagree on (r^2+r)r^{2n} at n=" + std::to_string(n));
}

/// Deep consistency of the whole setup: the polynomials F = r(r+1)^5 and
/// G = r^5(r+1) expanded at the theta series r must reproduce their own
/// theta series.
inline void check_theta_identities(long precision) {
  RPowerTable rp(6, precision);
  if (series_of_poly(PolyInR{f_const()}, rp) != gen_theta(ThetaKind::F, precision))
    throw AgreementFailure(-1, "series of r(r+1)^5 differs from the theta series F");
  if (series_of_poly(PolyInR{g_const()}, rp) != gen_theta(ThetaKind::G, precision))
    throw AgreementFailure(-1, "series of r^5(r+1) differs from the theta series G");
}

}  // namespace hecke2
