#pragma once

#include <algorithm>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hecke2/common.hpp"
#include "hecke2/gf2poly.hpp"

namespace hecke2 {

/// Truncated power series over Z/2: coefficients of x^e are known exactly for
/// 0 <= e < precision(), and no bit is stored at or above the precision.
/// Binary operations produce the largest precision justified by their inputs;
/// unknown coefficients are never reported as zero.
class Gf2Series {
 public:
  Gf2Series() = default;
  explicit Gf2Series(long precision) : prec_(require_precision(precision)) {}

  static Gf2Series from_exponents(long precision, const std::vector<long>& es) {
    Gf2Series s(precision);
    for (long e : es) {
      if (e < 0 || e >= precision) throw MalformedInput("exponent outside precision window");
      wordops::flip_bit(s.w_, e);
    }
    return s;
  }

  static Gf2Series from_words(long precision, wordops::Words w) {
    Gf2Series s(precision);
    s.w_ = std::move(w);
    wordops::mask_above(s.w_, precision);
    wordops::trim(s.w_);
    return s;
  }

  long precision() const { return prec_; }

  bool coeff(long e) const {
    if (e < 0 || e >= prec_) throw Error("coefficient index beyond known precision");
    return wordops::get_bit(w_, e);
  }

  void flip_coeff(long e) {
    if (e < 0 || e >= prec_) throw Error("coefficient index beyond known precision");
    wordops::flip_bit(w_, e);
    wordops::trim(w_);
  }

  bool is_zero() const { return w_.empty(); }

  /// Lowest set bit; a series with no visible term reports its precision
  /// (the valuation is only known to be at least that).
  long valuation() const {
    long v = wordops::low_bit(w_);
    return v < 0 ? prec_ : v;
  }

  Gf2Series truncated(long p) const {
    if (p > prec_) throw Error("cannot extend series precision by truncation");
    Gf2Series out(p);
    out.w_ = w_;
    wordops::mask_above(out.w_, p);
    wordops::trim(out.w_);
    return out;
  }

  std::vector<long> support() const {
    std::vector<long> out;
    for (std::size_t i = 0; i < w_.size(); ++i) {
      std::uint64_t x = w_[i];
      while (x) {
        int b = std::countr_zero(x);
        x &= x - 1;
        out.push_back(long(i) * wordops::kWordBits + b);
      }
    }
    return out;
  }

  const wordops::Words& words() const { return w_; }

  friend Gf2Series operator+(const Gf2Series& a, const Gf2Series& b) {
    Gf2Series out(std::min(a.prec_, b.prec_));
    out.w_ = a.w_;
    wordops::xor_into(out.w_, b.w_);
    wordops::mask_above(out.w_, out.prec_);
    wordops::trim(out.w_);
    return out;
  }
  Gf2Series& operator+=(const Gf2Series& o) {
    *this = *this + o;
    return *this;
  }

  // Truncated product. Unknown coefficients of a affect positions >= P_a +
  // val(b) and symmetrically, so the result is exact below
  // min(P_a+val(b), P_b+val(a), P_a+P_b).
  friend Gf2Series operator*(const Gf2Series& a, const Gf2Series& b) {
    long p = std::min({a.prec_ + b.valuation(), b.prec_ + a.valuation(), a.prec_ + b.prec_});
    Gf2Series out(p);
    const Gf2Series& sparse = wordops::popcount(a.w_) <= wordops::popcount(b.w_) ? a : b;
    const Gf2Series& dense = (&sparse == &a) ? b : a;
    for (std::size_t i = 0; i < sparse.w_.size(); ++i) {
      std::uint64_t x = sparse.w_[i];
      while (x) {
        int bit = std::countr_zero(x);
        x &= x - 1;
        long shift = long(i) * wordops::kWordBits + bit;
        if (shift >= p) break;
        wordops::xor_shifted(out.w_, dense.w_, shift, p);
      }
    }
    wordops::trim(out.w_);
    return out;
  }
  Gf2Series& operator*=(const Gf2Series& o) {
    *this = *this * o;
    return *this;
  }

  friend bool operator==(const Gf2Series&, const Gf2Series&) = default;

 private:
  static long require_precision(long p) {
    if (p < 1) throw Error("series precision must be at least 1");
    return p;
  }

  wordops::Words w_;
  long prec_ = 1;
};

/// a(x^2): exact to twice the input precision (odd coefficients of a square
/// vanish identically in characteristic 2).
inline Gf2Series square(const Gf2Series& a) {
  const auto& w = a.words();
  wordops::Words out(2 * w.size(), 0);
  for (std::size_t i = 0; i < w.size(); ++i) {
    out[2 * i] = wordops::spread_bits(std::uint32_t(w[i]));
    out[2 * i + 1] = wordops::spread_bits(std::uint32_t(w[i] >> 32));
  }
  return Gf2Series::from_words(2 * a.precision(), std::move(out));
}

/// Power series quotient q with q*b = a, defined whenever val(b) <= val(a)
/// and b is not identically zero to its precision. Result precision is
/// min(P_a, P_b) - val(b).
inline Gf2Series div_exact(const Gf2Series& a, const Gf2Series& b) {
  if (b.is_zero()) throw DivisionImpossible("series divisor is zero to its precision");
  long vb = b.valuation();
  if (vb > a.valuation()) throw DivisionImpossible("divisor valuation exceeds dividend valuation");
  long out_prec = std::min(a.precision(), b.precision()) - vb;
  if (out_prec < 1) throw DivisionImpossible("no quotient coefficients are determined");
  wordops::Words qw;
  wordops::Words rem = a.words();
  long window = out_prec + vb;
  wordops::mask_above(rem, window);
  for (long n = 0; n < out_prec; ++n) {
    if (wordops::get_bit(rem, n + vb)) {
      wordops::flip_bit(qw, n);
      wordops::xor_shifted(rem, b.words(), n, window);
    }
  }
  return Gf2Series::from_words(out_prec, std::move(qw));
}

// ---- Text codec -------------------------------------------------------
// Series form adds an explicit precision to the exponent list:
// {"precision":30,"exponents":[1,9,25]}

inline std::string format_series(const Gf2Series& s) {
  return "{\"precision\":" + std::to_string(s.precision()) +
         ",\"exponents\":" + format_exponents(s.support()) + "}";
}

inline Gf2Series parse_series(std::string_view s) {
  std::size_t i = 0;
  auto expect = [&](std::string_view tok) {
    detail::skip_ws(s, i);
    if (s.substr(i, tok.size()) != tok) throw MalformedInput("malformed series literal");
    i += tok.size();
  };
  expect("{");
  expect("\"precision\"");
  expect(":");
  detail::skip_ws(s, i);
  if (i >= s.size() || s[i] < '0' || s[i] > '9') throw MalformedInput("expected precision");
  long p = 0;
  while (i < s.size() && s[i] >= '0' && s[i] <= '9') {
    p = p * 10 + (s[i] - '0');
    if (p > (1l << 40)) throw MalformedInput("precision out of range");
    ++i;
  }
  expect(",");
  expect("\"exponents\"");
  expect(":");
  std::vector<long> es = detail::parse_exponent_list(s, i);
  expect("}");
  detail::skip_ws(s, i);
  if (i != s.size()) throw MalformedInput("trailing characters after series literal");
  return Gf2Series::from_exponents(p, es);
}

}  // namespace hecke2
