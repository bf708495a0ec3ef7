#pragma once

#include <algorithm>
#include <limits>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hecke2/common.hpp"

namespace hecke2 {

struct MalformedInput : Error {
  using Error::Error;
};
struct DivisionImpossible : Error {
  using Error::Error;
};

/// Dense bit-packed polynomial over Z/2 in one variable. Bit e of the
/// coefficient vector is the coefficient of t^e. The zero polynomial has an
/// empty word vector and degree kNegInfDegree.
class Gf2Poly {
 public:
  static constexpr long kNegInfDegree = std::numeric_limits<long>::min();

  Gf2Poly() = default;

  static Gf2Poly one() { return monomial(0); }

  static Gf2Poly monomial(long e) {
    Gf2Poly p;
    wordops::flip_bit(p.w_, e);
    return p;
  }

  // XOR-accumulates the given exponents (duplicates cancel, order free).
  static Gf2Poly from_exponents(const std::vector<long>& es) {
    Gf2Poly p;
    for (long e : es) wordops::flip_bit(p.w_, e);
    wordops::trim(p.w_);
    return p;
  }

  static Gf2Poly from_words(wordops::Words w) {
    Gf2Poly p;
    p.w_ = std::move(w);
    wordops::trim(p.w_);
    return p;
  }

  bool is_zero() const { return w_.empty(); }

  long degree() const {
    long t = wordops::top_bit(w_);
    return t < 0 ? kNegInfDegree : t;
  }

  bool coeff(long e) const { return e >= 0 && wordops::get_bit(w_, e); }

  void flip_coeff(long e) {
    wordops::flip_bit(w_, e);
    wordops::trim(w_);
  }

  long weight() const { return wordops::popcount(w_); }

  std::vector<long> support() const {
    std::vector<long> out;
    out.reserve(std::size_t(weight()));
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

  Gf2Poly& operator+=(const Gf2Poly& o) {
    wordops::xor_into(w_, o.w_);
    wordops::trim(w_);
    return *this;
  }
  friend Gf2Poly operator+(Gf2Poly a, const Gf2Poly& b) {
    a += b;
    return a;
  }

  // Multiplication by t^k.
  Gf2Poly& operator<<=(long k) {
    if (!w_.empty() && k > 0) {
      wordops::Words shifted;
      wordops::xor_shifted(shifted, w_, k);
      w_ = std::move(shifted);
      wordops::trim(w_);
    }
    return *this;
  }
  friend Gf2Poly operator<<(Gf2Poly a, long k) {
    a <<= k;
    return a;
  }

  friend Gf2Poly operator*(const Gf2Poly& a, const Gf2Poly& b) {
    Gf2Poly r;
    r.w_ = mul_words(a.w_, b.w_);
    wordops::trim(r.w_);
    return r;
  }
  Gf2Poly& operator*=(const Gf2Poly& o) {
    *this = *this * o;
    return *this;
  }

  friend bool operator==(const Gf2Poly&, const Gf2Poly&) = default;

  std::uint64_t hash() const { return wordops::fnv1a(w_); }

 private:
  wordops::Words w_;  // trimmed: no trailing zero words

  // Karatsuba pays off only for operands beyond this many words.
  static constexpr std::size_t kKaratsubaWords = 30;

  static wordops::Words mul_words(const wordops::Words& a, const wordops::Words& b) {
    if (a.empty() || b.empty()) return {};
    if (std::min(a.size(), b.size()) >= kKaratsubaWords) return mul_karatsuba(a, b);
    return mul_school(a, b);
  }

  static wordops::Words mul_school(const wordops::Words& a, const wordops::Words& b) {
    const wordops::Words& lo = a.size() <= b.size() ? a : b;
    const wordops::Words& hi = a.size() <= b.size() ? b : a;
    wordops::Words out(lo.size() + hi.size(), 0);
    for (std::size_t i = 0; i < lo.size(); ++i) {
      std::uint64_t x = lo[i];
      while (x) {
        int bit = std::countr_zero(x);
        x &= x - 1;
        wordops::xor_shifted(out, hi, long(i) * wordops::kWordBits + bit);
      }
    }
    return out;
  }

  static wordops::Words mul_karatsuba(const wordops::Words& a, const wordops::Words& b) {
    std::size_t half = std::max(a.size(), b.size()) / 2;
    auto split = [half](const wordops::Words& w) {
      wordops::Words lo(w.begin(), w.begin() + std::min(half, w.size()));
      wordops::Words hi(w.begin() + std::min(half, w.size()), w.end());
      wordops::trim(lo);
      wordops::trim(hi);
      return std::pair(lo, hi);
    };
    auto [a0, a1] = split(a);
    auto [b0, b1] = split(b);
    wordops::Words z0 = mul_words(a0, b0);
    wordops::Words z2 = mul_words(a1, b1);
    wordops::Words am = a0, bm = b0;
    wordops::xor_into(am, a1);
    wordops::xor_into(bm, b1);
    wordops::trim(am);
    wordops::trim(bm);
    wordops::Words z1 = mul_words(am, bm);
    wordops::xor_into(z1, z0);
    wordops::xor_into(z1, z2);
    wordops::Words out(a.size() + b.size(), 0);
    wordops::xor_shifted(out, z0, 0);
    wordops::xor_shifted(out, z1, long(half) * wordops::kWordBits);
    wordops::xor_shifted(out, z2, 2 * long(half) * wordops::kWordBits);
    return out;
  }
};

/// g(t^2): every exponent doubled. Over GF(2) this equals g*g (Frobenius).
inline Gf2Poly compose_square(const Gf2Poly& g) {
  const auto& w = g.words();
  wordops::Words out(2 * w.size(), 0);
  for (std::size_t i = 0; i < w.size(); ++i) {
    out[2 * i] = wordops::spread_bits(std::uint32_t(w[i]));
    out[2 * i + 1] = wordops::spread_bits(std::uint32_t(w[i] >> 32));
  }
  return Gf2Poly::from_words(std::move(out));
}

inline Gf2Poly square(const Gf2Poly& g) { return compose_square(g); }

struct PolyDivMod {
  Gf2Poly quot, rem;
};

/// Euclidean division: a = quot*b + rem with deg(rem) < deg(b).
inline PolyDivMod divmod(const Gf2Poly& a, const Gf2Poly& b) {
  if (b.is_zero()) throw DivisionImpossible("polynomial division by zero");
  long db = b.degree();
  wordops::Words rem = a.words();
  Gf2Poly quot;
  long dr = wordops::top_bit(rem);
  while (dr >= db) {
    long k = dr - db;
    quot.flip_coeff(k);
    wordops::xor_shifted(rem, b.words(), k);
    // The leading bit was cancelled; rescan downward from there.
    while (dr >= 0 && !wordops::get_bit(rem, dr)) --dr;
  }
  PolyDivMod out;
  out.quot = std::move(quot);
  out.rem = Gf2Poly::from_words(std::move(rem));
  return out;
}

/// Exact quotient; throws DivisionImpossible if b does not divide a.
inline Gf2Poly div_exact(const Gf2Poly& a, const Gf2Poly& b) {
  PolyDivMod d = divmod(a, b);
  if (!d.rem.is_zero()) throw DivisionImpossible("polynomial division is not exact");
  return d.quot;
}

inline Gf2Poly pow(const Gf2Poly& base, long e) {
  Gf2Poly acc = Gf2Poly::one();
  Gf2Poly sq = base;
  for (long k = e; k > 0; k >>= 1) {
    if (k & 1) acc *= sq;
    if (k > 1) sq = square(sq);
  }
  return acc;
}

// ---- Text codec -------------------------------------------------------
// Canonical external form: ascending list of exponents with set coefficient,
// e.g. [1,2,4] <-> t^4+t^2+t. The empty list is the zero polynomial.

inline std::string format_exponents(const std::vector<long>& es) {
  std::string out = "[";
  for (std::size_t i = 0; i < es.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(es[i]);
  }
  out += ']';
  return out;
}

inline std::string format_poly(const Gf2Poly& p) { return format_exponents(p.support()); }

namespace detail {

inline void skip_ws(std::string_view s, std::size_t& i) {
  while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
}

inline std::vector<long> parse_exponent_list(std::string_view s, std::size_t& i) {
  skip_ws(s, i);
  if (i >= s.size() || s[i] != '[') throw MalformedInput("expected '['");
  ++i;
  std::vector<long> es;
  skip_ws(s, i);
  if (i < s.size() && s[i] == ']') {
    ++i;
    return es;
  }
  while (true) {
    skip_ws(s, i);
    if (i >= s.size() || s[i] < '0' || s[i] > '9')
      throw MalformedInput("expected a non-negative exponent");
    long v = 0;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') {
      v = v * 10 + (s[i] - '0');
      if (v > (1l << 40)) throw MalformedInput("exponent out of range");
      ++i;
    }
    if (!es.empty() && v <= es.back()) throw MalformedInput("exponents must be ascending");
    es.push_back(v);
    skip_ws(s, i);
    if (i < s.size() && s[i] == ',') {
      ++i;
      continue;
    }
    if (i < s.size() && s[i] == ']') {
      ++i;
      return es;
    }
    throw MalformedInput("expected ',' or ']'");
  }
}

}  // namespace detail

inline Gf2Poly parse_poly(std::string_view s) {
  std::size_t i = 0;
  std::vector<long> es = detail::parse_exponent_list(s, i);
  detail::skip_ws(s, i);
  if (i != s.size()) throw MalformedInput("trailing characters after exponent list");
  return Gf2Poly::from_exponents(es);
}

}  // namespace hecke2
