#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace hecke2 {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Word-packed bitvector helpers shared by Gf2Poly, Gf2Series and the
// elimination routines. Bit i of word i/64 is the coefficient of index i.
namespace wordops {

inline constexpr int kWordBits = 64;

using Words = std::vector<std::uint64_t>;

inline std::size_t words_for_bits(long nbits) {
  return nbits <= 0 ? 0 : std::size_t((nbits + kWordBits - 1) / kWordBits);
}

inline bool get_bit(const Words& w, long i) {
  std::size_t wi = std::size_t(i) / kWordBits;
  return wi < w.size() && ((w[wi] >> (std::size_t(i) % kWordBits)) & 1u);
}

inline void flip_bit(Words& w, long i) {
  std::size_t wi = std::size_t(i) / kWordBits;
  if (wi >= w.size()) w.resize(wi + 1, 0);
  w[wi] ^= std::uint64_t(1) << (std::size_t(i) % kWordBits);
}

// Highest set bit index, -1 if none.
inline long top_bit(const Words& w) {
  for (std::size_t i = w.size(); i-- > 0;)
    if (w[i]) return long(i) * kWordBits + (kWordBits - 1 - std::countl_zero(w[i]));
  return -1;
}

// Lowest set bit index, -1 if none.
inline long low_bit(const Words& w) {
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[i]) return long(i) * kWordBits + std::countr_zero(w[i]);
  return -1;
}

inline long popcount(const Words& w) {
  long c = 0;
  for (auto x : w) c += std::popcount(x);
  return c;
}

inline bool all_zero(const Words& w) {
  for (auto x : w)
    if (x) return false;
  return true;
}

inline void trim(Words& w) {
  while (!w.empty() && w.back() == 0) w.pop_back();
}

// Zero every bit at index >= nbits and drop now-unused words.
inline void mask_above(Words& w, long nbits) {
  if (nbits <= 0) {
    w.clear();
    return;
  }
  std::size_t nw = words_for_bits(nbits);
  if (w.size() > nw) w.resize(nw);
  int rem = int(nbits % kWordBits);
  if (rem && w.size() == nw) w.back() &= (~std::uint64_t(0)) >> (kWordBits - rem);
}

// dst ^= src << shift. Grows dst as needed; if clip_bits >= 0, bits at
// positions >= clip_bits are dropped instead (dst must already be masked).
inline void xor_shifted(Words& dst, const Words& src, long shift, long clip_bits = -1) {
  if (src.empty()) return;
  const std::size_t wo = std::size_t(shift) / kWordBits;
  const int bo = int(std::size_t(shift) % kWordBits);
  std::size_t need = wo + src.size() + (bo ? 1 : 0);
  std::size_t limit = clip_bits >= 0 ? words_for_bits(clip_bits) : need;
  if (dst.size() < std::min(need, limit)) dst.resize(std::min(need, limit), 0);
  if (bo == 0) {
    for (std::size_t t = 0; t < src.size(); ++t) {
      std::size_t i = wo + t;
      if (i >= limit) break;
      dst[i] ^= src[t];
    }
  } else {
    for (std::size_t t = 0; t < src.size(); ++t) {
      std::size_t i = wo + t;
      if (i >= limit) break;
      dst[i] ^= src[t] << bo;
      if (i + 1 < limit && i + 1 < dst.size()) dst[i + 1] ^= src[t] >> (kWordBits - bo);
      else if (i + 1 < limit) {
        dst.resize(i + 2, 0);
        dst[i + 1] ^= src[t] >> (kWordBits - bo);
      }
    }
  }
  if (clip_bits >= 0) mask_above(dst, clip_bits);
}

inline void xor_into(Words& dst, const Words& src) {
  if (dst.size() < src.size()) dst.resize(src.size(), 0);
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] ^= src[i];
}

// Spread the 32 low bits of x so bit i lands at position 2i.
inline std::uint64_t spread_bits(std::uint32_t x) {
  std::uint64_t v = x;
  v = (v | (v << 16)) & 0x0000FFFF0000FFFFull;
  v = (v | (v << 8)) & 0x00FF00FF00FF00FFull;
  v = (v | (v << 4)) & 0x0F0F0F0F0F0F0F0Full;
  v = (v | (v << 2)) & 0x3333333333333333ull;
  v = (v | (v << 1)) & 0x5555555555555555ull;
  return v;
}

inline std::uint64_t fnv1a(const Words& w, std::uint64_t seed = 0xcbf29ce484222325ull) {
  std::uint64_t h = seed;
  for (auto x : w)
    for (int b = 0; b < 8; ++b) {
      h ^= (x >> (8 * b)) & 0xff;
      h *= 0x100000001b3ull;
    }
  return h;
}

}  // namespace wordops
}  // namespace hecke2
