#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "hecke2/common.hpp"

namespace hecke2 {
namespace gf2 {

using Vec = wordops::Words;

/// Rank of a set of bitvectors (destructive on the copy it takes).
inline long rank(std::vector<Vec> rows) {
  long r = 0;
  std::vector<std::pair<long, std::size_t>> pivots;  // (top bit, row index)
  for (std::size_t i = 0; i < rows.size(); ++i) {
    long d = wordops::top_bit(rows[i]);
    while (d >= 0) {
      bool hit = false;
      for (auto& [pd, pi] : pivots)
        if (pd == d) {
          wordops::xor_into(rows[i], rows[pi]);
          d = wordops::top_bit(rows[i]);
          hit = true;
          break;
        }
      if (!hit) break;
    }
    if (d >= 0) {
      pivots.emplace_back(d, i);
      ++r;
    }
  }
  return r;
}

/// Result of solving sum_j x_j * vecs[j] = rhs over GF(2).
struct LinearSolution {
  bool consistent = false;
  Vec particular;            // one solution (bit j = coefficient of vecs[j])
  std::vector<Vec> kernel;   // basis of combinations summing to zero
};

inline LinearSolution solve_combination(const std::vector<Vec>& vecs, const Vec& rhs) {
  struct Row {
    Vec v, tag;
  };
  std::vector<Row> pivots;  // echelonized, keyed by top bit of v
  LinearSolution out;
  auto reduce = [&](Vec& v, Vec& tag) {
    long d = wordops::top_bit(v);
    while (d >= 0) {
      bool hit = false;
      for (auto& p : pivots) {
        if (wordops::top_bit(p.v) == d) {
          wordops::xor_into(v, p.v);
          wordops::xor_into(tag, p.tag);
          d = wordops::top_bit(v);
          hit = true;
          break;
        }
      }
      if (!hit) break;
    }
    return d;
  };
  for (std::size_t j = 0; j < vecs.size(); ++j) {
    Vec v = vecs[j], tag;
    wordops::flip_bit(tag, long(j));
    long d = reduce(v, tag);
    if (d < 0) {
      wordops::trim(tag);
      out.kernel.push_back(std::move(tag));
    } else {
      pivots.push_back({std::move(v), std::move(tag)});
    }
  }
  Vec v = rhs, tag;
  long d = reduce(v, tag);
  out.consistent = (d < 0);
  if (out.consistent) {
    wordops::trim(tag);
    out.particular = std::move(tag);
  }
  return out;
}

/// Reduce x against the kernel so that its support avoids every kernel
/// vector's highest coordinate. The result is the unique representative of
/// x + span(kernel) that first minimizes the largest set coordinate and then
/// clears every higher eliminable coordinate (a deterministic canonical form).
inline Vec canonicalize_mod_kernel(Vec x, std::vector<Vec> kernel) {
  // Echelonize the kernel by top bit.
  std::vector<Vec> ech;
  for (auto& k : kernel) {
    Vec v = std::move(k);
    long d = wordops::top_bit(v);
    while (d >= 0) {
      bool hit = false;
      for (auto& e : ech)
        if (wordops::top_bit(e) == d) {
          wordops::xor_into(v, e);
          d = wordops::top_bit(v);
          hit = true;
          break;
        }
      if (!hit) break;
    }
    if (d >= 0) ech.push_back(std::move(v));
  }
  // High-to-low single pass: once a pivot position is handled, lower pivots
  // cannot disturb it.
  std::sort(ech.begin(), ech.end(), [](const Vec& a, const Vec& b) {
    return wordops::top_bit(a) > wordops::top_bit(b);
  });
  for (const auto& e : ech)
    if (wordops::get_bit(x, wordops::top_bit(e))) wordops::xor_into(x, e);
  wordops::trim(x);
  return x;
}

}  // namespace gf2
}  // namespace hecke2
