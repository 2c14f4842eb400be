// Brute-force enumeration of every bilinear subset of F_p^n1 x F_p^n2 at tiny
// scale. Deliberately shares nothing with the elimination-based code paths:
// subspaces come from additive closure of element sets, forms are evaluated
// digit by digit, and a family of forms is handled through the intersection
// of its single-form zero sets.
#pragma once

#include <cstdint>
#include <set>
#include <stdexcept>
#include <vector>

#include "bilin/fpcore.hpp"

namespace bilin::oracle {

using Mask = std::vector<bool>;

namespace detail {

inline std::vector<Residue> digits(Index v, Residue p, std::size_t n) {
  std::vector<Residue> d(n);
  for (auto& x : d) {
    x = static_cast<Residue>(v % p);
    v /= p;
  }
  return d;
}

inline Index add(Index a, Index b, Residue p, std::size_t n) {
  Index r = 0, w = 1;
  for (std::size_t i = 0; i < n; ++i) {
    r += w * ((a % p + b % p) % p);
    a /= p;
    b /= p;
    w *= p;
  }
  return r;
}

}  // namespace detail

/// Every subspace of F_p^n as a membership mask, found by closing {0} under
/// adjoining one vector at a time.
inline std::vector<Mask> subspace_masks(Residue p, std::size_t n) {
  const Index size = checked_pow(p, n);
  std::set<Mask> seen;
  std::vector<Mask> frontier{Mask(size, false)};
  frontier[0][0] = true;
  seen.insert(frontier[0]);
  while (!frontier.empty()) {
    std::vector<Mask> next;
    for (const auto& s : frontier) {
      for (Index v = 1; v < size; ++v) {
        if (s[v]) continue;
        Mask t = s;
        bool grew = true;
        while (grew) {
          grew = false;
          for (Index a = 0; a < size; ++a) {
            if (!t[a]) continue;
            const Index b = detail::add(a, v, p, n);
            if (!t[b]) {
              t[b] = true;
              grew = true;
            }
          }
        }
        if (seen.insert(t).second) next.push_back(std::move(t));
      }
    }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

/// All sets {(x, y) in W1 x W2 : Q_1 = ... = Q_r = 0}, as masks over
/// pair_index = x + p^n1 * y.
inline std::set<Mask> bilinear_sets(Residue p, std::size_t n1, std::size_t n2) {
  const Index s1 = checked_pow(p, n1), s2 = checked_pow(p, n2);
  const Index forms = checked_pow(p, n1 * n2);
  if (s1 * s2 > 64 || forms > 4096) throw CapExceeded("oracle::bilinear_sets: only for tiny ambients");

  // zero set of every ambient form over the full product
  std::vector<Mask> zero(forms, Mask(s1 * s2, false));
  for (Index q = 0; q < forms; ++q) {
    const auto qd = detail::digits(q, p, n1 * n2);
    for (Index x = 0; x < s1; ++x) {
      const auto xd = detail::digits(x, p, n1);
      for (Index y = 0; y < s2; ++y) {
        const auto yd = detail::digits(y, p, n2);
        std::uint64_t acc = 0;
        for (std::size_t i = 0; i < n1; ++i) {
          for (std::size_t j = 0; j < n2; ++j) acc += std::uint64_t{xd[i]} * qd[i * n2 + j] * yd[j];
        }
        zero[q][x + s1 * y] = acc % p == 0;
      }
    }
  }

  std::set<Mask> out;
  const auto w1s = subspace_masks(p, n1), w2s = subspace_masks(p, n2);
  for (const auto& w1 : w1s) {
    for (const auto& w2 : w2s) {
      Mask base(s1 * s2, false);
      for (Index x = 0; x < s1; ++x) {
        for (Index y = 0; y < s2; ++y) base[x + s1 * y] = w1[x] && w2[y];
      }
      // close {base} under intersection with single-form zero sets
      std::set<Mask> family{base};
      std::vector<Mask> frontier{base};
      while (!frontier.empty()) {
        std::vector<Mask> next;
        for (const auto& m : frontier) {
          for (const auto& z : zero) {
            Mask t(m.size());
            for (std::size_t i = 0; i < m.size(); ++i) t[i] = m[i] && z[i];
            if (family.insert(t).second) next.push_back(std::move(t));
          }
        }
        frontier = std::move(next);
      }
      out.insert(family.begin(), family.end());
    }
  }
  return out;
}

}  // namespace bilin::oracle
