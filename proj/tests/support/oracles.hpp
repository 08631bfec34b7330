#pragma once

// Brute-force helpers for the tests. They use gmpxx directly and nothing from
// the library, so they can serve as independent ground truth.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include <gmpxx.h>

namespace oracle {

using Mask = std::uint64_t;

inline Mask mask_of(std::initializer_list<int> one_based) {
  Mask m = 0;
  for (int i : one_based) m |= Mask{1} << (i - 1);
  return m;
}

inline std::size_t dense_rank(std::vector<std::vector<mpq_class>> m) {
  std::size_t r = 0;
  const std::size_t cols = m.empty() ? 0 : m.front().size();
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t piv = r;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[r]);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      mpq_class f = m[i][c] / m[r][c];
      for (std::size_t k = c; k < cols; ++k) m[i][k] -= f * m[r][k];
    }
    ++r;
  }
  return r;
}

// Squarefree monomial with support g lies in (x_i : i in F) for every F.
inline bool in_intersection(const std::vector<Mask>& comps, Mask g) {
  return std::all_of(comps.begin(), comps.end(), [&](Mask f) { return (f & g) != 0; });
}

// Minimal supports among all squarefree monomials of the intersection.
inline std::set<Mask> intersection_generators(std::size_t n, const std::vector<Mask>& comps) {
  std::vector<Mask> members;
  for (Mask g = 1; g < (Mask{1} << n); ++g) {
    if (in_intersection(comps, g)) members.push_back(g);
  }
  std::set<Mask> out;
  for (Mask g : members) {
    bool minimal = std::none_of(members.begin(), members.end(), [&](Mask h) { return h != g && (h & ~g) == 0; });
    if (minimal) out.insert(g);
  }
  return out;
}

// dim H^p_J(R)_a for p = 0..r from the Čech complex on an arbitrary (possibly
// redundant) list of squarefree generators, with dense elimination.
inline std::vector<std::size_t> cech_dims(const std::vector<Mask>& gens, const std::vector<int>& a) {
  const std::size_t r = gens.size();
  Mask neg = 0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a[j] < 0) neg |= Mask{1} << j;
  }
  // (R_f)_a != 0 iff every variable with a negative exponent divides f.
  std::vector<std::vector<std::uint32_t>> basis(r + 1);
  std::vector<std::map<std::uint32_t, std::size_t>> index(r + 1);
  for (std::uint32_t t = 0; t < (std::uint32_t{1} << r); ++t) {
    Mask supp = 0;
    for (std::size_t g = 0; g < r; ++g) {
      if ((t >> g) & 1U) supp |= gens[g];
    }
    if ((neg & ~supp) == 0) {
      const auto p = static_cast<std::size_t>(std::popcount(t));
      index[p][t] = basis[p].size();
      basis[p].push_back(t);
    }
  }
  std::vector<std::size_t> ranks(r + 1, 0);
  for (std::size_t p = 0; p < r; ++p) {
    if (basis[p].empty() || basis[p + 1].empty()) continue;
    std::vector<std::vector<mpq_class>> d(basis[p + 1].size(), std::vector<mpq_class>(basis[p].size(), 0));
    for (std::size_t c = 0; c < basis[p].size(); ++c) {
      const std::uint32_t t = basis[p][c];
      for (std::size_t g = 0; g < r; ++g) {
        if ((t >> g) & 1U) continue;
        auto it = index[p + 1].find(t | (std::uint32_t{1} << g));
        if (it == index[p + 1].end()) continue;
        int below = std::popcount(t & ((std::uint32_t{1} << g) - 1));
        d[it->second][c] = below % 2 == 0 ? 1 : -1;
      }
    }
    ranks[p] = dense_rank(d);
  }
  std::vector<std::size_t> dims(r + 1);
  for (std::size_t p = 0; p <= r; ++p) dims[p] = basis[p].size() - ranks[p] - (p > 0 ? ranks[p - 1] : 0);
  return dims;
}

// Graded dimension of H^{|F|}_{(x_F)}(R) at a.
inline int top_cohomology_indicator(Mask f, const std::vector<int>& a) {
  for (std::size_t j = 0; j < a.size(); ++j) {
    const bool in = (f >> j) & 1U;
    if (in && a[j] > -1) return 0;
    if (!in && a[j] < 0) return 0;
  }
  return 1;
}

inline void for_each_degree(std::size_t n, int lo, int hi, const auto& fn) {
  std::vector<int> a(n, lo);
  for (;;) {
    fn(a);
    std::size_t j = n;
    while (j > 0) {
      --j;
      if (a[j] < hi) {
        ++a[j];
        break;
      }
      a[j] = lo;
      if (j == 0) return;
    }
    if (n == 0) return;
  }
}

}  // namespace oracle
