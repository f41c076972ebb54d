#pragma once

// Brute-force determinantal divisors: D_k = gcd of all k×k minors, so the
// k-th invariant factor is D_k / D_{k-1}.  Small matrices only.

#include <cstdint>
#include <numeric>
#include <vector>

namespace oracle {

using i128 = __int128;

inline i128 abs128(i128 v) { return v < 0 ? -v : v; }

inline i128 gcd128(i128 a, i128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline i128 bareiss(std::vector<std::vector<i128>> m) {
  const size_t n = m.size();
  if (n == 0) return 1;
  i128 prev = 1;
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      size_t r = k + 1;
      while (r < n && m[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

inline void subsets(size_t n, size_t k, std::vector<std::vector<size_t>>& out) {
  std::vector<size_t> cur;
  auto rec = [&](auto&& self, size_t start) -> void {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (size_t i = start; i < n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
}

// Returns the invariant factors d_1 | d_2 | ... (nonzero only).
inline std::vector<int64_t> invariant_factors(const std::vector<std::vector<int64_t>>& a) {
  const size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  std::vector<int64_t> out;
  i128 prev = 1;
  for (size_t k = 1; k <= std::min(rows, cols); ++k) {
    std::vector<std::vector<size_t>> rs, cs;
    subsets(rows, k, rs);
    subsets(cols, k, cs);
    i128 g = 0;
    for (const auto& r : rs) {
      for (const auto& c : cs) {
        std::vector<std::vector<i128>> m(k, std::vector<i128>(k));
        for (size_t i = 0; i < k; ++i)
          for (size_t j = 0; j < k; ++j) m[i][j] = a[r[i]][c[j]];
        g = gcd128(g, bareiss(std::move(m)));
        if (g == 1 || g == prev) break;  // cannot get smaller than D_{k-1}
      }
      if (g == 1 || g == prev) break;
    }
    if (g == 0) break;
    out.push_back(static_cast<int64_t>(g / prev));
    prev = g;
  }
  return out;
}

}  // namespace oracle
