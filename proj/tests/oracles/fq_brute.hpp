#pragma once

// Brute-force subspace enumeration over a prime field: a subspace is the
// sorted list of its vectors (encoded base q), built from generating tuples.

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

namespace oracle {

using VecSet = std::vector<int>;

inline std::vector<int> decode(int code, int n, int q) {
  std::vector<int> v(n);
  for (int i = 0; i < n; ++i) {
    v[i] = code % q;
    code /= q;
  }
  return v;
}

inline int encode(const std::vector<int>& v, int q) {
  int c = 0;
  for (int i = static_cast<int>(v.size()) - 1; i >= 0; --i) c = c * q + v[i];
  return c;
}

// All linear combinations of the generators.
inline VecSet span(const std::vector<std::vector<int>>& gens, int n, int q) {
  std::set<int> out;
  const int k = static_cast<int>(gens.size());
  int total = 1;
  for (int i = 0; i < k; ++i) total *= q;
  for (int c = 0; c < total; ++c) {
    std::vector<int> coeff = decode(c, k, q), v(n, 0);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < n; ++j) v[j] = (v[j] + coeff[i] * gens[i][j]) % q;
    out.insert(encode(v, q));
  }
  return {out.begin(), out.end()};
}

inline std::vector<VecSet> subspaces(int n, int q, int d) {
  int size = 1;
  for (int i = 0; i < d; ++i) size *= q;
  int vectors = 1;
  for (int i = 0; i < n; ++i) vectors *= q;
  std::set<VecSet> found;
  std::vector<int> idx(d, 0);
  for (;;) {
    std::vector<std::vector<int>> gens;
    for (int i : idx) gens.push_back(decode(i, n, q));
    VecSet s = span(gens, n, q);
    if (static_cast<int>(s.size()) == size) found.insert(s);
    int i = d - 1;
    while (i >= 0 && ++idx[i] == vectors) idx[i--] = 0;
    if (i < 0) break;
  }
  return {found.begin(), found.end()};
}

inline bool subset(const VecSet& a, const VecSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// Number of complete flags, by chaining containments.
inline long complete_flags(int n, int q) {
  std::vector<std::vector<VecSet>> by_dim(n);
  for (int d = 1; d < n; ++d) by_dim[d] = subspaces(n, q, d);
  std::vector<long> count(by_dim[n - 1].size(), 1);
  for (int d = n - 2; d >= 1; --d) {
    std::vector<long> next(by_dim[d].size(), 0);
    for (size_t i = 0; i < by_dim[d].size(); ++i)
      for (size_t j = 0; j < by_dim[d + 1].size(); ++j)
        if (subset(by_dim[d][i], by_dim[d + 1][j])) next[i] += count[j];
    count = next;
  }
  long total = 0;
  for (long c : count) total += c;
  return total;
}

}  // namespace oracle
