#pragma once

// Reduced chain complex of the poset of nonempty proper subsets of a d-set
// (the barycentric subdivision of the boundary of a simplex), and the map
// sending an ordered block partition [A_1|...|A_k] to ±(B_1 ⊊ B_1⊔B_2 ⊊ ...).

#include <algorithm>
#include <cstdint>
#include <map>
#include <unordered_map>
#include <vector>

namespace oracle {

using Simplex = std::vector<unsigned>;  // strictly increasing chain of masks

struct PosetComplex {
  int d = 0;
  std::vector<std::vector<Simplex>> cells;  // index k ↔ degree k-1
  std::vector<std::map<Simplex, int>> index;
};

inline void extend_chains(unsigned full, Simplex& cur, std::vector<std::vector<Simplex>>& out) {
  out[cur.size()].push_back(cur);
  const unsigned last = cur.empty() ? 0u : cur.back();
  for (unsigned m = 1; m < full; ++m) {
    if ((m & last) != last || m == last) continue;
    cur.push_back(m);
    extend_chains(full, cur, out);
    cur.pop_back();
  }
}

inline PosetComplex subset_poset(int d) {
  PosetComplex p;
  p.d = d;
  const unsigned full = (1u << d) - 1u;
  p.cells.assign(static_cast<size_t>(d), {});
  Simplex cur;
  extend_chains(full, cur, p.cells);
  p.index.resize(p.cells.size());
  for (size_t k = 0; k < p.cells.size(); ++k) {
    std::sort(p.cells[k].begin(), p.cells[k].end());
    for (size_t i = 0; i < p.cells[k].size(); ++i) p.index[k][p.cells[k][i]] = static_cast<int>(i);
  }
  return p;
}

// Boundary of a simplex of degree k-1 (k members): Σ (-1)^j (drop j).
inline std::vector<std::pair<Simplex, int>> face_sum(const Simplex& s) {
  std::vector<std::pair<Simplex, int>> out;
  for (size_t j = 0; j < s.size(); ++j) {
    Simplex f = s;
    f.erase(f.begin() + static_cast<long>(j));
    out.emplace_back(f, j % 2 ? -1 : 1);
  }
  return out;
}

// Rank mod a prime by column reduction.
inline size_t rank_mod_p(std::vector<std::vector<std::pair<int, int64_t>>> cols, int64_t p = 1000003) {
  auto inv = [p](int64_t a) {
    int64_t r = 1, e = p - 2;
    a %= p;
    if (a < 0) a += p;
    while (e) {
      if (e & 1) r = r * a % p;
      a = a * a % p;
      e >>= 1;
    }
    return r;
  };
  std::unordered_map<int, std::vector<std::pair<int, int64_t>>> pivots;  // lowest row -> column
  size_t rank = 0;
  for (auto& c : cols) {
    std::map<int, int64_t> v;
    for (auto [r, x] : c) v[r] = ((v[r] + x) % p + p) % p;
    for (auto it = v.begin(); it != v.end();) it = it->second == 0 ? v.erase(it) : std::next(it);
    while (!v.empty()) {
      int low = v.rbegin()->first;
      auto pv = pivots.find(low);
      if (pv == pivots.end()) break;
      int64_t f = v.rbegin()->second * inv(pv->second.back().second) % p;
      for (auto [r, x] : pv->second) {
        int64_t& y = v[r];
        y = ((y - f * x) % p + p) % p;
        if (y == 0) v.erase(r);
      }
    }
    if (!v.empty()) {
      pivots[v.rbegin()->first] = std::vector<std::pair<int, int64_t>>(v.begin(), v.end());
      ++rank;
    }
  }
  return rank;
}

// Betti numbers of the reduced complex, degrees -1 .. d-2.
inline std::vector<size_t> poset_betti(const PosetComplex& p) {
  std::vector<size_t> ranks(p.cells.size() + 1, 0);  // ranks[k] = rank of ∂ from index k
  for (size_t k = 1; k < p.cells.size(); ++k) {
    std::vector<std::vector<std::pair<int, int64_t>>> cols;
    for (const auto& s : p.cells[k]) {
      std::vector<std::pair<int, int64_t>> c;
      for (auto& [f, sg] : face_sum(s)) c.emplace_back(p.index[k - 1].at(f), sg);
      cols.push_back(std::move(c));
    }
    ranks[k] = rank_mod_p(std::move(cols));
  }
  std::vector<size_t> betti;
  for (size_t k = 0; k < p.cells.size(); ++k) betti.push_back(p.cells[k].size() - ranks[k] - ranks[k + 1]);
  return betti;
}

// φ on a partition given as blocks of S-elements, each listed ascending.
// `unit` maps each element of S to its restriction block (singletons added).
inline std::pair<Simplex, int> phi(const std::vector<std::vector<int>>& blocks, const std::vector<int>& unit) {
  std::vector<int> word;
  for (const auto& b : blocks) word.insert(word.end(), b.begin(), b.end());
  int inversions = 0;
  for (size_t i = 0; i < word.size(); ++i)
    for (size_t j = i + 1; j < word.size(); ++j)
      if (word[i] > word[j]) ++inversions;
  Simplex s;
  unsigned acc = 0;
  for (size_t j = 0; j + 1 < blocks.size(); ++j) {
    for (int x : blocks[j]) acc |= 1u << unit[static_cast<size_t>(x)];
    s.push_back(acc);
  }
  return {s, inversions % 2 ? -1 : 1};
}

// Units of S: restriction blocks first, then the uncovered elements.
inline std::vector<int> units(int size, const std::vector<std::vector<int>>& restrictions, int* d) {
  std::vector<int> unit(static_cast<size_t>(size), -1);
  int next = 0;
  for (const auto& r : restrictions) {
    for (int x : r) unit[static_cast<size_t>(x)] = next;
    ++next;
  }
  for (auto& u : unit)
    if (u < 0) u = next++;
  *d = next;
  return unit;
}

}  // namespace oracle
