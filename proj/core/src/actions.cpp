#include "titshom/actions.hpp"

#include <map>
#include <numeric>
#include <string>

#include "titshom/errors.hpp"
#include "titshom/smith.hpp"

namespace titshom {

namespace {

HomologyGroup as_group(const CokernelInvariants& c) { return {c.betti, c.torsion}; }

// Union-find with a sign on each edge: e_i = sign(i) · e_root(i).
struct SignedUnionFind {
  std::vector<int> parent;
  std::vector<int> sign;  // relative to parent
  std::vector<bool> torsion2;  // root has e = -e

  explicit SignedUnionFind(size_t n) : parent(n), sign(n, 1), torsion2(n, false) {
    std::iota(parent.begin(), parent.end(), 0);
  }

  std::pair<int, int> find(int x) {
    int s = 1, r = x;
    while (parent[static_cast<size_t>(r)] != r) {
      s *= sign[static_cast<size_t>(r)];
      r = parent[static_cast<size_t>(r)];
    }
    // path compression
    int cur = x, cs = s;
    while (parent[static_cast<size_t>(cur)] != cur) {
      int next = parent[static_cast<size_t>(cur)];
      int ns = cs * sign[static_cast<size_t>(cur)];
      parent[static_cast<size_t>(cur)] = r;
      sign[static_cast<size_t>(cur)] = cs;
      cur = next;
      cs = ns;
    }
    return {r, s};
  }

  // Imposes e_a = s · e_b.
  void unite(int a, int b, int s) {
    auto [ra, sa] = find(a);
    auto [rb, sb] = find(b);
    // e_ra = sa e_a = sa s e_b = sa s sb e_rb
    const int rel = sa * s * sb;
    if (ra == rb) {
      if (rel == -1) torsion2[static_cast<size_t>(ra)] = true;
      return;
    }
    parent[static_cast<size_t>(ra)] = rb;
    sign[static_cast<size_t>(ra)] = rel;
    if (torsion2[static_cast<size_t>(ra)]) torsion2[static_cast<size_t>(rb)] = true;
  }
};

bool is_signed_permutation(const SparseIntMatrix& g) {
  std::vector<bool> hit(g.rows(), false);
  for (size_t c = 0; c < g.cols(); ++c) {
    const auto& col = g.column(c);
    if (col.size() != 1 || !col[0].second.is_unit()) return false;
    auto r = static_cast<size_t>(col[0].first);
    if (hit[r]) return false;
    hit[r] = true;
  }
  return true;
}

HomologyGroup coinvariant_cokernel(const ModuleAction& m, const SparseIntMatrix* extra) {
  const size_t n = m.rank;
  SignedUnionFind uf(n);
  std::vector<const SparseIntMatrix*> general;
  for (const auto& g : m.generators) {
    if (g.rows() != n || g.cols() != n) throw InvalidArgument("generator shape does not match module rank");
    if (!is_signed_permutation(g)) {
      general.push_back(&g);
      continue;
    }
    for (size_t c = 0; c < n; ++c) {
      const auto& e = g.column(c).front();
      uf.unite(static_cast<int>(c), e.first, e.second.sign());
    }
  }
  std::vector<int> root_index(n, -1);
  size_t roots = 0;
  for (size_t i = 0; i < n; ++i)
    if (uf.find(static_cast<int>(i)).first == static_cast<int>(i)) root_index[i] = static_cast<int>(roots++);
  std::vector<std::pair<int, int>> proj(n);  // (root index, sign)
  for (size_t i = 0; i < n; ++i) {
    auto [r, s] = uf.find(static_cast<int>(i));
    proj[i] = {root_index[static_cast<size_t>(r)], s};
  }
  auto project = [&](const SparseIntMatrix::Column& col) {
    SparseIntMatrix::Column out;
    for (const auto& [r, v] : col) {
      const auto& [ri, s] = proj[static_cast<size_t>(r)];
      out.emplace_back(ri, s < 0 ? Integer(0) - v : v);
    }
    return out;
  };

  SparseIntMatrix rel(roots, 0);
  for (size_t i = 0; i < n; ++i) {
    if (uf.find(static_cast<int>(i)).first == static_cast<int>(i) && uf.torsion2[i])
      rel.append_column({{root_index[i], Integer(2)}});
  }
  for (const SparseIntMatrix* g : general) {
    for (size_t c = 0; c < n; ++c) {
      auto col = g->column(c);
      col.emplace_back(static_cast<int>(c), Integer(-1));
      rel.append_column(project(col));
    }
  }
  if (extra) {
    if (extra->rows() != n) throw InvalidArgument("extra columns have the wrong number of rows");
    for (size_t c = 0; c < extra->cols(); ++c) rel.append_column(project(extra->column(c)));
  }
  return as_group(cokernel_invariants(rel));
}

using Key = std::vector<int>;

Key compose(const Key& a, const Key& b) {  // (a∘b)(x) = a(b(x))
  Key out(b.size());
  for (size_t x = 0; x < b.size(); ++x) out[x] = a[static_cast<size_t>(b[x])];
  return out;
}

}  // namespace

ModuleAction trivial_action(size_t rank, const FiniteGroup& g) {
  ModuleAction m;
  m.rank = rank;
  m.group = g;
  m.elements.assign(g.order(), SparseIntMatrix::identity(rank));
  return m;
}

ModuleAction close_action(const std::vector<std::vector<int>>& perm_generators,
                          const std::vector<SparseIntMatrix>& matrix_generators,
                          size_t max_order) {
  if (perm_generators.size() != matrix_generators.size())
    throw InvalidArgument("permutation and matrix generator counts differ");
  if (matrix_generators.empty()) throw InvalidArgument("at least one generator is required");
  const size_t deg = perm_generators.front().size();
  const size_t rank = matrix_generators.front().rows();

  ModuleAction m;
  m.rank = rank;
  m.generators = matrix_generators;

  Key id(deg);
  std::iota(id.begin(), id.end(), 0);
  std::vector<Key> keys{id};
  std::map<Key, int> index{{id, 0}};
  m.elements.push_back(SparseIntMatrix::identity(rank));
  for (size_t head = 0; head < keys.size(); ++head) {
    for (size_t s = 0; s < perm_generators.size(); ++s) {
      Key k = compose(perm_generators[s], keys[head]);
      if (index.count(k)) continue;
      if (keys.size() >= max_order)
        throw BudgetExceeded("group order exceeds " + std::to_string(max_order));
      index.emplace(k, static_cast<int>(keys.size()));
      m.elements.push_back(matrix_generators[s] * m.elements[head]);
      keys.push_back(std::move(k));
    }
  }

  FiniteGroup g;
  const size_t order = keys.size();
  g.mult.assign(order, std::vector<int>(order));
  g.inverse.assign(order, -1);
  for (size_t a = 0; a < order; ++a)
    for (size_t b = 0; b < order; ++b) {
      int c = index.at(compose(keys[a], keys[b]));
      g.mult[a][b] = c;
      if (c == 0) g.inverse[a] = static_cast<int>(b);
    }
  m.group = std::move(g);
  return m;
}

HomologyGroup coinvariants(const ModuleAction& m) { return coinvariant_cokernel(m, nullptr); }

HomologyGroup coinvariants_modulo(const ModuleAction& m, const SparseIntMatrix& extra) {
  return coinvariant_cokernel(m, &extra);
}

namespace {

// Normalized bar complex C_k = M ⊗ Z[(G∖1)^k] with the right action
// m·g = g^{-1} m.  Generator index: module index + rank · (tuple in base N).
class BarComplex {
 public:
  explicit BarComplex(const ModuleAction& m) : m_(m), g_(*m.group) {
    for (size_t x = 0; x < g_.order(); ++x)
      if (static_cast<int>(x) != g_.identity) nonid_.push_back(static_cast<int>(x));
    slot_.assign(g_.order(), -1);
    for (size_t i = 0; i < nonid_.size(); ++i) slot_[static_cast<size_t>(nonid_[i])] = static_cast<int>(i);
  }

  size_t dim(int k) const {
    size_t d = m_.rank;
    for (int i = 0; i < k; ++i) d *= nonid_.size();
    return d;
  }

  SparseIntMatrix boundary(int k) const {
    SparseIntMatrix d(k == 0 ? 0 : dim(k - 1), dim(k));
    if (k == 0) return d;
    const size_t n = nonid_.size();
    std::vector<int> tup(static_cast<size_t>(k));
    for (size_t col = 0; col < dim(k); ++col) {
      const size_t mi = col % m_.rank;
      size_t rest = col / m_.rank;
      for (int j = 0; j < k; ++j) {
        tup[static_cast<size_t>(j)] = nonid_[rest % n];
        rest /= n;
      }
      SparseIntMatrix::Column out;
      // m·g1 ⊗ [g2|...|gk]
      {
        const size_t tail = encode(tup, 1, k, -1, 0);
        const auto& act = m_.elements[static_cast<size_t>(g_.inverse[static_cast<size_t>(tup[0])])];
        for (const auto& [r, v] : act.column(mi))
          out.emplace_back(static_cast<int>(static_cast<size_t>(r) + m_.rank * tail), v);
      }
      for (int j = 1; j < k; ++j) {
        const int prod = g_.mult[static_cast<size_t>(tup[static_cast<size_t>(j - 1)])]
                                [static_cast<size_t>(tup[static_cast<size_t>(j)])];
        if (prod == g_.identity) continue;
        const size_t t = encode(tup, 0, k, j - 1, prod);
        out.emplace_back(static_cast<int>(mi + m_.rank * t), Integer(j % 2 ? -1 : 1));
      }
      const size_t head = encode(tup, 0, k - 1, -1, 0);
      out.emplace_back(static_cast<int>(mi + m_.rank * head), Integer(k % 2 ? -1 : 1));
      d.set_column(col, std::move(out));
    }
    return d;
  }

 private:
  // Encodes tup[lo..hi) with positions merged: entry `merged` replaced by
  // `merged_value` and entry merged+1 skipped (merged = -1: plain).
  size_t encode(const std::vector<int>& tup, int lo, int hi, int merged, int merged_value) const {
    size_t code = 0, place = 1;
    for (int j = lo; j < hi; ++j) {
      if (merged >= 0 && j == merged + 1) continue;
      const int g = (j == merged) ? merged_value : tup[static_cast<size_t>(j)];
      code += place * static_cast<size_t>(slot_[static_cast<size_t>(g)]);
      place *= nonid_.size();
    }
    return code;
  }

  const ModuleAction& m_;
  const FiniteGroup& g_;
  std::vector<int> nonid_;
  std::vector<int> slot_;
};

}  // namespace

HomologyGroup group_homology(const ModuleAction& m, int i) {
  if (!m.group) throw InvalidArgument("group_homology needs the multiplication table");
  if (i < 0 || i > 2) throw DegreeOutOfRange("group homology is available for degrees 0..2");
  const size_t order = m.group->order();
  const size_t budget = i == 2 ? kH2OrderBudget : kH1OrderBudget;
  if (order > budget)
    throw BudgetExceeded("group order " + std::to_string(order) + " exceeds the degree-" +
                         std::to_string(i) + " budget " + std::to_string(budget));
  if (m.elements.size() != order) throw InvalidArgument("element matrices do not match the group table");
  BarComplex bar(m);
  const SparseIntMatrix d_in = bar.boundary(i);
  const SparseIntMatrix d_out = bar.boundary(i + 1);
  const size_t r_in = i == 0 ? 0 : rank(d_in);
  const SmithForm s = snf(d_out);
  HomologyGroup h;
  h.betti = bar.dim(i) - r_in - s.rank;
  for (const auto& d : s.diagonal)
    if (!d.is_one()) h.torsion.push_back(d);
  return h;
}

}  // namespace titshom
