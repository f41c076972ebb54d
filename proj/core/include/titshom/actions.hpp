#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "titshom/chain_complex.hpp"
#include "titshom/sparse_matrix.hpp"

namespace titshom {

inline constexpr size_t kH1OrderBudget = 200;
inline constexpr size_t kH2OrderBudget = 48;

struct FiniteGroup {
  std::vector<std::vector<int>> mult;  // mult[a][b] = a·b
  std::vector<int> inverse;
  int identity = 0;

  size_t order() const noexcept { return mult.size(); }
};

// A group acting on Z^rank from the left by the generator matrices.  When
// `group` is present, `elements[g]` is the matrix of element g.
struct ModuleAction {
  size_t rank = 0;
  std::vector<SparseIntMatrix> generators;
  std::optional<FiniteGroup> group;
  std::vector<SparseIntMatrix> elements;
};

// Trivial action of the given group on Z^rank.
ModuleAction trivial_action(size_t rank, const FiniteGroup& g);

// Closes a group given by a faithful permutation representation (images of
// 0..m-1) together with matching module matrices for each generator.
// Throws BudgetExceeded past max_order elements.
ModuleAction close_action(const std::vector<std::vector<int>>& perm_generators,
                          const std::vector<SparseIntMatrix>& matrix_generators,
                          size_t max_order = 100000);

// M_G = M / <g·m - m>.  Signed-permutation generators are quotiented by
// orbit merging first; the rest contribute explicit relation columns.
HomologyGroup coinvariants(const ModuleAction& m);

// Cokernel of the coinvariant relations together with extra columns.
HomologyGroup coinvariants_modulo(const ModuleAction& m, const SparseIntMatrix& extra);

// H_i(G; M), i <= 2, from the normalized bar resolution.  Requires the
// multiplication table; order budgets as above.
HomologyGroup group_homology(const ModuleAction& m, int i);

}  // namespace titshom
