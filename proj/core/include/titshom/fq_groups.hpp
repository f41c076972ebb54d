#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "titshom/actions.hpp"
#include "titshom/finite_field.hpp"
#include "titshom/fq_building.hpp"

namespace titshom {

enum class GroupFamily { GL, SL, Borel };

// "GL:n:q", "SL:n:q" or "B:n:q".
struct GroupSpec {
  GroupFamily family = GroupFamily::GL;
  int n = 2;
  int q = 2;

  static GroupSpec parse(const std::string& text);
  std::string to_string() const;
  size_t order() const;
};

// GL: a transvection (one per F_p-basis element of F_q) and a monomial
// generator, n-cycle times a diagonal with primitive determinant.
// SL: elementary transvections over an F_p-basis of F_q.
// B: diagonal generators plus superdiagonal transvections.
std::vector<FqMatrix> group_generators(const GroupSpec& spec);

// Order of the subgroup generated, by breadth-first closure.  Throws
// BudgetExceeded past max_order.
size_t generated_order(const FieldTable& f, const std::vector<FqMatrix>& gens,
                       size_t max_order = 100000);

// g as a permutation of F_q^n, vectors encoded in base q (first coordinate
// least significant).
std::vector<int> vector_permutation(const FieldTable& f, const FqMatrix& g);

// Action of g on St(F_q^n) in the apartment basis of `st` (built on the
// whole space): column u holds the coordinates of A_{g u}.
SparseIntMatrix steinberg_matrix(const LocalSteinberg& st, const FqMatrix& g);
// Permutation of the chambers of the building induced by g.
SparseIntMatrix chamber_matrix(const TitsBuilding& b, const FqMatrix& g);
// Index (i, j) ↦ i·B.rows() + j.
SparseIntMatrix kronecker(const SparseIntMatrix& a, const SparseIntMatrix& b);

enum class ModuleKind { Trivial, Steinberg, SteinbergSquared, ChambersSteinberg };
// "trivial", "st", "stst", "chst".
ModuleKind parse_module_kind(const std::string& text);
std::string to_string(ModuleKind k);

// The action of the spec's generators on the module.  With `with_table`, the
// group is closed through its permutation action on F_q^n (bounded by
// max_order) so that group_homology applies.
ModuleAction fq_module_action(const GroupSpec& spec, ModuleKind kind, bool with_table = false,
                              size_t max_order = kH1OrderBudget);

}  // namespace titshom
