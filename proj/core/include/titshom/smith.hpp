#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "titshom/dense_matrix.hpp"
#include "titshom/integer.hpp"
#include "titshom/sparse_matrix.hpp"

namespace titshom {

enum class RingKind { Integers, Rationals, PrimeField };

struct CoefficientRing {
  RingKind kind = RingKind::Integers;
  int64_t p = 0;

  static CoefficientRing integers() { return {}; }
  static CoefficientRing rationals() { return {RingKind::Rationals, 0}; }
  // Throws InvalidArgument unless p is prime.
  static CoefficientRing prime_field(int64_t p);
  std::string name() const;
};

bool is_prime(int64_t p);

struct SmithForm {
  std::vector<Integer> diagonal;  // d_1 | d_2 | ... | d_r, all positive
  size_t rank = 0;
  // With transforms: U * A * V = D (the diagonal padded with zeros).
  std::optional<DenseIntMatrix> U, V;
};

// Sparse elimination; transforms (if requested) go through the dense path.
SmithForm snf(const SparseIntMatrix& m, bool with_transforms = false);
SmithForm snf_dense(const DenseIntMatrix& m, bool with_transforms = false);

// Rearranges a list of nonzero diagonal entries into a divisibility chain
// of positive integers describing the same abelian group.
std::vector<Integer> invariant_factors(std::vector<Integer> diagonal);

size_t rank(const SparseIntMatrix& m, const CoefficientRing& ring = CoefficientRing::integers());

// Columns are a basis of ker m over the ring.  Over Z the basis is saturated;
// over F_p the entries are representatives in [0, p).
SparseIntMatrix kernel_basis(const SparseIntMatrix& m,
                             const CoefficientRing& ring = CoefficientRing::integers());

struct CokernelInvariants {
  size_t betti = 0;
  std::vector<Integer> torsion;  // entries > 1, each dividing the next
};
// Z^{rows} / column span.
CokernelInvariants cokernel_invariants(const SparseIntMatrix& m);

}  // namespace titshom
