#pragma once

#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "titshom/chain_complex.hpp"
#include "titshom/fq_building.hpp"

namespace titshom {

// An element of St(V) in the apartment basis of LocalSteinberg(V).
struct SteinbergElement {
  FqSubspace space;
  std::vector<Integer> coords;
};

// Steinberg modules of all nonzero subspaces of F_q^n with the product
// St(V) ⊗ St(W) → St(V ⊕ W) that concatenates apartment frames.
class SteinbergAlgebra {
 public:
  SteinbergAlgebra(int n, int q);

  int n() const noexcept { return n_; }
  const FieldTable& field() const noexcept { return *f_; }
  // Memoized per subspace.
  const LocalSteinberg& local(const FqSubspace& v);

  SteinbergElement apartment(const std::vector<FqVector>& frame);
  SteinbergElement basis_element(const FqSubspace& v, size_t u);
  // Throws NonComplementary unless x.space ∩ y.space = 0.
  SteinbergElement product(const SteinbergElement& x, const SteinbergElement& y);
  // Chamber chain of the element inside its own space.
  FlagChain to_chain(const SteinbergElement& x);

 private:
  int n_;
  const FieldTable* f_;
  std::map<FqSubspace, std::unique_ptr<LocalSteinberg>> local_;
};

SteinbergElement st_product(SteinbergAlgebra& alg, const SteinbergElement& x, const SteinbergElement& y);

// Bar complex: degree i (-1 <= i <= n-2) is spanned by [x_1|...|x_{i+2}]
// over ordered decompositions V_1 ⊕ ... ⊕ V_{i+2} = F_q^n with x_j running
// over the apartment basis of St(V_j); labels are (subspace id, basis
// index) pairs separated by kSeparator.  Degree n-1 holds St ⊗ St mapping
// to the frames by x ⊗ y ↦ Σ_L x[F_L] y[F_L^-] [L_1|...|L_n].
struct BarComplexFq {
  int n = 0, q = 0;
  std::vector<FqSubspace> subspaces;  // ids used in labels
  ChainComplexZ complex;              // degrees -1 .. n-1

  int top_degree() const { return n - 2; }
  int augmentation_degree() const { return n - 1; }
};

BarComplexFq bar_complex_fq(int n, int q, const EnumerationOptions& opt = EnumerationOptions{});

struct BarExactnessReport {
  int n = 0, q = 0;
  std::vector<size_t> ranks;            // degrees -1 .. n-1 (last: St ⊗ St)
  std::vector<DegreeVerdict> lower;     // degrees -1 .. n-3
  size_t top_kernel_rank = 0;
  size_t expected_top_rank = 0;         // q^{n(n-1)}
  long truncated_euler = 0;             // Σ (-1)^{n-2-i} rank C_i over -1..n-2
  // With the St ⊗ St term attached the complex is exact at n-2 and n-1.
  HomologyGroup top_homology, augmentation_homology;

  bool lower_exact() const;
  bool augmented_exact() const { return top_homology.is_zero() && augmentation_homology.is_zero(); }
  bool ok() const;
};

BarExactnessReport verify_bar_exactness(int n, int q, const EnumerationOptions& opt = EnumerationOptions{});

// Bottom row of the rank-2 spectral sequence for GL_3(F_q).
struct Rank2Report {
  int q = 0;
  size_t steinberg_rank = 0;
  HomologyGroup e1_20;      // (St ⊗ St)_G
  HomologyGroup e1_10;      // (Z[chambers] ⊗ St)_G
  HomologyGroup st_borel;   // St_B
  bool phi_invariant = false;  // F ⊗ x ↦ x[F] is G-invariant on generators
  bool surjective = false;     // coker(E1_20 → E1_10) = 0
  std::string witness;         // u with θ = A_1 ⊗ A_u
  Integer witness_value;       // φ of the image of θ
  bool e1_10_is_z() const { return e1_10.is_z(); }
  bool ok() const;
};

Rank2Report rank2_e1_surjectivity(int q);

}  // namespace titshom
