#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "titshom/chain_complex.hpp"
#include "titshom/finite_field.hpp"
#include "titshom/smith.hpp"

namespace titshom {

inline constexpr int kDefaultFieldBound = 16;
inline constexpr size_t kDefaultFlagBudget = 2'000'000;

// Subspace of F_q^n in reduced row echelon form; equal subspaces have equal
// representations.
class FqSubspace {
 public:
  FqSubspace() = default;
  static FqSubspace span(const FieldTable& f, int n, std::vector<FqVector> vectors);
  static FqSubspace whole(int n);

  int ambient() const noexcept { return n_; }
  int dim() const noexcept { return dim_; }
  FqVector row(int i) const;
  std::vector<FqVector> rows() const;
  const std::vector<FqElem>& data() const noexcept { return rows_; }

  bool contains(const FieldTable& f, const FqVector& v) const;
  bool contains(const FieldTable& f, const FqSubspace& w) const;
  std::string to_string() const;

  friend auto operator<=>(const FqSubspace&, const FqSubspace&) = default;

 private:
  int n_ = 0;
  int dim_ = 0;
  std::vector<FqElem> rows_;  // dim × n, row-major
};

struct FqSubspaceHash {
  size_t operator()(const FqSubspace& s) const noexcept;
};

using FqFlag = std::vector<FqSubspace>;

struct EnumerationOptions {
  int field_bound = kDefaultFieldBound;
  size_t flag_budget = kDefaultFlagBudget;
};

// All d-dimensional subspaces of F_q^n, sorted.  Throws FieldTooLarge when
// q exceeds the bound.  Results may be served from the on-disk memo cache
// (TITSHOM_CACHE_DIR).
std::vector<FqSubspace> subspaces(int n, int q, int d,
                                  const EnumerationOptions& opt = EnumerationOptions{});

// Flag complex of proper nonzero subspaces, reduced (empty flag at -1).
class TitsBuilding {
 public:
  TitsBuilding(int n, int q, const EnumerationOptions& opt = EnumerationOptions{});

  int n() const noexcept { return n_; }
  int q() const noexcept { return field_->q(); }
  const FieldTable& field() const noexcept { return *field_; }

  // Proper nonzero subspaces ordered by (dim, rref); labels use these ids.
  const std::vector<FqSubspace>& vertices() const noexcept { return vertices_; }
  long vertex_id(const FqSubspace& s) const;
  const ChainComplexZ& complex() const noexcept { return complex_; }
  // Complete flags (degree n-2 basis).
  const std::vector<Label>& chambers() const { return complex_.basis(n_ - 2); }
  long chamber_index(const FqFlag& flag) const;
  FqFlag flag_of(const Label& l) const;
  // Counts of simplices by number of members (index 0 = empty flag).
  std::vector<size_t> face_counts() const;

 private:
  int n_;
  const FieldTable* field_;
  std::vector<FqSubspace> vertices_;
  std::unordered_map<FqSubspace, long, FqSubspaceHash> vertex_index_;
  ChainComplexZ complex_;
};

ChainComplexZ building_complex(int n, int q, const EnumerationOptions& opt = EnumerationOptions{});

// Chain of a complete flag chamber in a fixed ambient, keyed by member list.
using FlagChain = std::map<FqFlag, Integer>;

// Signed sum over the Weyl group of the chambers spanned by the permuted
// columns of g (the n columns must be independent).
FlagChain apartment_chain(const FieldTable& f, const std::vector<FqVector>& frame);
std::vector<Integer> apartment_class_fq(const TitsBuilding& b, const FqMatrix& g);

struct SteinbergModuleFq {
  int n = 0, q = 0;
  std::vector<Label> chambers;
  SparseIntMatrix kernel;  // columns: Z-basis of St in chamber coordinates
};
SteinbergModuleFq steinberg(const TitsBuilding& b);
SteinbergModuleFq steinberg(int n, int q, const EnumerationOptions& opt = EnumerationOptions{});

// Coordinates of the apartment classes A_u (u unitriangular) in the kernel
// basis, as a |U|×|U| matrix, together with its Smith form.
struct UnipotentBasisCheck {
  DenseIntMatrix change_of_basis;
  SmithForm smith;
  bool unimodular() const;
};
UnipotentBasisCheck unipotent_basis_check(int n, int q,
                                          const EnumerationOptions& opt = EnumerationOptions{});
SmithForm unipotent_basis_matrix(int n, int q, const EnumerationOptions& opt = EnumerationOptions{});

// Unipotent u with: w1·u·w2 upper triangular (w_i permutation matrices)
// only for w1 = w2 = 1.  Verified exhaustively before returning.
FqMatrix bruhat_witness(int n, int q);
bool verify_bruhat_witness(const FieldTable& f, const FqMatrix& u);

// The Steinberg module of a subspace V ⊆ F_q^n in the apartment basis
// {A_{g u} : u ∈ U}, where g is the canonical (rref) basis of V.
// Coordinates of a cycle are read off the opposite chambers g·u·w0·B.
class LocalSteinberg {
 public:
  LocalSteinberg(const FieldTable& f, const FqSubspace& v);

  const FieldTable& field() const noexcept { return *f_; }
  int dim() const noexcept { return d_; }
  size_t rank() const noexcept { return unipotents_.size(); }
  const std::vector<FqMatrix>& unipotents() const noexcept { return unipotents_; }
  // Frame (ordered basis of V) whose apartment is basis element i.
  const std::vector<FqVector>& frame(size_t i) const { return frames_[i]; }
  // Basis element index for an opposite chamber, or -1.
  long opposite_index(const FqFlag& chamber) const;
  // Coordinates in the apartment basis of an element of St(V) given as a
  // chamber chain.  Exact when the chain is a cycle.
  std::vector<Integer> coordinates(const FlagChain& chain) const;
  // Coordinates of the apartment class of an arbitrary frame of V.
  std::vector<Integer> apartment_coordinates(const std::vector<FqVector>& frame) const;
  int w0_sign() const noexcept { return w0_sign_; }

 private:
  const FieldTable* f_;
  int d_;
  int w0_sign_;
  std::vector<FqMatrix> unipotents_;
  std::vector<std::vector<FqVector>> frames_;
  std::map<FqFlag, size_t> opposite_;
};

// Parity of a permutation of 0..k-1 and the full permutation list in
// lexicographic order.
int permutation_sign(const std::vector<int>& p);
std::vector<std::vector<int>> all_permutations(int k);

}  // namespace titshom
