#pragma once

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "titshom/chain_complex.hpp"
#include "titshom/integral_symbols.hpp"

namespace titshom {

// ---------------------------------------------------------------- Z_•(S,𝔯)

// S = {0, ..., size-1} with disjoint nonempty restriction blocks.
struct RestrictionSet {
  int size = 0;
  std::vector<std::vector<int>> blocks;

  // Throws InvalidArgument unless the blocks are disjoint nonempty subsets.
  void validate() const;
  // |S \ ⊔𝔯| + |𝔯|
  int d() const;
  std::string to_string() const;
};

inline constexpr int kZComplexMaxSize = 8;

// Ordered partitions [A_1|...|A_k] of {0..m-1} into nonempty blocks, every
// block accepted by `block_ok` and the whole partition by `partition_ok`
// (block bitmasks in order).  Labels list each block ascending, blocks
// separated by kSeparator; degree = #blocks - 2.  The differential merges
// adjacent blocks with sign (-1)^{j-1} times the sorting sign.
ChainComplexZ block_partition_complex(int m, const std::function<bool(unsigned)>& block_ok,
                                      const std::function<bool(const std::vector<unsigned>&)>& partition_ok = nullptr);

// Throws BudgetExceeded when |S| > kZComplexMaxSize.
ChainComplexZ zcomplex(const RestrictionSet& r);

// ---------------------------------------------------------------- X_{•,•}

// A bar symbol ⟨κ_1|...|κ_k⟩ with each κ_j an ordered list of lines.
using LineBlock = std::vector<ZLine>;
using BarTerm = std::vector<LineBlock>;
using DChain = std::map<BarTerm, Integer>;

int bar_degree(const BarTerm& t);             // p = #blocks - 2
int x_degree(const BarTerm& t, int n);        // q = #lines - n

// True iff the lines are distinct and form an augmented partial frame of
// their span with at most two extra lines.
bool valid_block(const LineBlock& b);
// Blocks valid and their spans a direct-sum decomposition of Z^n.
bool valid_bar_term(const BarTerm& t, int n);

struct BarCanonical {
  bool zero = true;
  int sign = 0;
  BarTerm term;
};
// Sorts each block (recording parity); zero unless valid_bar_term.
BarCanonical canonical_bar(BarTerm t, int n);
void add_term(DChain& acc, BarTerm t, const Integer& coeff, int n);
DChain bar(std::initializer_list<std::pair<long long, BarTerm>> terms, int n);

// ∂ merges adjacent blocks; δ deletes one line at a time, the line at
// global position t carrying (-1)^{t-1}.
DChain bar_boundary(const DChain& x, int n);
DChain bar_delta(const DChain& x, int n);

// δ on a single X_i(V) generator over its own span; terms vanish when the
// span drops.
std::map<LineBlock, Integer> block_delta(const LineBlock& b);
// Concatenation κ·κ', canonicalized; zero if invalid.
std::map<LineBlock, Integer> block_product(const std::map<LineBlock, Integer>& a,
                                           const std::map<LineBlock, Integer>& b);

// ---------------------------------------------------------------- X_{•,q}[S]

struct LocalizedComplex {
  int n = 0;
  std::vector<ZLine> lines;  // S in the given order; labels index into it
  ChainComplexZ complex;     // bar degrees -1 .. |S|-2

  int q() const { return static_cast<int>(lines.size()) - n; }
  // The chain in label form; throws InvalidArgument for terms not supported
  // on S.  All terms must share one bar degree (returned).
  Chain localize(const DChain& x, int* degree = nullptr) const;
};

// Throws NotSpanning if S does not span Q^n, InvalidArgument for repeated
// lines, q ∉ {0,1,2} or n > 6.
LocalizedComplex x_localized(const std::vector<ZLine>& S, int n);

// The restriction set the shape's extra lines force, indexed like
// shape_vectors(shape, basis, eps) for a basis of rank n.
RestrictionSet shape_restrictions(XShape shape, int n);

// ---------------------------------------------------------------- claims

struct ClaimCheck {
  std::string claim;        // "claim 0", "claim 1 (ii)", ...
  XShape shape = XShape::X0;
  std::vector<int> eps;
  int q = 0;
  int d = 0;                // of the predicted restriction set
  int vanishing_bound = 0;  // H_i = 0 predicted for i <= d-3
  int claimed_bound = 0;    // the claim's own range
  std::vector<HomologyGroup> homology;  // degrees -1 ..
  bool matches_lemma = false;           // Z at d-2, 0 elsewhere, equal to zcomplex
  bool claim_holds = false;
  std::optional<bool> kappa_generates;  // n = 4, triple case
  double elapsed_ms = 0;

  bool ok() const { return matches_lemma && claim_holds && kappa_generates.value_or(true); }
};

struct Part6Report {
  int n = 0;
  std::vector<ClaimCheck> checks;
  bool ok() const;
};

// All sign patterns of the given shape (or of every shape available at n)
// over the standard basis.  Throws ShapeUnavailable if the shape needs a
// larger n, InvalidArgument for n outside 2..6.
Part6Report part6_claims(int n, std::optional<XShape> shape = std::nullopt,
                         const std::vector<ZVector>* basis = nullptr);

// κ = ⟨L_4|L_1,L_2,L_3,L_123⟩ - ⟨L_1,L_2,L_3,L_123|L_4⟩ over the basis.
DChain kappa_chain(const std::vector<ZVector>& basis, const std::vector<int>& eps);
DChain eta_chain(const std::vector<ZVector>& basis, const std::vector<int>& eps);

struct KappaEtaReport {
  std::vector<std::string> steps;  // passed steps in order
  bool ok() const { return !steps.empty(); }
};

// Checks ∂κ = 0, ∂η = 0, δη = -κ + κ_2 + ... + κ_5 term by term, ∂κ_j = 0
// and that each κ_j bounds in its own localized complex, and that κ
// generates H_0 of its localized complex.  Throws CertificateFailure naming
// the failed step.  `eta` overrides the constructed η.
KappaEtaReport kappa_eta_certificate(const std::vector<ZVector>& basis, const std::vector<int>& eps,
                                     const DChain* eta = nullptr);

// ---------------------------------------------------------------- identities

struct IdentityReport {
  size_t cells = 0;
  size_t leibniz = 0, dd = 0, delta_delta = 0, commute = 0;
};

// Random localized generators for n in [2, max_n]: ∂∂ = 0, δδ = 0, ∂δ = δ∂,
// and the Leibniz rule for the first two blocks.  Throws IdentityViolation.
IdentityReport verify_double_identities(size_t samples, int max_n, uint64_t seed);

}  // namespace titshom
