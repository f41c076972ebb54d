#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "titshom/dense_matrix.hpp"
#include "titshom/integer.hpp"

namespace titshom {

using ZVector = std::vector<Integer>;

ZVector zvec(std::initializer_list<long long> v);
std::string to_string(const ZVector& v);

// Primitive vector with first nonzero entry positive.
struct ZLine {
  ZVector v;
  int dim() const noexcept { return static_cast<int>(v.size()); }
  friend auto operator<=>(const ZLine&, const ZLine&) = default;
};

struct NormalizedLine {
  ZLine line;
  int sign = 1;  // input = sign · content · line.v
};
// Throws ZeroVector.
NormalizedLine normalize_line(const ZVector& v);
ZLine line_of(const ZVector& v);

// Ordered lines of Z^n; `signs` remembers normalization flips.
struct ApartmentSymbol {
  std::vector<ZLine> lines;
  std::vector<int> signs;

  static ApartmentSymbol from_vectors(const std::vector<ZVector>& vectors);
  // "a11,a12;a21,a22": one vector per ';'-separated group.
  static ApartmentSymbol parse(const std::string& text);
  int ambient() const { return lines.empty() ? 0 : lines.front().dim(); }
  // Determinant of the matrix with the line vectors as columns.
  Integer det() const;
  bool unimodular() const { return abs(det()).is_one(); }
  std::string to_string() const;
  friend bool operator==(const ApartmentSymbol& a, const ApartmentSymbol& b) { return a.lines == b.lines; }
};

// Q-subspace of Q^n stored as its saturated lattice in Hermite form.
struct QSubspace {
  std::vector<ZVector> basis;
  int dim() const noexcept { return static_cast<int>(basis.size()); }
  friend auto operator<=>(const QSubspace&, const QSubspace&) = default;
};
QSubspace saturated_span(const std::vector<ZVector>& vectors, int n);

using QFlag = std::vector<QSubspace>;
using SteinbergChainQ = std::map<QFlag, Integer>;

void add_chain(SteinbergChainQ& acc, const SteinbergChainQ& x, const Integer& c = Integer(1));
// Signed sum over all orderings of the complete flags of nested spans; 0
// for dependent lines.
SteinbergChainQ apartment_eval(const std::vector<ZLine>& lines);
SteinbergChainQ apartment_eval(const ApartmentSymbol& s);
// Simplicial boundary (delete member k with sign (-1)^k) of a chain of
// complete flags.
std::map<QFlag, Integer> chain_boundary(const SteinbergChainQ& c);

struct ReductionStep {
  int depth = 0;
  Integer det;                   // |det| of the reduced symbol
  ZVector pivot;                 // inserted vector
  std::vector<Integer> children; // |det| of each nonzero replacement
};

struct AshRudolphResult {
  std::vector<std::pair<Integer, ApartmentSymbol>> terms;
  std::vector<ReductionStep> trace;
  bool determinants_decrease() const;
  bool all_unimodular() const;
};

// Expresses an apartment symbol as a Z-combination of unimodular ones.
AshRudolphResult ash_rudolph(const ApartmentSymbol& s);

// ---------------------------------------------------------------- X_•(Z^n)

// Augmentation piece over frame positions: a 2-set gives one line, a 3-set
// gives one line or (with two_lines) the partial and full sums.
struct AugmentationPart {
  std::vector<int> indices;  // positions in the frame list
  std::vector<int> signs;
  bool two_lines = false;
};

struct AugCertificate {
  std::vector<int> frame;  // positions in the line list
  std::vector<AugmentationPart> parts;
};

// A generator of X_i(Z^n) in canonical (sorted) order with its sign.
struct XTerm {
  bool zero = true;
  int sign = 0;
  std::vector<ZLine> lines;
  int degree(int n) const { return static_cast<int>(lines.size()) - n; }
};

using XChain = std::map<std::vector<ZLine>, Integer>;

// Canonical form ignoring certificates: zero on repeats or when the lines
// do not span Q^n.
XTerm canonical_x(const std::vector<ZLine>& lines, int n);
// Throws BadCertificate if the certificate does not reproduce the lines.
XTerm byk_generator(const std::vector<ZLine>& lines, const AugCertificate& cert, int n);
// Throws DegreeZero on X_0 input.
XChain byk_delta(const std::vector<ZLine>& canonical_lines, int n);
XChain byk_delta(const XChain& x, int n);
SteinbergChainQ byk_psi(const XChain& x0);

// Exhaustive search for a certificate exhibiting the lines as an augmented
// partial frame of the saturation of their span.  At most rank+2 lines.
std::optional<AugCertificate> recognize_apf(const std::vector<ZLine>& lines);
std::optional<AugCertificate> recognize_apf(const std::vector<ZVector>& vectors);

// Generator shapes over a basis v_1..v_r: the basis followed by the extra
// lines of the shape, with the given signs.
enum class XShape { X0, X1Pair, X1Triple, X2Nested, X2TwoPairs, X2TriplePair, X2TwoTriples };
int shape_degree(XShape s);
int shape_min_rank(XShape s);
int shape_sign_count(XShape s);
std::string to_string(XShape s);
std::vector<XShape> all_shapes();
std::vector<ZVector> shape_vectors(XShape s, const std::vector<ZVector>& basis, const std::vector<int>& eps);
std::vector<std::vector<int>> sign_patterns(int count);

// Random basis of Z^n (columns of a random unimodular matrix).
std::vector<ZVector> random_unimodular_basis(int n, std::mt19937_64& rng, int steps = 0);
std::vector<ZVector> standard_basis(int n);
// True iff the vectors form a basis of their saturated span.
bool is_primitive_system(const std::vector<ZVector>& vectors);

// ---------------------------------------------------------------- flags

// A flag of saturated summands, each given by spanning vectors.
using ZFlag = std::vector<std::vector<ZVector>>;

struct BasisSearchResult {
  bool found = false;
  bool budget_exhausted = false;
  std::vector<ZVector> basis;
  size_t expansions = 0;
  std::string reason;
};

// Basis of Z^n adapted to every member of both flags, built cell by cell
// over the intersection grid V_i ∩ W_j.  Failure is not a proof of
// incompatibility.  Throws NotSaturated on a non-saturated member and
// InvalidArgument on a non-nested flag.
BasisSearchResult common_basis_search(const ZFlag& a, const ZFlag& b, int n, size_t budget = 10000);
// Independent check: unimodular and every member is spanned by a subset.
bool verify_adapted_basis(const std::vector<ZVector>& basis, const ZFlag& a, const ZFlag& b, int n);

}  // namespace titshom
