#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "titshom/integer.hpp"
#include "titshom/smith.hpp"
#include "titshom/sparse_matrix.hpp"

namespace titshom {

// Generator labels are token sequences; -1 separates blocks where a label has
// block structure (bar symbols).
using Token = int32_t;
using Label = std::vector<Token>;
inline constexpr Token kSeparator = -1;

struct LabelHash {
  size_t operator()(const Label& l) const noexcept {
    size_t h = l.size();
    for (Token t : l) h = h * 0x9E3779B97F4A7C15ull + static_cast<uint32_t>(t) + (h >> 29);
    return h;
  }
};

std::string label_to_string(const Label& l);

template <class Tok>
struct SignedCanonical {
  bool zero = false;
  std::vector<Tok> tokens;
  int sign = 1;

  static SignedCanonical make_zero() { return {true, {}, 0}; }
};

// Sorts the tokens, recording the permutation parity.  Zero iff a token
// repeats or `valid` rejects the sorted form.
template <class Tok, class Less = std::less<Tok>>
SignedCanonical<Tok> canonical_generator(
    std::vector<Tok> tokens, Less less = Less{},
    const std::function<bool(const std::vector<Tok>&)>& valid = nullptr) {
  int sign = 1;
  // insertion sort: labels are short, and the swap count is the parity
  for (size_t i = 1; i < tokens.size(); ++i) {
    for (size_t j = i; j > 0 && less(tokens[j], tokens[j - 1]); --j) {
      std::swap(tokens[j], tokens[j - 1]);
      sign = -sign;
    }
  }
  for (size_t i = 1; i < tokens.size(); ++i) {
    if (!less(tokens[i - 1], tokens[i])) return SignedCanonical<Tok>::make_zero();
  }
  if (valid && !valid(tokens)) return SignedCanonical<Tok>::make_zero();
  return {false, std::move(tokens), sign};
}

struct HomologyGroup {
  size_t betti = 0;
  std::vector<Integer> torsion;

  bool is_zero() const { return betti == 0 && torsion.empty(); }
  bool is_z() const { return betti == 1 && torsion.empty(); }
  std::string to_string() const;
  friend bool operator==(const HomologyGroup&, const HomologyGroup&) = default;
};

using Chain = std::vector<std::pair<Label, Integer>>;
// Image of a generator of degree d as a combination in degree d-1.
using BoundaryRule = std::function<Chain(int degree, const Label&)>;

class ChainComplexZ {
 public:
  ChainComplexZ() = default;

  // Degrees min_degree .. min_degree + bases.size() - 1.  boundaries[k] maps
  // degree min_degree + k to the degree below (boundaries[0] has no rows).
  // Verifies d∘d = 0.
  static ChainComplexZ from_matrices(int min_degree, std::vector<std::vector<Label>> bases,
                                     std::vector<SparseIntMatrix> boundaries);

  int min_degree() const noexcept { return min_degree_; }
  int max_degree() const noexcept { return min_degree_ + static_cast<int>(bases_.size()) - 1; }
  bool in_range(int d) const noexcept { return d >= min_degree() && d <= max_degree(); }

  // Empty outside the degree range.
  const std::vector<Label>& basis(int d) const;
  size_t rank_of(int d) const { return basis(d).size(); }
  // C_d -> C_{d-1}; a matrix with zero rows/cols outside the range.
  SparseIntMatrix boundary(int d) const;

  // Index of a generator, or -1.
  long index_of(int d, const Label& l) const;
  // Coefficient vector of a chain in degree d; throws on unknown labels.
  std::vector<Integer> to_vector(int d, const Chain& chain) const;
  Chain to_chain(int d, const std::vector<Integer>& v) const;

  // Sum of (-1)^d rank C_d.
  long euler_characteristic() const;

  std::string to_json() const;

 private:
  friend ChainComplexZ assemble_complex(int, std::vector<std::vector<Label>>, const BoundaryRule&);
  void build_index();

  int min_degree_ = 0;
  std::vector<std::vector<Label>> bases_;
  std::vector<SparseIntMatrix> boundaries_;
  std::vector<std::unordered_map<Label, size_t, LabelHash>> index_;
};

// Bases are sorted; the rule's images must lie in the listed bases.
// Throws DDNotZero if the assembled boundaries do not square to zero.
ChainComplexZ assemble_complex(int min_degree, std::vector<std::vector<Label>> bases,
                               const BoundaryRule& rule);

HomologyGroup homology(const ChainComplexZ& c, int i,
                       const CoefficientRing& ring = CoefficientRing::integers());
// H_d for every degree in range, each boundary reduced once.
std::vector<HomologyGroup> all_homology(const ChainComplexZ& c,
                                        const CoefficientRing& ring = CoefficientRing::integers());

struct DegreeVerdict {
  int degree = 0;
  bool exact = false;
  HomologyGroup homology;
};

struct ExactnessReport {
  std::vector<DegreeVerdict> degrees;
  long euler_characteristic = 0;
  bool all_exact() const;
};

ExactnessReport exactness_report(const ChainComplexZ& c, int lo, int hi);

}  // namespace titshom
