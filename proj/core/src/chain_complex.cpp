#include "titshom/chain_complex.hpp"

#include <sstream>

#include "json.hpp"
#include "titshom/errors.hpp"

namespace titshom {

std::string label_to_string(const Label& l) {
  std::string s;
  bool first = true;
  for (Token t : l) {
    if (t == kSeparator) {
      s += '|';
      first = true;
      continue;
    }
    if (!first) s += ',';
    s += std::to_string(t);
    first = false;
  }
  return s;
}

std::string HomologyGroup::to_string() const {
  if (is_zero()) return "0";
  std::string s;
  if (betti > 0) s = betti == 1 ? "Z" : "Z^" + std::to_string(betti);
  for (const auto& t : torsion) {
    if (!s.empty()) s += " + ";
    s += "Z/" + t.to_string();
  }
  return s;
}

namespace {
const std::vector<Label> kEmptyBasis;

void check_dd(int min_degree, const std::vector<std::vector<Label>>& bases,
              const std::vector<SparseIntMatrix>& boundaries) {
  for (size_t k = 1; k < boundaries.size(); ++k) {
    SparseIntMatrix dd = boundaries[k - 1] * boundaries[k];
    for (size_t c = 0; c < dd.cols(); ++c) {
      if (!dd.column(c).empty()) {
        throw DDNotZero(min_degree + static_cast<int>(k), label_to_string(bases[k][c]));
      }
    }
  }
}
}  // namespace

ChainComplexZ ChainComplexZ::from_matrices(int min_degree, std::vector<std::vector<Label>> bases,
                                           std::vector<SparseIntMatrix> boundaries) {
  if (bases.size() != boundaries.size()) {
    throw InvalidArgument("from_matrices: one boundary per degree required");
  }
  for (size_t k = 0; k < bases.size(); ++k) {
    size_t below = k == 0 ? 0 : bases[k - 1].size();
    if (boundaries[k].cols() != bases[k].size() || boundaries[k].rows() != below) {
      throw InvalidArgument("from_matrices: boundary shape mismatch at degree " +
                            std::to_string(min_degree + static_cast<int>(k)));
    }
  }
  check_dd(min_degree, bases, boundaries);
  ChainComplexZ c;
  c.min_degree_ = min_degree;
  c.bases_ = std::move(bases);
  c.boundaries_ = std::move(boundaries);
  c.build_index();
  return c;
}

void ChainComplexZ::build_index() {
  index_.assign(bases_.size(), {});
  for (size_t k = 0; k < bases_.size(); ++k) {
    index_[k].reserve(bases_[k].size());
    for (size_t i = 0; i < bases_[k].size(); ++i) index_[k].emplace(bases_[k][i], i);
  }
}

const std::vector<Label>& ChainComplexZ::basis(int d) const {
  if (!in_range(d)) return kEmptyBasis;
  return bases_[static_cast<size_t>(d - min_degree_)];
}

SparseIntMatrix ChainComplexZ::boundary(int d) const {
  if (in_range(d)) return boundaries_[static_cast<size_t>(d - min_degree_)];
  return SparseIntMatrix(rank_of(d - 1), rank_of(d));
}

long ChainComplexZ::index_of(int d, const Label& l) const {
  if (!in_range(d)) return -1;
  const auto& idx = index_[static_cast<size_t>(d - min_degree_)];
  auto it = idx.find(l);
  return it == idx.end() ? -1 : static_cast<long>(it->second);
}

std::vector<Integer> ChainComplexZ::to_vector(int d, const Chain& chain) const {
  std::vector<Integer> v(rank_of(d));
  for (const auto& [l, coeff] : chain) {
    long i = index_of(d, l);
    if (i < 0) throw InvalidArgument("unknown generator " + label_to_string(l));
    v[static_cast<size_t>(i)] += coeff;
  }
  return v;
}

Chain ChainComplexZ::to_chain(int d, const std::vector<Integer>& v) const {
  Chain out;
  const auto& b = basis(d);
  for (size_t i = 0; i < v.size() && i < b.size(); ++i)
    if (!v[i].is_zero()) out.emplace_back(b[i], v[i]);
  return out;
}

long ChainComplexZ::euler_characteristic() const {
  long chi = 0;
  for (int d = min_degree(); d <= max_degree(); ++d) {
    long r = static_cast<long>(rank_of(d));
    chi += (d % 2 == 0) ? r : -r;
  }
  return chi;
}

std::string ChainComplexZ::to_json() const {
  nlohmann::json j;
  j["min_degree"] = min_degree_;
  j["max_degree"] = max_degree();
  nlohmann::json degrees = nlohmann::json::array();
  for (int d = min_degree(); d <= max_degree(); ++d) {
    nlohmann::json deg;
    deg["degree"] = d;
    nlohmann::json labels = nlohmann::json::array();
    for (const auto& l : basis(d)) labels.push_back(label_to_string(l));
    deg["basis"] = std::move(labels);
    std::ostringstream os;
    write_triplets(os, boundary(d));
    deg["boundary"] = os.str();
    degrees.push_back(std::move(deg));
  }
  j["degrees"] = std::move(degrees);
  return j.dump(1);
}

ChainComplexZ assemble_complex(int min_degree, std::vector<std::vector<Label>> bases,
                               const BoundaryRule& rule) {
  for (auto& b : bases) {
    std::sort(b.begin(), b.end());
    if (std::adjacent_find(b.begin(), b.end()) != b.end()) {
      throw InvalidArgument("assemble_complex: duplicate generator");
    }
  }
  ChainComplexZ c;
  c.min_degree_ = min_degree;
  c.bases_ = std::move(bases);
  c.build_index();
  c.boundaries_.reserve(c.bases_.size());
  for (size_t k = 0; k < c.bases_.size(); ++k) {
    const int d = min_degree + static_cast<int>(k);
    SparseIntMatrix m(k == 0 ? 0 : c.bases_[k - 1].size(), c.bases_[k].size());
    if (k > 0) {
      for (size_t g = 0; g < c.bases_[k].size(); ++g) {
        SparseIntMatrix::Column col;
        for (auto& [l, coeff] : rule(d, c.bases_[k][g])) {
          if (coeff.is_zero()) continue;
          long i = c.index_of(d - 1, l);
          if (i < 0) {
            throw InvalidArgument("boundary of " + label_to_string(c.bases_[k][g]) +
                                  " leaves the basis: " + label_to_string(l));
          }
          col.emplace_back(static_cast<int>(i), std::move(coeff));
        }
        m.set_column(g, std::move(col));
      }
    }
    c.boundaries_.push_back(std::move(m));
  }
  check_dd(min_degree, c.bases_, c.boundaries_);
  return c;
}

namespace {

struct Reduced {
  size_t rank = 0;
  std::vector<Integer> torsion;
};

Reduced reduce(const SparseIntMatrix& m, const CoefficientRing& ring) {
  Reduced r;
  if (ring.kind == RingKind::PrimeField) {
    r.rank = rank(m, ring);
    return r;
  }
  SmithForm s = snf(m);
  r.rank = s.rank;
  if (ring.kind == RingKind::Integers)
    for (const auto& d : s.diagonal)
      if (!d.is_one()) r.torsion.push_back(d);
  return r;
}

HomologyGroup combine(size_t dim, const Reduced& out, const Reduced& in) {
  HomologyGroup h;
  h.betti = dim - out.rank - in.rank;
  h.torsion = in.torsion;
  return h;
}

}  // namespace

HomologyGroup homology(const ChainComplexZ& c, int i, const CoefficientRing& ring) {
  if (!c.in_range(i)) {
    throw DegreeOutOfRange("degree " + std::to_string(i) + " outside [" +
                           std::to_string(c.min_degree()) + "," + std::to_string(c.max_degree()) +
                           "]");
  }
  return combine(c.rank_of(i), reduce(c.boundary(i), ring), reduce(c.boundary(i + 1), ring));
}

std::vector<HomologyGroup> all_homology(const ChainComplexZ& c, const CoefficientRing& ring) {
  std::vector<Reduced> red;
  for (int d = c.min_degree(); d <= c.max_degree() + 1; ++d) red.push_back(reduce(c.boundary(d), ring));
  std::vector<HomologyGroup> out;
  for (int d = c.min_degree(); d <= c.max_degree(); ++d) {
    size_t k = static_cast<size_t>(d - c.min_degree());
    out.push_back(combine(c.rank_of(d), red[k], red[k + 1]));
  }
  return out;
}

bool ExactnessReport::all_exact() const {
  return std::all_of(degrees.begin(), degrees.end(), [](const DegreeVerdict& v) { return v.exact; });
}

ExactnessReport exactness_report(const ChainComplexZ& c, int lo, int hi) {
  ExactnessReport r;
  r.euler_characteristic = c.euler_characteristic();
  if (lo > hi) return r;
  auto all = all_homology(c);
  for (int d = lo; d <= hi; ++d) {
    DegreeVerdict v;
    v.degree = d;
    v.homology = c.in_range(d) ? all[static_cast<size_t>(d - c.min_degree())] : HomologyGroup{};
    v.exact = v.homology.is_zero();
    r.degrees.push_back(std::move(v));
  }
  return r;
}

}  // namespace titshom
