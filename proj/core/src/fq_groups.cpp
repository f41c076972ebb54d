#include "titshom/fq_groups.hpp"

#include <optional>
#include <set>
#include <sstream>

#include "titshom/errors.hpp"

namespace titshom {

GroupSpec GroupSpec::parse(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() != 3) throw ParseError("group spec must look like GL:n:q, got '" + text + "'");
  GroupSpec s;
  if (parts[0] == "GL") s.family = GroupFamily::GL;
  else if (parts[0] == "SL") s.family = GroupFamily::SL;
  else if (parts[0] == "B") s.family = GroupFamily::Borel;
  else throw ParseError("unknown group family '" + parts[0] + "'");
  try {
    s.n = std::stoi(parts[1]);
    s.q = std::stoi(parts[2]);
  } catch (const std::exception&) {
    throw ParseError("bad n or q in group spec '" + text + "'");
  }
  if (s.n < 1) throw InvalidArgument("group spec needs n >= 1");
  if (!prime_power(s.q)) throw InvalidArgument("q must be a prime power");
  return s;
}

std::string GroupSpec::to_string() const {
  const char* fam = family == GroupFamily::GL ? "GL" : family == GroupFamily::SL ? "SL" : "B";
  return std::string(fam) + ":" + std::to_string(n) + ":" + std::to_string(q);
}

size_t GroupSpec::order() const {
  size_t qn = 1, gl = 1;
  for (int i = 0; i < n; ++i) qn *= static_cast<size_t>(q);
  size_t qi = 1;
  for (int i = 0; i < n; ++i) {
    gl *= qn - qi;
    qi *= static_cast<size_t>(q);
  }
  switch (family) {
    case GroupFamily::GL: return gl;
    case GroupFamily::SL: return gl / static_cast<size_t>(q - 1);
    case GroupFamily::Borel: {
      size_t b = 1;
      for (int i = 0; i < n; ++i) b *= static_cast<size_t>(q - 1);
      for (int i = 0; i < n * (n - 1) / 2; ++i) b *= static_cast<size_t>(q);
      return b;
    }
  }
  return 0;
}

std::vector<FqMatrix> group_generators(const GroupSpec& spec) {
  const FieldTable& f = FieldTable::get(spec.q);
  const int n = spec.n;
  const FqElem w = f.primitive();
  std::vector<FqMatrix> gens;
  auto transvection = [&](int i, int j, FqElem a) {
    FqMatrix t = FqMatrix::identity(n);
    t(i, j) = a;
    return t;
  };
  switch (spec.family) {
    case GroupFamily::GL: {
      if (n == 1) {
        FqMatrix d(1);
        d(0, 0) = w;
        return {d};
      }
      // one transvection per F_p-basis element of F_q (a single one when q = p)
      FqElem a_k = 1;
      for (int k = 0; k < f.degree(); ++k, a_k = f.mul(a_k, w)) gens.push_back(transvection(0, 1, a_k));
      std::vector<int> cycle(static_cast<size_t>(n));
      for (int j = 0; j < n; ++j) cycle[static_cast<size_t>(j)] = (j + 1) % n;
      FqMatrix p = permutation_matrix(cycle);
      // sign of an n-cycle is (-1)^{n-1}; compensate so det = w
      const FqElem a = (n % 2 == 0) ? f.neg(w) : w;
      FqMatrix d = FqMatrix::identity(n);
      d(0, 0) = a;
      gens.push_back(mul(f, p, d));
      break;
    }
    case GroupFamily::SL: {
      std::vector<FqElem> basis{1};
      for (int k = 1; k < f.degree(); ++k) basis.push_back(f.mul(basis.back(), w));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (i != j)
            for (FqElem a : basis) gens.push_back(transvection(i, j, a));
      if (gens.empty()) gens.push_back(FqMatrix::identity(n));
      break;
    }
    case GroupFamily::Borel: {
      if (f.q() > 2)
        for (int i = 0; i < n; ++i) {
          FqMatrix d = FqMatrix::identity(n);
          d(i, i) = w;
          gens.push_back(d);
        }
      for (int i = 0; i + 1 < n; ++i) gens.push_back(transvection(i, i + 1, 1));
      if (gens.empty()) gens.push_back(FqMatrix::identity(n));
      break;
    }
  }
  return gens;
}

size_t generated_order(const FieldTable& f, const std::vector<FqMatrix>& gens, size_t max_order) {
  if (gens.empty()) return 1;
  std::set<FqMatrix> seen{FqMatrix::identity(gens.front().n)};
  std::vector<FqMatrix> queue(seen.begin(), seen.end());
  for (size_t head = 0; head < queue.size(); ++head) {
    for (const auto& g : gens) {
      FqMatrix h = mul(f, g, queue[head]);
      if (!seen.insert(h).second) continue;
      if (seen.size() > max_order) throw BudgetExceeded("generated group exceeds " + std::to_string(max_order));
      queue.push_back(std::move(h));
    }
  }
  return seen.size();
}

std::vector<int> vector_permutation(const FieldTable& f, const FqMatrix& g) {
  const int q = f.q(), n = g.n;
  size_t total = 1;
  for (int i = 0; i < n; ++i) total *= static_cast<size_t>(q);
  std::vector<int> perm(total);
  FqVector v(static_cast<size_t>(n));
  for (size_t code = 0; code < total; ++code) {
    size_t c = code;
    for (int i = 0; i < n; ++i) {
      v[static_cast<size_t>(i)] = static_cast<FqElem>(c % static_cast<size_t>(q));
      c /= static_cast<size_t>(q);
    }
    FqVector w = apply(f, g, v);
    size_t out = 0;
    for (int i = n; i-- > 0;) out = out * static_cast<size_t>(q) + w[static_cast<size_t>(i)];
    perm[code] = static_cast<int>(out);
  }
  return perm;
}

namespace {

SparseIntMatrix::Column dense_to_column(const std::vector<Integer>& v) {
  SparseIntMatrix::Column col;
  for (size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) col.emplace_back(static_cast<int>(i), v[i]);
  return col;
}

}  // namespace

SparseIntMatrix steinberg_matrix(const LocalSteinberg& st, const FqMatrix& g) {
  if (st.dim() != g.n) throw InvalidArgument("steinberg_matrix: dimension mismatch");
  const FieldTable& f = st.field();
  SparseIntMatrix m(st.rank(), st.rank());
  for (size_t u = 0; u < st.rank(); ++u) {
    std::vector<FqVector> frame;
    for (const auto& v : st.frame(u)) frame.push_back(apply(f, g, v));
    m.set_column(u, dense_to_column(st.apartment_coordinates(frame)));
  }
  return m;
}

SparseIntMatrix chamber_matrix(const TitsBuilding& b, const FqMatrix& g) {
  const FieldTable& f = b.field();
  const auto& chambers = b.chambers();
  SparseIntMatrix m(chambers.size(), chambers.size());
  for (size_t c = 0; c < chambers.size(); ++c) {
    FqFlag image;
    for (const auto& s : b.flag_of(chambers[c])) {
      std::vector<FqVector> rows;
      for (const auto& r : s.rows()) rows.push_back(apply(f, g, r));
      image.push_back(FqSubspace::span(f, b.n(), std::move(rows)));
    }
    const long idx = b.chamber_index(image);
    if (idx < 0) throw Error("chamber image missing from building");
    m.set_column(c, {{static_cast<int>(idx), Integer(1)}});
  }
  return m;
}

SparseIntMatrix kronecker(const SparseIntMatrix& a, const SparseIntMatrix& b) {
  SparseIntMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (size_t i = 0; i < a.cols(); ++i)
    for (size_t j = 0; j < b.cols(); ++j) {
      SparseIntMatrix::Column col;
      for (const auto& [ra, va] : a.column(i))
        for (const auto& [rb, vb] : b.column(j))
          col.emplace_back(static_cast<int>(static_cast<size_t>(ra) * b.rows() + static_cast<size_t>(rb)), va * vb);
      k.set_column(i * b.cols() + j, std::move(col));
    }
  return k;
}

ModuleKind parse_module_kind(const std::string& text) {
  if (text == "trivial") return ModuleKind::Trivial;
  if (text == "st") return ModuleKind::Steinberg;
  if (text == "stst") return ModuleKind::SteinbergSquared;
  if (text == "chst") return ModuleKind::ChambersSteinberg;
  throw ParseError("unknown module '" + text + "' (trivial, st, stst, chst)");
}

std::string to_string(ModuleKind k) {
  switch (k) {
    case ModuleKind::Trivial: return "trivial";
    case ModuleKind::Steinberg: return "st";
    case ModuleKind::SteinbergSquared: return "stst";
    case ModuleKind::ChambersSteinberg: return "chst";
  }
  return "?";
}

ModuleAction fq_module_action(const GroupSpec& spec, ModuleKind kind, bool with_table, size_t max_order) {
  const FieldTable& f = FieldTable::get(spec.q);
  const auto gens = group_generators(spec);
  std::vector<SparseIntMatrix> mats;
  if (kind == ModuleKind::Trivial) {
    mats.assign(gens.size(), SparseIntMatrix::identity(1));
  } else {
    if (spec.n < 2) throw InvalidArgument("the Steinberg module needs n >= 2");
    LocalSteinberg st(f, FqSubspace::whole(spec.n));
    std::optional<TitsBuilding> b;
    if (kind == ModuleKind::ChambersSteinberg) b.emplace(spec.n, spec.q);
    for (const auto& g : gens) {
      SparseIntMatrix s = steinberg_matrix(st, g);
      switch (kind) {
        case ModuleKind::Steinberg: mats.push_back(std::move(s)); break;
        case ModuleKind::SteinbergSquared: mats.push_back(kronecker(s, s)); break;
        default: mats.push_back(kronecker(chamber_matrix(*b, g), s)); break;
      }
    }
  }
  if (!with_table) {
    ModuleAction m;
    m.rank = mats.front().rows();
    m.generators = std::move(mats);
    return m;
  }
  if (spec.order() > max_order)
    throw BudgetExceeded("group " + spec.to_string() + " has order " + std::to_string(spec.order()));
  std::vector<std::vector<int>> perms;
  for (const auto& g : gens) perms.push_back(vector_permutation(f, g));
  return close_action(perms, mats, max_order);
}

}  // namespace titshom
