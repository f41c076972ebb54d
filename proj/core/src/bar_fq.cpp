#include "titshom/bar_fq.hpp"

#include <algorithm>

#include "titshom/errors.hpp"
#include "titshom/fq_groups.hpp"

namespace titshom {

SteinbergAlgebra::SteinbergAlgebra(int n, int q) : n_(n), f_(&FieldTable::get(q)) {}

const LocalSteinberg& SteinbergAlgebra::local(const FqSubspace& v) {
  auto& slot = local_[v];
  if (!slot) slot = std::make_unique<LocalSteinberg>(*f_, v);
  return *slot;
}

SteinbergElement SteinbergAlgebra::apartment(const std::vector<FqVector>& frame) {
  FqSubspace v = FqSubspace::span(*f_, n_, frame);
  if (v.dim() != static_cast<int>(frame.size())) throw InvalidArgument("apartment frame is dependent");
  auto coords = local(v).apartment_coordinates(frame);
  return {std::move(v), std::move(coords)};
}

SteinbergElement SteinbergAlgebra::basis_element(const FqSubspace& v, size_t u) {
  const auto& st = local(v);
  std::vector<Integer> c(st.rank());
  c.at(u) = Integer(1);
  return {v, std::move(c)};
}

SteinbergElement SteinbergAlgebra::product(const SteinbergElement& x, const SteinbergElement& y) {
  auto rows = x.space.rows();
  for (auto& r : y.space.rows()) rows.push_back(r);
  FqSubspace sum = FqSubspace::span(*f_, n_, rows);
  if (sum.dim() != x.space.dim() + y.space.dim())
    throw NonComplementary("Steinberg product of intersecting subspaces " + x.space.to_string() + ", " +
                           y.space.to_string());
  const auto& lx = local(x.space);
  const auto& ly = local(y.space);
  const auto& ls = local(sum);
  SteinbergElement out{sum, std::vector<Integer>(ls.rank())};
  for (size_t a = 0; a < x.coords.size(); ++a) {
    if (x.coords[a].is_zero()) continue;
    for (size_t b = 0; b < y.coords.size(); ++b) {
      if (y.coords[b].is_zero()) continue;
      auto frame = lx.frame(a);
      for (const auto& v : ly.frame(b)) frame.push_back(v);
      const Integer s = x.coords[a] * y.coords[b];
      const auto c = ls.apartment_coordinates(frame);
      for (size_t k = 0; k < c.size(); ++k)
        if (!c[k].is_zero()) out.coords[k] += s * c[k];
    }
  }
  return out;
}

FlagChain SteinbergAlgebra::to_chain(const SteinbergElement& x) {
  const auto& st = local(x.space);
  FlagChain out;
  for (size_t u = 0; u < x.coords.size(); ++u) {
    if (x.coords[u].is_zero()) continue;
    for (const auto& [flag, c] : apartment_chain(*f_, st.frame(u))) {
      Integer& slot = out[flag];
      slot += x.coords[u] * c;
      if (slot.is_zero()) out.erase(flag);
    }
  }
  return out;
}

SteinbergElement st_product(SteinbergAlgebra& alg, const SteinbergElement& x, const SteinbergElement& y) {
  return alg.product(x, y);
}

namespace {

struct BarBuilder {
  int n;
  const FieldTable& f;
  SteinbergAlgebra alg;
  std::vector<FqSubspace> subs;
  std::map<FqSubspace, Token> id;

  BarBuilder(int n_, int q, const EnumerationOptions& opt) : n(n_), f(FieldTable::get(q)), alg(n_, q) {
    for (int d = 1; d <= n; ++d)
      for (auto& s : subspaces(n, q, d, opt)) {
        id.emplace(s, static_cast<Token>(subs.size()));
        subs.push_back(std::move(s));
      }
  }

  // Ordered decompositions into `parts` nonzero summands.
  void decompositions(int parts, std::vector<std::vector<Token>>& out) {
    std::vector<Token> cur;
    recurse(parts, FqSubspace::span(f, n, {}), cur, out);
  }

  void recurse(int parts_left, const FqSubspace& sum, std::vector<Token>& cur,
               std::vector<std::vector<Token>>& out) {
    const int remaining = n - sum.dim();
    if (parts_left == 1) {
      // the last summand is any complement; enumerate those of full dimension
      for (size_t i = 0; i < subs.size(); ++i) {
        if (subs[i].dim() != remaining) continue;
        if (!complementary(sum, subs[i])) continue;
        cur.push_back(static_cast<Token>(i));
        out.push_back(cur);
        cur.pop_back();
      }
      return;
    }
    for (size_t i = 0; i < subs.size(); ++i) {
      const int d = subs[i].dim();
      if (d > remaining - (parts_left - 1)) continue;
      if (!complementary(sum, subs[i])) continue;
      auto rows = sum.rows();
      for (auto& r : subs[i].rows()) rows.push_back(r);
      cur.push_back(static_cast<Token>(i));
      recurse(parts_left - 1, FqSubspace::span(f, n, rows), cur, out);
      cur.pop_back();
    }
  }

  bool complementary(const FqSubspace& a, const FqSubspace& b) const {
    auto rows = a.rows();
    for (auto& r : b.rows()) rows.push_back(r);
    return rank_of(f, rows) == a.dim() + b.dim();
  }

  std::vector<Label> basis(int degree) {
    std::vector<std::vector<Token>> decs;
    decompositions(degree + 2, decs);
    std::vector<Label> out;
    for (const auto& dec : decs) {
      std::vector<size_t> ranks;
      for (Token t : dec) ranks.push_back(alg.local(subs[static_cast<size_t>(t)]).rank());
      std::vector<size_t> idx(dec.size(), 0);
      for (;;) {
        Label l;
        for (size_t j = 0; j < dec.size(); ++j) {
          if (j) l.push_back(kSeparator);
          l.push_back(dec[j]);
          l.push_back(static_cast<Token>(idx[j]));
        }
        out.push_back(std::move(l));
        size_t j = dec.size();
        while (j > 0 && ++idx[j - 1] == ranks[j - 1]) idx[--j] = 0;
        if (j == 0) break;
      }
    }
    return out;
  }

  Chain bar_boundary(const Label& l) {
    std::vector<std::pair<Token, Token>> parts;
    for (size_t k = 0; k < l.size(); k += 3) parts.emplace_back(l[k], l[k + 1]);
    Chain out;
    for (size_t j = 0; j + 1 < parts.size(); ++j) {
      const auto& a = parts[j];
      const auto& b = parts[j + 1];
      SteinbergElement prod = alg.product(alg.basis_element(subs[static_cast<size_t>(a.first)], static_cast<size_t>(a.second)),
                                          alg.basis_element(subs[static_cast<size_t>(b.first)], static_cast<size_t>(b.second)));
      const Token pid = id.at(prod.space);
      const Integer sign(j % 2 == 0 ? 1 : -1);
      for (size_t k = 0; k < prod.coords.size(); ++k) {
        if (prod.coords[k].is_zero()) continue;
        Label img;
        for (size_t t = 0; t < parts.size(); ++t) {
          if (t == j + 1) continue;
          if (!img.empty()) img.push_back(kSeparator);
          if (t == j) {
            img.push_back(pid);
            img.push_back(static_cast<Token>(k));
          } else {
            img.push_back(parts[t].first);
            img.push_back(parts[t].second);
          }
        }
        out.emplace_back(std::move(img), sign * prod.coords[k]);
      }
    }
    return out;
  }

  // St ⊗ St → frames: x ⊗ y ↦ Σ_L x[F_L] y[F_L^-] [L_1|...|L_n].
  std::vector<Label> augmentation_basis(size_t st_rank) {
    std::vector<Label> out;
    for (size_t a = 0; a < st_rank; ++a)
      for (size_t b = 0; b < st_rank; ++b) out.push_back({static_cast<Token>(a), static_cast<Token>(b)});
    return out;
  }

  Chain augmentation(const Label& l, const std::vector<FlagChain>& chains, const std::vector<Label>& frames) {
    const FlagChain& x = chains[static_cast<size_t>(l[0])];
    const FlagChain& y = chains[static_cast<size_t>(l[1])];
    Chain out;
    for (const auto& fr : frames) {
      FqFlag fwd, bwd;
      std::vector<FqVector> acc;
      for (size_t k = 0; k < fr.size(); k += 3) {
        acc.push_back(subs[static_cast<size_t>(fr[k])].row(0));
        if (static_cast<int>(acc.size()) < n) fwd.push_back(FqSubspace::span(f, n, acc));
      }
      std::vector<FqVector> rev(acc.rbegin(), acc.rend()), racc;
      for (size_t k = 0; k + 1 < rev.size(); ++k) {
        racc.push_back(rev[k]);
        bwd.push_back(FqSubspace::span(f, n, racc));
      }
      auto ix = x.find(fwd);
      if (ix == x.end()) continue;
      auto iy = y.find(bwd);
      if (iy == y.end()) continue;
      out.emplace_back(fr, ix->second * iy->second);
    }
    return out;
  }
};

}  // namespace

BarComplexFq bar_complex_fq(int n, int q, const EnumerationOptions& opt) {
  if (n < 2) throw InvalidArgument("bar complex needs n >= 2");
  if (q > opt.field_bound) throw FieldTooLarge("q = " + std::to_string(q) + " exceeds the field bound");
  BarBuilder bb(n, q, opt);
  std::vector<std::vector<Label>> bases;
  size_t total = 0;
  for (int d = -1; d <= n - 2; ++d) {
    bases.push_back(bb.basis(d));
    total += bases.back().size();
    if (total > opt.flag_budget) throw BudgetExceeded("bar complex exceeds the generator budget");
  }
  const LocalSteinberg& whole = bb.alg.local(FqSubspace::whole(n));
  std::vector<FlagChain> chains;
  for (size_t u = 0; u < whole.rank(); ++u) chains.push_back(apartment_chain(bb.f, whole.frame(u)));
  bases.push_back(bb.augmentation_basis(whole.rank()));

  std::vector<Label> frames = bases[static_cast<size_t>(n - 1)];
  std::sort(frames.begin(), frames.end());
  const int aug_degree = n - 1;
  BarComplexFq out;
  out.n = n;
  out.q = q;
  out.complex = assemble_complex(-1, std::move(bases), [&](int degree, const Label& l) {
    if (degree == aug_degree) return bb.augmentation(l, chains, frames);
    return bb.bar_boundary(l);
  });
  out.subspaces = std::move(bb.subs);
  return out;
}

bool BarExactnessReport::lower_exact() const {
  return std::all_of(lower.begin(), lower.end(), [](const DegreeVerdict& v) { return v.exact; });
}

bool BarExactnessReport::ok() const {
  return lower_exact() && top_kernel_rank == expected_top_rank &&
         truncated_euler == static_cast<long>(expected_top_rank) && augmented_exact();
}

BarExactnessReport verify_bar_exactness(int n, int q, const EnumerationOptions& opt) {
  BarComplexFq bar = bar_complex_fq(n, q, opt);
  const ChainComplexZ& c = bar.complex;
  BarExactnessReport r;
  r.n = n;
  r.q = q;
  for (int d = -1; d <= n - 1; ++d) r.ranks.push_back(c.rank_of(d));
  std::vector<HomologyGroup> h = all_homology(c);
  for (int d = -1; d <= n - 3; ++d)
    r.lower.push_back({d, h[static_cast<size_t>(d + 1)].is_zero(), h[static_cast<size_t>(d + 1)]});
  const size_t top = static_cast<size_t>(n - 2);
  r.top_kernel_rank = c.rank_of(n - 2) - rank(c.boundary(n - 2));
  r.expected_top_rank = 1;
  for (int i = 0; i < n * (n - 1); ++i) r.expected_top_rank *= static_cast<size_t>(q);
  for (int d = -1; d <= n - 2; ++d)
    r.truncated_euler += ((n - 2 - d) % 2 == 0 ? 1 : -1) * static_cast<long>(c.rank_of(d));
  r.top_homology = h[top + 1];
  r.augmentation_homology = h[top + 2];
  return r;
}

bool Rank2Report::ok() const {
  return e1_10.is_z() && st_borel.is_z() && phi_invariant && surjective && abs(witness_value).is_one();
}

Rank2Report rank2_e1_surjectivity(int q) {
  if (q > 3) throw BudgetExceeded("rank-2 computation is limited to q <= 3");
  constexpr int n = 3;
  const FieldTable& f = FieldTable::get(q);
  TitsBuilding b(n, q);
  LocalSteinberg st(f, FqSubspace::whole(n));
  const size_t s = st.rank();
  const size_t nch = b.chambers().size();

  // A_u in chamber coordinates
  std::vector<std::vector<std::pair<size_t, Integer>>> apart(s);
  for (size_t u = 0; u < s; ++u)
    for (const auto& [flag, c] : apartment_chain(f, st.frame(u)))
      apart[u].emplace_back(static_cast<size_t>(b.chamber_index(flag)), c);

  Rank2Report r;
  r.q = q;
  r.steinberg_rank = s;
  const GroupSpec gl{GroupFamily::GL, n, q};
  const auto gens = group_generators(gl);
  ModuleAction stst{s * s, {}, {}, {}}, chst{nch * s, {}, {}, {}};
  for (const auto& g : gens) {
    SparseIntMatrix m = steinberg_matrix(st, g);
    stst.generators.push_back(kronecker(m, m));
    chst.generators.push_back(kronecker(chamber_matrix(b, g), m));
  }
  r.e1_20 = coinvariants(stst);
  r.e1_10 = coinvariants(chst);
  r.st_borel = coinvariants(fq_module_action(GroupSpec{GroupFamily::Borel, n, q}, ModuleKind::Steinberg));

  // φ(F ⊗ A_u) = A_u[F]
  std::vector<Integer> phi(nch * s);
  for (size_t u = 0; u < s; ++u)
    for (const auto& [ch, c] : apart[u]) phi[ch * s + u] = c;
  r.phi_invariant = true;
  for (const auto& g : chst.generators)
    for (size_t col = 0; col < g.cols() && r.phi_invariant; ++col) {
      Integer acc;
      for (const auto& [row, v] : g.column(col)) acc += phi[static_cast<size_t>(row)] * v;
      if (acc != phi[col]) r.phi_invariant = false;
    }

  // ι ⊗ id : A_a ⊗ A_u ↦ Σ_F A_a[F] F ⊗ A_u
  SparseIntMatrix image(nch * s, s * s);
  for (size_t a = 0; a < s; ++a)
    for (size_t u = 0; u < s; ++u) {
      SparseIntMatrix::Column col;
      for (const auto& [ch, c] : apart[a]) col.emplace_back(static_cast<int>(ch * s + u), c);
      image.set_column(a * s + u, std::move(col));
    }
  r.surjective = coinvariants_modulo(chst, image).is_zero();

  const FqMatrix w = bruhat_witness(n, q);
  r.witness = w.to_string();
  const auto& us = st.unipotents();
  const size_t wi = static_cast<size_t>(std::find(us.begin(), us.end(), w) - us.begin());
  const size_t id = static_cast<size_t>(std::find(us.begin(), us.end(), FqMatrix::identity(n)) - us.begin());
  for (const auto& [row, v] : image.column(id * s + wi)) r.witness_value += phi[static_cast<size_t>(row)] * v;
  return r;
}

}  // namespace titshom
