#include "titshom/fq_building.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <thread>

#include "titshom/errors.hpp"

namespace titshom {

// ---------------------------------------------------------------- subspaces

FqSubspace FqSubspace::span(const FieldTable& f, int n, std::vector<FqVector> vectors) {
  for (const auto& v : vectors)
    if (static_cast<int>(v.size()) != n) throw InvalidArgument("span: vector length mismatch");
  std::vector<FqVector> r = rref(f, std::move(vectors));
  FqSubspace s;
  s.n_ = n;
  s.dim_ = static_cast<int>(r.size());
  s.rows_.reserve(r.size() * static_cast<size_t>(n));
  for (const auto& row : r) s.rows_.insert(s.rows_.end(), row.begin(), row.end());
  return s;
}

FqSubspace FqSubspace::whole(int n) {
  FqSubspace s;
  s.n_ = n;
  s.dim_ = n;
  s.rows_.assign(static_cast<size_t>(n * n), 0);
  for (int i = 0; i < n; ++i) s.rows_[static_cast<size_t>(i * n + i)] = 1;
  return s;
}

FqVector FqSubspace::row(int i) const {
  return {rows_.begin() + i * n_, rows_.begin() + (i + 1) * n_};
}

std::vector<FqVector> FqSubspace::rows() const {
  std::vector<FqVector> out;
  for (int i = 0; i < dim_; ++i) out.push_back(row(i));
  return out;
}

bool FqSubspace::contains(const FieldTable& f, const FqVector& v) const {
  FqVector w = v;
  for (int i = 0; i < dim_; ++i) {
    const FqElem* r = &rows_[static_cast<size_t>(i * n_)];
    int pivot = 0;
    while (r[pivot] == 0) ++pivot;
    const FqElem t = w[static_cast<size_t>(pivot)];
    if (t == 0) continue;
    for (int j = pivot; j < n_; ++j) w[static_cast<size_t>(j)] = f.sub(w[static_cast<size_t>(j)], f.mul(t, r[j]));
  }
  return std::all_of(w.begin(), w.end(), [](FqElem x) { return x == 0; });
}

bool FqSubspace::contains(const FieldTable& f, const FqSubspace& w) const {
  if (w.dim_ > dim_) return false;
  for (int i = 0; i < w.dim_; ++i)
    if (!contains(f, w.row(i))) return false;
  return true;
}

std::string FqSubspace::to_string() const {
  std::ostringstream os;
  os << '<';
  for (int i = 0; i < dim_; ++i) {
    os << (i ? ";" : "");
    for (int j = 0; j < n_; ++j) os << int(rows_[static_cast<size_t>(i * n_ + j)]);
  }
  os << '>';
  return os.str();
}

size_t FqSubspaceHash::operator()(const FqSubspace& s) const noexcept {
  size_t h = static_cast<size_t>(s.ambient() * 131 + s.dim());
  for (FqElem x : s.data()) h = h * 257 + x;
  return h;
}

namespace {

constexpr const char* kCacheMagic = "titshom-subspaces";
constexpr int kCacheVersion = 1;

std::vector<FqSubspace> enumerate_subspaces(const FieldTable& f, int n, int d) {
  std::vector<FqSubspace> out;
  if (d == 0) {
    out.push_back(FqSubspace::span(f, n, {}));
    return out;
  }
  std::vector<int> pivots(static_cast<size_t>(d));
  std::iota(pivots.begin(), pivots.end(), 0);
  for (;;) {
    std::vector<std::pair<int, int>> free_slots;
    std::vector<char> is_pivot(static_cast<size_t>(n), 0);
    for (int p : pivots) is_pivot[static_cast<size_t>(p)] = 1;
    for (int i = 0; i < d; ++i)
      for (int j = pivots[static_cast<size_t>(i)] + 1; j < n; ++j)
        if (!is_pivot[static_cast<size_t>(j)]) free_slots.emplace_back(i, j);
    std::vector<int> digits(free_slots.size(), 0);
    for (;;) {
      std::vector<FqVector> rows(static_cast<size_t>(d), FqVector(static_cast<size_t>(n), 0));
      for (int i = 0; i < d; ++i) rows[static_cast<size_t>(i)][static_cast<size_t>(pivots[static_cast<size_t>(i)])] = 1;
      for (size_t s = 0; s < free_slots.size(); ++s)
        rows[static_cast<size_t>(free_slots[s].first)][static_cast<size_t>(free_slots[s].second)] =
            static_cast<FqElem>(digits[s]);
      out.push_back(FqSubspace::span(f, n, std::move(rows)));
      size_t s = free_slots.size();
      while (s > 0 && ++digits[s - 1] == f.q()) digits[--s] = 0;
      if (s == 0) break;
    }
    // next pivot combination
    int i = d - 1;
    while (i >= 0 && pivots[static_cast<size_t>(i)] == n - d + i) --i;
    if (i < 0) break;
    ++pivots[static_cast<size_t>(i)];
    for (int j = i + 1; j < d; ++j) pivots[static_cast<size_t>(j)] = pivots[static_cast<size_t>(j - 1)] + 1;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::filesystem::path cache_path(int n, int q, int d) {
  const char* dir = std::getenv("TITSHOM_CACHE_DIR");
  if (!dir || !*dir) return {};
  std::ostringstream name;
  name << "subspaces-v" << kCacheVersion << "-n" << n << "-q" << q << "-d" << d << ".txt";
  return std::filesystem::path(dir) / name.str();
}

bool load_cached(const std::filesystem::path& path, const FieldTable& f, int n, int d,
                 std::vector<FqSubspace>& out) {
  std::ifstream in(path);
  if (!in) return false;
  std::string magic;
  int version = 0, cn = 0, cq = 0, cd = 0;
  size_t count = 0;
  if (!(in >> magic >> version >> cn >> cq >> cd >> count)) return false;
  if (magic != kCacheMagic || version != kCacheVersion || cn != n || cq != f.q() || cd != d) return false;
  std::vector<FqSubspace> result;
  result.reserve(count);
  for (size_t i = 0; i < count; ++i) {
    std::vector<FqVector> rows(static_cast<size_t>(d), FqVector(static_cast<size_t>(n)));
    for (auto& r : rows)
      for (auto& x : r) {
        int v;
        if (!(in >> v) || v < 0 || v >= f.q()) return false;
        x = static_cast<FqElem>(v);
      }
    result.push_back(FqSubspace::span(f, n, std::move(rows)));
    if (result.back().dim() != d) return false;
  }
  std::string end;
  if (!(in >> end) || end != "end") return false;
  out = std::move(result);
  return true;
}

void store_cached(const std::filesystem::path& path, int n, int q, int d,
                  const std::vector<FqSubspace>& subs) {
  static std::atomic<unsigned> counter{0};
  std::error_code ec;
  std::filesystem::create_directories(path.parent_path(), ec);
  std::ostringstream tmp_name;
  tmp_name << path.filename().string() << ".tmp." << std::hash<std::thread::id>{}(std::this_thread::get_id())
           << "." << counter++;
  const auto tmp = path.parent_path() / tmp_name.str();
  {
    std::ofstream out(tmp);
    if (!out) return;
    out << kCacheMagic << ' ' << kCacheVersion << ' ' << n << ' ' << q << ' ' << d << ' ' << subs.size() << '\n';
    for (const auto& s : subs) {
      for (size_t i = 0; i < s.data().size(); ++i) out << (i ? " " : "") << int(s.data()[i]);
      out << '\n';
    }
    out << "end\n";
    if (!out) {
      std::filesystem::remove(tmp, ec);
      return;
    }
  }
  std::filesystem::rename(tmp, path, ec);  // atomic publish; readers never see partial files
  if (ec) std::filesystem::remove(tmp, ec);
}

}  // namespace

std::vector<FqSubspace> subspaces(int n, int q, int d, const EnumerationOptions& opt) {
  if (n < 0 || d < 0 || d > n) throw InvalidArgument("subspaces: need 0 <= d <= n");
  if (q > opt.field_bound) {
    throw FieldTooLarge("q=" + std::to_string(q) + " exceeds bound " + std::to_string(opt.field_bound));
  }
  const FieldTable& f = FieldTable::get(q);
  const auto path = cache_path(n, q, d);
  std::vector<FqSubspace> out;
  if (!path.empty() && load_cached(path, f, n, d, out)) return out;
  out = enumerate_subspaces(f, n, d);
  if (!path.empty()) store_cached(path, n, q, d, out);
  return out;
}

// ---------------------------------------------------------------- building

TitsBuilding::TitsBuilding(int n, int q, const EnumerationOptions& opt) : n_(n) {
  if (n < 2) throw InvalidArgument("building needs n >= 2");
  if (q > opt.field_bound) {
    throw FieldTooLarge("q=" + std::to_string(q) + " exceeds bound " + std::to_string(opt.field_bound));
  }
  field_ = &FieldTable::get(q);
  const FieldTable& f = *field_;
  std::vector<size_t> dim_start;
  for (int d = 1; d < n; ++d) {
    dim_start.push_back(vertices_.size());
    auto s = subspaces(n, q, d, opt);
    vertices_.insert(vertices_.end(), s.begin(), s.end());
  }
  for (size_t i = 0; i < vertices_.size(); ++i) vertex_index_.emplace(vertices_[i], static_cast<long>(i));

  // proper superspaces of each vertex, found by pushing forward the
  // subspaces of each W through its basis
  std::vector<std::vector<int>> supers(vertices_.size());
  for (size_t w = 0; w < vertices_.size(); ++w) {
    const FqSubspace& W = vertices_[w];
    const auto basis = W.rows();
    for (int a = 1; a < W.dim(); ++a) {
      for (const auto& local : subspaces(W.dim(), q, a, opt)) {
        std::vector<FqVector> vecs;
        for (const auto& coeffs : local.rows()) {
          FqVector v(static_cast<size_t>(n), 0);
          for (int i = 0; i < W.dim(); ++i) {
            if (coeffs[static_cast<size_t>(i)] == 0) continue;
            for (int j = 0; j < n; ++j)
              v[static_cast<size_t>(j)] = f.add(v[static_cast<size_t>(j)], f.mul(coeffs[static_cast<size_t>(i)], basis[static_cast<size_t>(i)][static_cast<size_t>(j)]));
          }
          vecs.push_back(std::move(v));
        }
        long id = vertex_id(FqSubspace::span(f, n, std::move(vecs)));
        supers[static_cast<size_t>(id)].push_back(static_cast<int>(w));
      }
    }
  }
  for (auto& s : supers) std::sort(s.begin(), s.end());

  // count chains before materializing them
  std::vector<double> chains(vertices_.size(), 0);
  double total = 1;
  for (size_t v = vertices_.size(); v-- > 0;) {
    double c = 1;
    for (int w : supers[v]) c += chains[static_cast<size_t>(w)];
    chains[v] = c;
    total += c;
  }
  if (total > static_cast<double>(opt.flag_budget)) {
    throw BudgetExceeded(std::to_string(static_cast<long long>(total)) + " flags for (n,q)=(" +
                         std::to_string(n) + "," + std::to_string(q) + ") exceed budget " +
                         std::to_string(opt.flag_budget));
  }

  std::vector<std::vector<Label>> bases(static_cast<size_t>(n));  // by member count
  bases[0].push_back({});
  Label cur;
  auto dfs = [&](auto&& self, int v) -> void {
    cur.push_back(v);
    bases[cur.size()].push_back(cur);
    for (int w : supers[static_cast<size_t>(v)]) self(self, w);
    cur.pop_back();
  };
  for (size_t v = 0; v < vertices_.size(); ++v) dfs(dfs, static_cast<int>(v));

  complex_ = assemble_complex(-1, std::move(bases), [](int, const Label& l) {
    Chain out;
    for (size_t j = 0; j < l.size(); ++j) {
      Label face;
      face.reserve(l.size() - 1);
      for (size_t k = 0; k < l.size(); ++k)
        if (k != j) face.push_back(l[k]);
      out.emplace_back(std::move(face), Integer(j % 2 == 0 ? 1 : -1));
    }
    return out;
  });
}

long TitsBuilding::vertex_id(const FqSubspace& s) const {
  auto it = vertex_index_.find(s);
  return it == vertex_index_.end() ? -1 : it->second;
}

long TitsBuilding::chamber_index(const FqFlag& flag) const {
  Label l;
  for (const auto& s : flag) {
    long id = vertex_id(s);
    if (id < 0) return -1;
    l.push_back(static_cast<Token>(id));
  }
  return complex_.index_of(n_ - 2, l);
}

FqFlag TitsBuilding::flag_of(const Label& l) const {
  FqFlag out;
  for (Token t : l) out.push_back(vertices_.at(static_cast<size_t>(t)));
  return out;
}

std::vector<size_t> TitsBuilding::face_counts() const {
  std::vector<size_t> out;
  for (int d = -1; d <= n_ - 2; ++d) out.push_back(complex_.rank_of(d));
  return out;
}

ChainComplexZ building_complex(int n, int q, const EnumerationOptions& opt) {
  return TitsBuilding(n, q, opt).complex();
}

// ---------------------------------------------------------------- apartments

int permutation_sign(const std::vector<int>& p) {
  int sign = 1;
  for (size_t i = 0; i < p.size(); ++i)
    for (size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) sign = -sign;
  return sign;
}

std::vector<std::vector<int>> all_permutations(int k) {
  std::vector<int> p(static_cast<size_t>(k));
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

namespace {

const std::vector<std::vector<int>>& cached_permutations(int k) {
  static const std::vector<std::vector<std::vector<int>>> table = [] {
    std::vector<std::vector<std::vector<int>>> t;
    for (int i = 0; i <= 7; ++i) t.push_back(all_permutations(i));
    return t;
  }();
  if (k < 0 || k > 7) throw InvalidArgument("permutation table limited to k <= 7");
  return table[static_cast<size_t>(k)];
}

FqFlag nested_spans(const FieldTable& f, const std::vector<FqVector>& ordered) {
  const int n = ordered.empty() ? 0 : static_cast<int>(ordered[0].size());
  FqFlag flag;
  std::vector<FqVector> prefix;
  for (size_t k = 0; k + 1 < ordered.size(); ++k) {
    prefix.push_back(ordered[k]);
    flag.push_back(FqSubspace::span(f, n, prefix));
  }
  return flag;
}

}  // namespace

FlagChain apartment_chain(const FieldTable& f, const std::vector<FqVector>& frame) {
  FlagChain chain;
  const int k = static_cast<int>(frame.size());
  if (k == 0) return chain;
  if (rank_of(f, frame) != k) throw InvalidArgument("apartment: frame vectors are dependent");
  for (const auto& w : cached_permutations(k)) {
    std::vector<FqVector> ordered;
    for (int i : w) ordered.push_back(frame[static_cast<size_t>(i)]);
    chain[nested_spans(f, ordered)] += Integer(permutation_sign(w));
  }
  return chain;
}

std::vector<Integer> apartment_class_fq(const TitsBuilding& b, const FqMatrix& g) {
  if (g.n != b.n() || !invertible(b.field(), g)) throw InvalidArgument("apartment_class_fq: g not invertible");
  std::vector<FqVector> frame;
  for (int j = 0; j < g.n; ++j) frame.push_back(g.column(j));
  std::vector<Integer> v(b.chambers().size());
  for (const auto& [flag, c] : apartment_chain(b.field(), frame)) {
    long i = b.chamber_index(flag);
    if (i < 0) throw Error("apartment chamber missing from building");
    v[static_cast<size_t>(i)] += c;
  }
  return v;
}

SteinbergModuleFq steinberg(const TitsBuilding& b) {
  SteinbergModuleFq st;
  st.n = b.n();
  st.q = b.q();
  st.chambers = b.chambers();
  st.kernel = kernel_basis(b.complex().boundary(b.n() - 2));
  return st;
}

SteinbergModuleFq steinberg(int n, int q, const EnumerationOptions& opt) {
  return steinberg(TitsBuilding(n, q, opt));
}

bool UnipotentBasisCheck::unimodular() const {
  if (smith.rank != change_of_basis.rows() || change_of_basis.rows() != change_of_basis.cols()) return false;
  return std::all_of(smith.diagonal.begin(), smith.diagonal.end(), [](const Integer& d) { return d.is_one(); });
}

UnipotentBasisCheck unipotent_basis_check(int n, int q, const EnumerationOptions& opt) {
  TitsBuilding b(n, q, opt);
  DenseIntMatrix top = b.complex().boundary(n - 2).to_dense();
  ColumnEchelon ce = column_echelon(top);
  const size_t m = top.cols();
  DenseIntMatrix K = ce.V.block(0, m, ce.rank, m);
  DenseIntMatrix coord = ce.Vinv.block(ce.rank, m, 0, m);
  const auto us = unitriangular_group(b.field(), n);
  UnipotentBasisCheck out;
  out.change_of_basis = DenseIntMatrix(m - ce.rank, us.size());
  for (size_t j = 0; j < us.size(); ++j) {
    std::vector<Integer> a = apartment_class_fq(b, us[j]);
    std::vector<Integer> c = coord * a;
    if (K * c != a) throw Error("apartment class is not a cycle");
    for (size_t i = 0; i < c.size(); ++i) out.change_of_basis(i, j) = c[i];
  }
  out.smith = snf_dense(out.change_of_basis);
  return out;
}

SmithForm unipotent_basis_matrix(int n, int q, const EnumerationOptions& opt) {
  return unipotent_basis_check(n, q, opt).smith;
}

bool verify_bruhat_witness(const FieldTable& f, const FqMatrix& u) {
  if (!u.is_unitriangular()) return false;
  const auto perms = all_permutations(u.n);
  std::vector<int> id(static_cast<size_t>(u.n));
  std::iota(id.begin(), id.end(), 0);
  for (const auto& s1 : perms)
    for (const auto& s2 : perms) {
      FqMatrix m = mul(f, mul(f, permutation_matrix(s1), u), permutation_matrix(s2));
      if (m.is_upper_triangular() && (s1 != id || s2 != id)) return false;
    }
  return true;
}

FqMatrix bruhat_witness(int n, int q) {
  if (n < 2) throw InvalidArgument("bruhat_witness needs n >= 2");
  const FieldTable& f = FieldTable::get(q);
  FqMatrix u = FqMatrix::identity(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) u(i, j) = 1;
  if (verify_bruhat_witness(f, u)) return u;
  for (const auto& cand : unitriangular_group(f, n))
    if (verify_bruhat_witness(f, cand)) return cand;
  throw Error("no Bruhat witness found");
}

// ---------------------------------------------------------------- local St

LocalSteinberg::LocalSteinberg(const FieldTable& f, const FqSubspace& v) : f_(&f), d_(v.dim()) {
  if (d_ == 0) throw InvalidArgument("LocalSteinberg of the zero space");
  w0_sign_ = ((d_ * (d_ - 1) / 2) % 2 == 0) ? 1 : -1;
  const auto g = v.rows();
  const size_t n = static_cast<size_t>(v.ambient());
  unipotents_ = unitriangular_group(f, d_);
  for (size_t idx = 0; idx < unipotents_.size(); ++idx) {
    const FqMatrix& u = unipotents_[idx];
    std::vector<FqVector> frame;
    for (int j = 0; j < d_; ++j) {
      FqVector w(n, 0);
      for (int i = 0; i <= j; ++i) {
        const FqElem c = u(i, j);
        if (c == 0) continue;
        for (size_t t = 0; t < n; ++t) w[t] = f.add(w[t], f.mul(c, g[static_cast<size_t>(i)][t]));
      }
      frame.push_back(std::move(w));
    }
    std::vector<FqVector> reversed(frame.rbegin(), frame.rend());
    opposite_.emplace(nested_spans(f, reversed), idx);
    frames_.push_back(std::move(frame));
  }
}

long LocalSteinberg::opposite_index(const FqFlag& chamber) const {
  auto it = opposite_.find(chamber);
  return it == opposite_.end() ? -1 : static_cast<long>(it->second);
}

std::vector<Integer> LocalSteinberg::coordinates(const FlagChain& chain) const {
  std::vector<Integer> c(rank());
  for (const auto& [flag, coeff] : chain) {
    long i = opposite_index(flag);
    if (i >= 0) c[static_cast<size_t>(i)] += w0_sign_ > 0 ? coeff : -coeff;
  }
  return c;
}

std::vector<Integer> LocalSteinberg::apartment_coordinates(const std::vector<FqVector>& frame) const {
  if (static_cast<int>(frame.size()) != d_) throw InvalidArgument("frame size differs from dimension");
  std::vector<Integer> c(rank());
  for (const auto& w : cached_permutations(d_)) {
    std::vector<FqVector> ordered;
    for (int i : w) ordered.push_back(frame[static_cast<size_t>(i)]);
    long idx = opposite_index(nested_spans(*f_, ordered));
    if (idx >= 0) c[static_cast<size_t>(idx)] += Integer(permutation_sign(w) * w0_sign_);
  }
  return c;
}

}  // namespace titshom
