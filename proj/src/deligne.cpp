#include "cix/deligne.hpp"

#include <algorithm>
#include <set>

namespace cix {

RatVec SparseMatrix::apply_ref(const RatVec& x) const {
  if (x.size() != cols) throw Error("shape", "sparse apply: size mismatch");
  RatVec y(rows);
  for (const auto& t : e)
    if (x[t.c] != 0) y[t.r] += t.v * x[t.c];
  return y;
}

RatVec SparseMatrix::apply(const RatVec& x) const {
  if (x.size() != cols) throw Error("shape", "sparse apply: size mismatch");
  RatVec y(rows);
  // entries are sorted by row; split at row boundaries so each row has one writer
  std::vector<std::size_t> start(rows + 1, e.size());
  for (std::size_t i = e.size(); i-- > 0;) start[e[i].r] = i;
  for (std::size_t r = rows; r-- > 0;)
    if (start[r] > start[r + 1]) start[r] = start[r + 1];
  const long nr = static_cast<long>(rows);
#pragma omp parallel for schedule(static)
  for (long r = 0; r < nr; ++r) {
    Rat acc = 0;
    for (std::size_t i = start[r]; i < start[r + 1]; ++i)
      if (x[e[i].c] != 0) acc += e[i].v * x[e[i].c];
    y[r] = acc;
  }
  return y;
}

IntMatrix SparseMatrix::dense() const {
  IntMatrix D(rows, cols);
  for (const auto& t : e) D(t.r, t.c) += t.v;
  return D;
}

IntMatrix SparseMatrix::dense_cols(const std::vector<std::size_t>& sel) const {
  std::vector<long> where(cols, -1);
  for (std::size_t j = 0; j < sel.size(); ++j) where[sel[j]] = static_cast<long>(j);
  IntMatrix D(rows, sel.size());
  for (const auto& t : e)
    if (where[t.c] >= 0) D(t.r, where[t.c]) += t.v;
  return D;
}

DeligneModel::DeligneModel(SimplicialComplex K, int k) : K_(std::move(K)), k_(k) {
  if (k < 0) throw Error("domain", "Deligne model needs k >= 0");
  for (int p = 0; p <= K_.dim(); ++p)
    for (int q = -1; q <= k - 1; ++q) {
      auto& it = items_[{p, q}];
      auto& lk = lookup_[{p, q}];
      for (std::size_t x = 0; x < K_.count(p); ++x) {
        if (q == -1) {
          lk[{x, 0}] = it.size();
          it.push_back({x, 0});
          continue;
        }
        for (std::size_t t : closed_star(K_, K_.simplex(p, x), q)) {
          lk[{x, t}] = it.size();
          it.push_back({x, t});
        }
      }
    }
  for (int n = -2; n <= k; ++n) d_[n] = build_d(n);
}

const std::vector<DeligneModel::Item>& DeligneModel::items(int p, int q) const {
  static const std::vector<Item> none;
  auto it = items_.find({p, q});
  return it == items_.end() ? none : it->second;
}

long DeligneModel::find(int p, int q, std::size_t x, std::size_t tau) const {
  auto it = lookup_.find({p, q});
  if (it == lookup_.end()) return -1;
  auto jt = it->second.find({x, q == -1 ? 0 : tau});
  return jt == it->second.end() ? -1 : static_cast<long>(jt->second);
}

std::vector<int> DeligneModel::qs(int n) const {
  std::vector<int> out;
  for (int q = -1; q <= std::min(n, k_ - 1); ++q) {
    int p = n - q;
    if (p >= 0 && p <= K_.dim()) out.push_back(q);
  }
  return out;
}

std::size_t DeligneModel::offset(int n, int q) const {
  std::size_t off = 0;
  for (int r : qs(n)) {
    if (r == q) return off;
    off += items(n - r, r).size();
  }
  throw Error("internal", "form degree absent from total degree");
}

std::size_t DeligneModel::total_size(int n) const {
  std::size_t s = 0;
  for (int q : qs(n)) s += items(n - q, q).size();
  return s;
}

const SparseMatrix& DeligneModel::d(int n) const {
  auto it = d_.find(n);
  if (it == d_.end()) throw Error("degree", "total degree out of range");
  return it->second;
}

SparseMatrix DeligneModel::build_d(int n) const {
  SparseMatrix S;
  S.rows = total_size(n + 1);
  S.cols = total_size(n);
  auto src = qs(n);
  auto has = [&](int q) { return std::find(src.begin(), src.end(), q) != src.end(); };
  for (int q : qs(n + 1)) {
    const int p = n + 1 - q;
    const std::size_t roff = offset(n + 1, q);
    const auto& tgt = items(p, q);
    for (std::size_t t = 0; t < tgt.size(); ++t) {
      const Simplex& x = K_.simplex(p, tgt[t].x);
      // -delta from (p-1, q)
      if (p >= 1 && has(q)) {
        std::size_t coff = offset(n, q);
        for (std::size_t j = 0; j < x.size(); ++j) {
          long fx = K_.index(face_of(x, j));
          long s = find(p - 1, q, fx, tgt[t].tau);
          S.e.push_back({roff + t, coff + static_cast<std::size_t>(s), j % 2 ? 1L : -1L});
        }
      }
      // (-1)^p d from (p, q-1)
      if (q >= 0 && has(q - 1)) {
        std::size_t coff = offset(n, q - 1);
        long sp = p % 2 ? -1 : 1;
        if (q == 0) {
          long s = find(p, -1, tgt[t].x, 0);
          S.e.push_back({roff + t, coff + static_cast<std::size_t>(s), sp});
        } else {
          const Simplex& tau = K_.simplex(q, tgt[t].tau);
          for (std::size_t j = 0; j < tau.size(); ++j) {
            long ft = K_.index(face_of(tau, j));
            long s = find(p, q - 1, tgt[t].x, ft);
            S.e.push_back({roff + t, coff + static_cast<std::size_t>(s), j % 2 ? -sp : sp});
          }
        }
      }
    }
  }
  std::sort(S.e.begin(), S.e.end(), [](const auto& a, const auto& b) { return std::tie(a.r, a.c) < std::tie(b.r, b.c); });
  return S;
}

DeligneCochain zero_cochain(const DeligneModel& M, int n) {
  DeligneCochain c;
  c.k = M.k();
  c.n = n;
  for (int q : M.qs(n)) c.comp[q] = RatVec(M.items(n - q, q).size());
  return c;
}

RatVec flatten(const DeligneModel& M, const DeligneCochain& c) {
  if (!well_formed(M, c)) throw Error("shape", "Deligne cochain does not match the model");
  RatVec v;
  v.reserve(M.total_size(c.n));
  for (int q : M.qs(c.n)) {
    const auto& x = c.comp.at(q);
    v.insert(v.end(), x.begin(), x.end());
  }
  return v;
}

DeligneCochain unflatten(const DeligneModel& M, int n, const RatVec& v) {
  if (v.size() != M.total_size(n)) throw Error("shape", "flat vector does not match the model");
  DeligneCochain c;
  c.k = M.k();
  c.n = n;
  std::size_t off = 0;
  for (int q : M.qs(n)) {
    std::size_t s = M.items(n - q, q).size();
    c.comp[q] = RatVec(v.begin() + off, v.begin() + off + s);
    off += s;
  }
  return c;
}

bool well_formed(const DeligneModel& M, const DeligneCochain& c) {
  if (c.k != M.k()) return false;
  auto qs = M.qs(c.n);
  if (c.comp.size() != qs.size()) return false;
  for (int q : qs) {
    auto it = c.comp.find(q);
    if (it == c.comp.end() || it->second.size() != M.items(c.n - q, q).size()) return false;
    if (q == -1)
      for (const auto& x : it->second)
        if (!is_integer(x)) return false;
  }
  return true;
}

DeligneCochain add(const DeligneCochain& a, const DeligneCochain& b, const Rat& s) {
  if (a.k != b.k || a.n != b.n) throw Error("degree", "adding Deligne cochains of different shape");
  DeligneCochain r = a;
  for (auto& [q, v] : r.comp) {
    const auto& w = b.comp.at(q);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += s * w[i];
  }
  return r;
}

DeligneCochain scale(const DeligneCochain& a, const Rat& s) {
  DeligneCochain r = a;
  for (auto& [q, v] : r.comp)
    for (auto& x : v) x *= s;
  return r;
}

bool is_zero(const DeligneCochain& c) {
  for (const auto& [q, v] : c.comp)
    for (const auto& x : v)
      if (x != 0) return false;
  return true;
}

DeligneCochain total_d(const DeligneModel& M, const DeligneCochain& c) {
  return unflatten(M, c.n + 1, M.d(c.n).apply(flatten(M, c)));
}

bool is_closed(const DeligneModel& M, const DeligneCochain& c) { return is_zero(total_d(M, c)); }

Cochain curvature(const DeligneModel& M, const DeligneCochain& x) {
  const int k = M.k();
  if (x.n != k - 1) throw Error("degree", "curvature needs a cochain of total degree k-1");
  if (!is_closed(M, x)) throw Error("not-closed", "curvature of a non-closed Deligne cochain");
  const auto& K = M.base();
  Cochain R = zero_cochain(K, k);
  if (k == 0) return R;
  const auto& top = x.comp.at(k - 1);
  for (std::size_t s = 0; s < K.count(k); ++s) {
    const Simplex& sig = K.simplex(k, s);
    bool first = true;
    for (int v : sig) {
      std::size_t xv = K.index({v});
      Rat val = 0;
      for (std::size_t j = 0; j < sig.size(); ++j) {
        long f = M.find(0, k - 1, xv, K.index(face_of(sig, j)));
        val += (j % 2 ? -1 : 1) * top[f];
      }
      if (first) {
        R.v[s] = val;
        first = false;
      } else if (val != R.v[s]) {
        throw Error("internal", "local curvatures do not glue");
      }
    }
  }
  return R;
}

CechCochain underlying_cocycle(const DeligneModel& M, const DeligneCochain& x) {
  CechCochain z;
  z.p = x.n + 1;
  z.coeff = Coeff::Z;
  auto it = x.comp.find(-1);
  z.values = it == x.comp.end() ? RatVec(M.base().count(z.p)) : it->second;
  return z;
}

ClassCoords char_class(const DeligneModel& M, const DeligneCochain& x) {
  if (!is_closed(M, x)) throw Error("not-closed", "class of a non-closed Deligne cochain");
  const int k = M.k();
  CechCochain z = underlying_cocycle(M, x);
  if (k > M.base().dim()) return {};
  IntVec zi(z.values.size());
  for (std::size_t i = 0; i < zi.size(); ++i) zi[i] = z.values[i].get_num();
  return cech_presentation(M.base(), k).coords(zi);
}

DeligneCochain a_map(const DeligneModel& M, const Cochain& omega) {
  const int k = M.k();
  const auto& K = M.base();
  if (k < 1) throw Error("degree", "a() needs k >= 1");
  if (omega.q != k - 1 || omega.v.size() != K.count(k - 1))
    throw Error("degree", "a() needs a global (k-1)-cochain");
  DeligneCochain c = zero_cochain(M, k - 1);
  auto& top = c.comp.at(k - 1);
  const auto& it = M.items(0, k - 1);
  for (std::size_t i = 0; i < it.size(); ++i) top[i] = omega.v[it[i].tau];
  return c;
}

namespace {

struct SplitCols {
  std::vector<std::size_t> z, q;
};

SplitCols split_integral(const DeligneModel& M, int n) {
  SplitCols s;
  std::size_t off = 0;
  for (int q : M.qs(n)) {
    std::size_t sz = M.items(n - q, q).size();
    for (std::size_t i = 0; i < sz; ++i) (q == -1 ? s.z : s.q).push_back(off + i);
    off += sz;
  }
  return s;
}

}  // namespace

std::optional<DeligneCochain> is_coboundary(const DeligneModel& M, const DeligneCochain& c) {
  if (!well_formed(M, c)) throw Error("shape", "Deligne cochain does not match the model");
  if (!is_closed(M, c)) return std::nullopt;
  const int n = c.n - 1;
  const auto& D = M.d(n);
  SplitCols sc = split_integral(M, n);
  auto sol = solve_mixed(D.dense_cols(sc.z), D.dense_cols(sc.q), flatten(M, c));
  if (!sol) return std::nullopt;
  RatVec b(M.total_size(n));
  for (std::size_t i = 0; i < sc.z.size(); ++i) b[sc.z[i]] = sol->xz[i];
  for (std::size_t i = 0; i < sc.q.size(); ++i) b[sc.q[i]] = sol->xq[i];
  return unflatten(M, n, b);
}

DeligneCochain restrict_to(const DeligneModel& M, const DeligneModel& L, const DeligneCochain& c) {
  if (L.k() != M.k()) throw Error("degree", "restriction between models of different k");
  const auto& K = M.base();
  const auto& KL = L.base();
  DeligneCochain r = zero_cochain(L, c.n);
  for (auto& [q, v] : r.comp) {
    const int p = c.n - q;
    const auto& li = L.items(p, q);
    const auto& src = c.comp.at(q);
    for (std::size_t i = 0; i < li.size(); ++i) {
      long x = K.index(KL.simplex(p, li[i].x));
      long t = q == -1 ? 0 : K.index(KL.simplex(q, li[i].tau));
      long s = x < 0 || t < 0 ? -1 : M.find(p, q, x, t);
      if (s < 0) throw Error("domain", "restriction target is not a subcomplex");
      v[i] = src[s];
    }
  }
  return r;
}

Rat holonomy(const DeligneModel& M, const DeligneCochain& x, const Chain& z, Neighborhood nb) {
  const int k = M.k();
  const auto& K = M.base();
  if (k < 1) throw Error("degree", "holonomy needs k >= 1");
  if (z.q != k - 1 || z.c.size() != K.count(k - 1)) throw Error("degree", "holonomy needs a (k-1)-chain");
  if (x.n != k - 1) throw Error("degree", "holonomy needs a cochain of total degree k-1");
  if (!is_closed(M, x)) throw Error("not-closed", "holonomy of a non-closed Deligne cochain");
  if (z.q > 0)
    for (const auto& b : simplicial_boundary(K, z).c)
      if (b != 0) throw Error("not-cycle", "holonomy along a chain with nonzero boundary");
  std::vector<std::vector<int>> gens;
  for (std::size_t i = 0; i < z.c.size(); ++i) {
    if (z.c[i] == 0) continue;
    const Simplex& s = K.simplex(k - 1, i);
    if (nb == Neighborhood::SupportClosure) {
      gens.push_back(s);
      continue;
    }
    for (int p = 0; p <= K.dim(); ++p)
      for (const auto& t : K.simplices(p))
        if (K.contains(join(t, s))) gens.push_back(t);
  }
  if (gens.empty()) return 0;
  DeligneModel L(SimplicialComplex::from_simplices(gens), k);
  const auto& KL = L.base();
  DeligneCochain xl = restrict_to(M, L, x);
  // x|L = d b + a(omega): b mixed, omega rational
  const int n = k - 2;
  const auto& D = L.d(n);
  SplitCols sc = split_integral(L, n);
  IntMatrix Aq = D.dense_cols(sc.q);
  const auto& top = L.items(0, k - 1);
  const std::size_t top_off = L.offset(k - 1, k - 1);
  const std::size_t nw = KL.count(k - 1);
  IntMatrix A(Aq.rows, Aq.cols + nw);
  for (std::size_t i = 0; i < Aq.rows; ++i)
    for (std::size_t j = 0; j < Aq.cols; ++j) A(i, j) = Aq(i, j);
  for (std::size_t i = 0; i < top.size(); ++i) A(top_off + i, Aq.cols + top[i].tau) = 1;
  auto sol = solve_mixed(D.dense_cols(sc.z), A, flatten(L, xl));
  if (!sol)
    throw Error("refine", "integral part does not trivialize on the chosen neighborhood; subdivide the base");
  Rat h = 0;
  for (std::size_t i = 0; i < z.c.size(); ++i) {
    if (z.c[i] == 0) continue;
    long li = KL.index(K.simplex(k - 1, i));
    h += Rat(z.c[i]) * sol->xq[Aq.cols + li];
  }
  return mod_one(h);
}

DeligneCochain lift_cocycle(const DeligneModel& M, const CechCochain& z, bool flat) {
  const int k = M.k();
  const auto& K = M.base();
  if (z.p != k || z.values.size() != K.count(k)) throw Error("degree", "lift needs an integral Cech k-cochain");
  for (const auto& x : z.values)
    if (!is_integer(x)) throw Error("domain", "lift needs integral values");
  if (k <= K.dim())
    for (const auto& x : cech_d(K, z).values)
      if (x != 0) throw Error("not-closed", "lift of a non-cocycle");
  const int n = k - 1;
  const auto& D = M.d(n);
  SplitCols sc = split_integral(M, n);
  IntMatrix Aq = D.dense_cols(sc.q);
  RatVec zfull(M.total_size(n));
  for (std::size_t i = 0; i < sc.z.size(); ++i) zfull[sc.z[i]] = z.values[i];
  RatVec rhs = D.apply(zfull);
  for (auto& r : rhs) r = -r;
  if (flat) {
    // d of the top local forms vanishes
    const auto& top = M.items(0, k - 1);
    const std::size_t top_off = M.offset(n, k - 1);
    std::map<std::size_t, std::size_t> colpos;
    for (std::size_t j = 0; j < sc.q.size(); ++j) colpos[sc.q[j]] = j;
    std::vector<std::vector<std::pair<std::size_t, long>>> rows;
    for (std::size_t xv = 0; xv < K.count(0); ++xv)
      for (std::size_t s : closed_star(K, K.simplex(0, xv), k)) {
        const Simplex& sig = K.simplex(k, s);
        std::vector<std::pair<std::size_t, long>> row;
        for (std::size_t j = 0; j < sig.size(); ++j) {
          long f = M.find(0, k - 1, xv, K.index(face_of(sig, j)));
          row.push_back({colpos.at(top_off + f), j % 2 ? -1L : 1L});
        }
        rows.push_back(std::move(row));
      }
    (void)top;
    IntMatrix B(Aq.rows + rows.size(), Aq.cols);
    for (std::size_t i = 0; i < Aq.rows; ++i)
      for (std::size_t j = 0; j < Aq.cols; ++j) B(i, j) = Aq(i, j);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (auto [c, v] : rows[i]) B(Aq.rows + i, c) += v;
    Aq = std::move(B);
    rhs.resize(Aq.rows);
  }
  auto u = solve_rational(Aq, rhs);
  if (!u) throw Error("no-lift", flat ? "cocycle has no flat lift (its rational class is nonzero)" : "cocycle has no lift");
  for (std::size_t j = 0; j < sc.q.size(); ++j) zfull[sc.q[j]] = (*u)[j];
  return unflatten(M, n, zfull);
}

DeligneCochain pullback(const DeligneModel& target, const DeligneModel& source, const std::map<int, int>& f,
                        const DeligneCochain& c) {
  if (target.k() != source.k()) throw Error("degree", "pullback between models of different k");
  const auto& KT = target.base();
  const auto& KS = source.base();
  auto image = [&](const Simplex& s) {
    std::vector<int> t;
    for (int v : s) {
      auto it = f.find(v);
      if (it == f.end()) throw Error("domain", "vertex map undefined on " + std::to_string(v));
      t.push_back(it->second);
    }
    return t;
  };
  DeligneCochain r = zero_cochain(source, c.n);
  for (auto& [q, v] : r.comp) {
    const int p = c.n - q;
    const auto& it = source.items(p, q);
    const auto& src = c.comp.at(q);
    for (std::size_t i = 0; i < it.size(); ++i) {
      auto fx = image(KS.simplex(p, it[i].x));
      int sx = sort_sign(fx);
      if (sx == 0) continue;
      int st = 1;
      long ti = 0;
      if (q >= 0) {
        auto ft = image(KS.simplex(q, it[i].tau));
        st = sort_sign(ft);
        if (st == 0) continue;
        ti = KT.index(ft);
      }
      long xi = KT.index(fx);
      long s = xi < 0 || ti < 0 ? -1 : target.find(p, q, xi, ti);
      if (s < 0) throw Error("domain", "vertex map is not simplicial");
      v[i] = sx * st * src[s];
    }
  }
  return r;
}

bool flat_homotopy_check(const DeligneModel& P, const DeligneModel& K, const DeligneCochain& x) {
  if (!is_zero(curvature(P, x))) throw Error("unsupported", "homotopy check is implemented for flat classes only");
  std::map<int, int> i0, i1;
  for (int v : K.base().vertices()) {
    i0[v] = 2 * v;
    i1[v] = 2 * v + 1;
  }
  DeligneCochain diff = add(pullback(P, K, i0, x), pullback(P, K, i1, x), -1);
  return is_coboundary(K, diff).has_value();
}

}  // namespace cix
