#include "cix/ledger.hpp"

#include <random>

#include "cix/spectral.hpp"

namespace cix {

namespace {

std::string show(const Simplex& s) {
  std::string r = "[";
  for (std::size_t i = 0; i < s.size(); ++i) r += (i ? "," : "") + std::to_string(s[i]);
  return r + "]";
}

}  // namespace

DeligneCochain assemble(const DeligneModel& M, const EtaLedgerData& d) {
  const int k = d.k;
  if (M.k() != k) throw Error("degree", "ledger degree does not match the model");
  const auto& K = M.base();
  DeligneCochain c = zero_cochain(M, k - 1);
  for (const auto& [key, val] : d.eta) {
    const auto& [x, tau] = key;
    int p = static_cast<int>(x.size()) - 1, q = static_cast<int>(tau.size()) - 1;
    if (q < 0 || p + q != k - 1) throw Error("shape", "eta entry on " + show(x) + " has the wrong form degree");
    long xi = K.index(x), ti = K.index(tau);
    long s = xi < 0 || ti < 0 ? -1 : M.find(p, q, xi, ti);
    if (s < 0) throw Error("shape", "eta entry " + show(x) + "/" + show(tau) + " lies outside the closed star");
    c.comp.at(q)[s] = val;
  }
  for (const auto& [x, val] : d.index) {
    if (static_cast<int>(x.size()) - 1 != k) throw Error("shape", "index entry " + show(x) + " is not a k-simplex");
    long xi = K.index(x);
    if (xi < 0) throw Error("shape", "index entry " + show(x) + " is not a nerve simplex");
    c.comp.at(-1)[xi] = Rat(val);
  }
  return c;
}

EtaLedgerData disassemble(const DeligneModel& M, const DeligneCochain& c, const Cochain& omega) {
  const auto& K = M.base();
  EtaLedgerData d;
  d.base = K;
  d.k = M.k();
  for (const auto& [q, v] : c.comp) {
    const int p = c.n - q;
    const auto& it = M.items(p, q);
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] == 0) continue;
      if (q == -1)
        d.index[K.simplex(p, it[i].x)] = v[i].get_num();
      else
        d.eta[{K.simplex(p, it[i].x), K.simplex(q, it[i].tau)}] = v[i];
    }
  }
  for (std::size_t i = 0; i < omega.v.size(); ++i)
    if (omega.v[i] != 0) d.omega[K.simplex(omega.q, i)] = omega.v[i];
  return d;
}

Cochain omega_cochain(const EtaLedgerData& d) {
  Cochain w = zero_cochain(d.base, d.k);
  for (const auto& [s, v] : d.omega) {
    long i = d.base.index(s);
    if (static_cast<int>(s.size()) - 1 != d.k || i < 0) throw Error("shape", "omega entry " + show(s) + " is not a k-simplex");
    w.v[i] = v;
  }
  return w;
}

LedgerReport verify_closed(const EtaLedgerData& d) {
  DeligneModel M(d.base, d.k);
  const auto& K = d.base;
  const int k = d.k;
  DeligneCochain c = assemble(M, d);
  Cochain omega = omega_cochain(d);
  LedgerReport r;
  r.v_sign = d.m() % 2 ? -1 : 1;
  DeligneCochain dc = total_d(M, c);
  for (const auto& [q, v] : dc.comp) {
    const int p = dc.n - q;
    const auto& it = M.items(p, q);
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] != 0) r.defects.push_back({K.simplex(p, it[i].x), q < 0 ? Simplex{} : K.simplex(q, it[i].tau), q, v[i]});
  }
  r.closed = r.defects.empty();
  if (k == 0) {
    r.curvature_ok = is_zero(omega);
  } else {
    const auto& top = c.comp.at(k - 1);
    for (std::size_t xv = 0; xv < K.count(0); ++xv)
      for (std::size_t s : closed_star(K, K.simplex(0, xv), k)) {
        const Simplex& sig = K.simplex(k, s);
        Rat val = 0;
        for (std::size_t j = 0; j < sig.size(); ++j)
          val += (j % 2 ? -1 : 1) * top[M.find(0, k - 1, xv, K.index(face_of(sig, j)))];
        if (val != omega.v[s]) r.curvature_defects.push_back({K.simplex(0, xv), sig, k - 1, val - omega.v[s]});
      }
    r.curvature_ok = r.curvature_defects.empty();
  }
  if (k <= K.dim()) {
    auto hp = cech_presentation(K, k);
    r.v_group = hp.group();
    if (r.closed) r.v_class = char_class(M, c);
  }
  return r;
}

EtaLedgerData index_correction(const EtaLedgerData& d, const std::map<Simplex, Int>& c) {
  DeligneModel M(d.base, d.k);
  const auto& K = d.base;
  const int k = d.k;
  if (k == 0) {
    if (!c.empty()) throw Error("degree", "a degree-0 ledger has no spectral-flow corrections");
    return d;
  }
  DeligneCochain beta = zero_cochain(M, k - 2);
  auto& row = beta.comp.at(-1);
  const Int s = k % 2 ? -1 : 1;
  for (const auto& [x, v] : c) {
    long xi = K.index(x);
    if (static_cast<int>(x.size()) != k || xi < 0) throw Error("shape", "correction entry " + show(x) + " is not a (k-1)-simplex");
    row[xi] = Rat(s * v);
  }
  DeligneCochain out = add(assemble(M, d), total_d(M, beta));
  return disassemble(M, out, omega_cochain(d));
}

Int chern_factor(int k) {
  if (k == 0) return 1;
  int m = (k + 1) / 2;
  Int f = factorial(m - 1);
  return (m - 1) % 2 ? Int(-f) : f;
}

ChernHat chern_hat(const EtaLedgerData& d) {
  auto rep = verify_closed(d);
  if (!rep.closed) throw Error("precondition", "ledger data is not closed");
  if (!rep.curvature_ok) throw Error("precondition", "curvature of the ledger differs from omega");
  DeligneModel M(d.base, d.k);
  ChernHat h;
  h.factor = chern_factor(d.k);
  h.cls = scale(assemble(M, d), Rat(h.factor));
  h.curvature = scale(omega_cochain(d), Rat(h.factor));
  return h;
}

S1Bundle s1_bundle_pipeline(const SimplicialComplex& base, const Cochain& c1, int m, const std::vector<Chain>& cycles) {
  if (c1.q != 2 || c1.v.size() != base.count(2)) throw Error("degree", "c1 must be a 2-cochain on the base");
  for (const auto& x : c1.v)
    if (!is_integer(x)) throw Error("domain", "c1 must be integral");
  if (!is_zero(simplicial_d(base, c1))) throw Error("not-closed", "c1 is not closed");
  if (!is_even_class(base, c1))
    throw Error("spin", "c1 is odd; the circle bundle is spin iff c1 vanishes mod 2");
  DeligneModel M(base, 2 * m + 1);
  S1Bundle r;
  r.form = goette_eta_form(base, m, c1).form;
  r.cls = a_map(M, r.form);
  r.v_zero = char_class(M, r.cls).is_zero();
  r.curvature_zero = is_zero(curvature(M, r.cls));
  for (const auto& z : cycles) r.holonomies.push_back(holonomy(M, r.cls, z));
  return r;
}

EtaLedgerData random_fixture(const SimplicialComplex& K, int k, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto rint = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  auto rrat = [&]() {
    Rat r(rint(-6, 6), rint(1, 6));
    r.canonicalize();
    return r;
  };
  DeligneModel M(K, k);
  CechCochain z{k, Coeff::Z, RatVec(K.count(k))};
  if (k <= K.dim()) {
    auto hp = cech_presentation(K, k);
    IntVec zi(K.count(k));
    auto g = hp.group();
    for (long i = 0; i < g.betti; ++i) {
      IntVec gen = hp.free_generator(i);
      int c = rint(-2, 2);
      for (std::size_t j = 0; j < zi.size(); ++j) zi[j] += c * gen[j];
    }
    for (std::size_t i = 0; i < g.torsion.size(); ++i) {
      IntVec gen = hp.torsion_generator(i);
      int c = rint(0, 1);
      for (std::size_t j = 0; j < zi.size(); ++j) zi[j] += c * gen[j];
    }
    if (k >= 1) {
      CechCochain y{k - 1, Coeff::Z, RatVec(K.count(k - 1))};
      for (auto& v : y.values) v = rint(-2, 2);
      auto dy = cech_d(K, y);
      for (std::size_t j = 0; j < zi.size(); ++j) zi[j] += dy.values[j].get_num();
    }
    for (std::size_t j = 0; j < zi.size(); ++j) z.values[j] = Rat(zi[j]);
  }
  if (k == 0) {
    DeligneCochain c = zero_cochain(M, -1);
    c.comp.at(-1) = z.values;
    return disassemble(M, c, zero_cochain(K, 0));
  }
  DeligneCochain x = lift_cocycle(M, z);
  Cochain w = zero_cochain(K, k - 1);
  for (auto& v : w.v) v = rrat();
  x = add(x, a_map(M, w));
  DeligneCochain b = zero_cochain(M, k - 2);
  for (auto& [q, v] : b.comp)
    for (auto& e : v) e = q == -1 ? Rat(rint(-2, 2)) : rrat();
  x = add(x, total_d(M, b));
  return disassemble(M, x, curvature(M, x));
}

}  // namespace cix
