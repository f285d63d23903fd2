#include "fixtures.hpp"

#include <algorithm>

namespace fixture {

using namespace cix;

Cornered random_poset(std::mt19937_64& rng) {
  static const std::vector<Cornered> pieces = {interval(), simplex(2), simplex(3), interval_merged(), point()};
  Cornered m = pieces[rng() % pieces.size()];
  for (int t = 0; t < 3; ++t) {
    const Cornered& p = pieces[rng() % pieces.size()];
    if (m.poset.atoms.size() * p.poset.atoms.size() > 40) break;
    m = product(m, p);
  }
  // merge two faces of equal positive codim
  int merges = rng() % 3;
  for (int t = 0; t < merges; ++t) {
    auto& fs = m.decomposition.faces;
    std::size_t i = rng() % fs.size(), j = rng() % fs.size();
    if (i == j || fs[i].codim != fs[j].codim || fs[i].codim == 0) continue;
    fs[i].atoms.insert(fs[i].atoms.end(), fs[j].atoms.begin(), fs[j].atoms.end());
    std::sort(fs[i].atoms.begin(), fs[i].atoms.end());
    fs[i].id = default_face_id(fs[i].atoms);
    fs.erase(fs.begin() + j);
  }
  for (const auto& a : m.poset.atoms)
    if (a.codim == 0 && rng() % 2) m.poset.orientations[a.id] = -1;
  return m;
}

Cornered random_admissible(std::mt19937_64& rng) {
  for (;;) {
    Cornered m = random_poset(rng);
    if (check_admissibility(m).verdict) return m;
  }
}

Rat rrat(std::mt19937_64& rng, int range, int den) {
  long d = 1 + static_cast<long>(rng() % den);
  long n = static_cast<long>(rng() % (2 * range * d + 1)) - range * d;
  Rat r(n, d);
  r.canonicalize();
  return r;
}

Cochain random_cochain(std::mt19937_64& rng, const SimplicialComplex& K, int q) {
  Cochain c = zero_cochain(K, q);
  for (auto& x : c.v) x = rrat(rng);
  return c;
}

DeligneCochain random_deligne(std::mt19937_64& rng, const DeligneModel& M, int n) {
  DeligneCochain c = zero_cochain(M, n);
  for (auto& [q, v] : c.comp)
    for (auto& x : v) x = q < 0 ? Rat(static_cast<long>(rng() % 7) - 3) : rrat(rng);
  return c;
}

DeligneCochain random_closed(std::mt19937_64& rng, const DeligneModel& M, bool flat) {
  const auto& K = M.base();
  const int k = M.k();
  DeligneCochain x = zero_cochain(M, k - 1);
  HomologyPresentation P = cech_presentation(K, k);
  HomologyGroup g = P.group();
  CechCochain z;
  z.p = k;
  z.values.assign(K.count(k), Rat(0));
  auto addv = [&](const IntVec& v, long s) {
    for (std::size_t i = 0; i < v.size(); ++i) z.values[i] += Rat(v[i] * s);
  };
  for (long i = 0; i < g.betti; ++i)
    if (!flat) addv(P.free_generator(i), static_cast<long>(rng() % 5) - 2);
  for (std::size_t j = 0; j < g.torsion.size(); ++j) addv(P.torsion_generator(j), static_cast<long>(rng() % 3));
  if (k >= 1 && K.count(k - 1)) {
    CechCochain y;
    y.p = k - 1;
    for (std::size_t i = 0; i < K.count(k - 1); ++i) y.values.push_back(Rat(static_cast<long>(rng() % 5) - 2));
    CechCochain dy = cech_d(K, y);
    for (std::size_t i = 0; i < dy.values.size(); ++i) z.values[i] += dy.values[i];
  }
  x = lift_cocycle(M, z, flat);
  if (k >= 1) {
    Cochain w = random_cochain(rng, K, k - 1);
    if (flat) w = k >= 2 ? simplicial_d(K, random_cochain(rng, K, k - 2)) : zero_cochain(K, 0);
    x = add(x, a_map(M, w));
  }
  if (k >= 1) x = add(x, total_d(M, random_deligne(rng, M, k - 2)));
  return x;
}

}  // namespace fixture
