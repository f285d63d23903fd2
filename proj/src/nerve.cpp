#include "cix/nerve.hpp"

#include <algorithm>
#include <set>

namespace cix {

SimplicialComplex SimplicialComplex::from_simplices(const std::vector<std::vector<int>>& simplices,
                                                    const std::vector<int>& extra_vertices) {
  std::set<Simplex> all;
  for (auto s : simplices) {
    if (s.empty()) throw Error("structure", "empty simplex");
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw Error("structure", "simplex repeats a vertex");
    if (s.size() > 20) throw Error("structure", "simplex too large");
    const unsigned n = static_cast<unsigned>(s.size());
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      Simplex f;
      for (unsigned i = 0; i < n; ++i)
        if (mask >> i & 1u) f.push_back(s[i]);
      all.insert(f);
    }
  }
  for (int v : extra_vertices) all.insert({v});
  SimplicialComplex K;
  for (const auto& s : all) {
    std::size_t d = s.size() - 1;
    if (K.by_dim_.size() <= d) K.by_dim_.resize(d + 1);
    K.by_dim_[d].push_back(s);
  }
  for (auto& v : K.by_dim_) std::sort(v.begin(), v.end());
  if (!K.by_dim_.empty())
    for (const auto& s : K.by_dim_[0]) K.vertices_.push_back(s[0]);
  return K;
}

const std::vector<Simplex>& SimplicialComplex::simplices(int p) const {
  static const std::vector<Simplex> none;
  return p < 0 || p > dim() ? none : by_dim_[p];
}

long SimplicialComplex::index(const Simplex& s) const {
  if (s.empty()) return -1;
  int p = static_cast<int>(s.size()) - 1;
  if (p > dim()) return -1;
  const auto& v = by_dim_[p];
  auto it = std::lower_bound(v.begin(), v.end(), s);
  return it != v.end() && *it == s ? it - v.begin() : -1;
}

std::vector<std::vector<int>> SimplicialComplex::maximal() const {
  std::vector<std::vector<int>> out;
  for (int p = dim(); p >= 0; --p)
    for (const auto& s : by_dim_[p]) {
      bool covered = false;
      for (const auto& m : out)
        if (std::includes(m.begin(), m.end(), s.begin(), s.end())) {
          covered = true;
          break;
        }
      if (!covered) out.push_back(s);
    }
  std::sort(out.begin(), out.end());
  return out;
}

Simplex face_of(const Simplex& s, std::size_t j) {
  Simplex f;
  f.reserve(s.size() - 1);
  for (std::size_t i = 0; i < s.size(); ++i)
    if (i != j) f.push_back(s[i]);
  return f;
}

Simplex join(const Simplex& a, const Simplex& b) {
  Simplex u;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(u));
  return u;
}

int sort_sign(std::vector<int>& t) {
  int sign = 1;
  for (std::size_t i = 1; i < t.size(); ++i)
    for (std::size_t j = i; j > 0 && t[j - 1] > t[j]; --j) {
      std::swap(t[j - 1], t[j]);
      sign = -sign;
    }
  if (std::adjacent_find(t.begin(), t.end()) != t.end()) return 0;
  return sign;
}

std::vector<std::size_t> closed_star(const SimplicialComplex& K, const Simplex& x, int q) {
  std::vector<std::size_t> out;
  const auto& S = K.simplices(q);
  for (std::size_t i = 0; i < S.size(); ++i)
    if (K.contains(join(S[i], x))) out.push_back(i);
  return out;
}

namespace complexes {

SimplicialComplex point() { return SimplicialComplex::from_simplices({{0}}); }

SimplicialComplex hexagon() {
  std::vector<std::vector<int>> e;
  for (int i = 0; i < 6; ++i) e.push_back({i, (i + 1) % 6});
  return SimplicialComplex::from_simplices(e);
}

SimplicialComplex octahedron() {
  std::vector<std::vector<int>> t;
  for (int a : {0, 1})
    for (int b : {2, 3})
      for (int c : {4, 5}) t.push_back({a, b, c});
  return SimplicialComplex::from_simplices(t);
}

SimplicialComplex torus() {
  std::vector<std::vector<int>> t;
  for (int i = 0; i < 7; ++i) {
    t.push_back({i, (i + 1) % 7, (i + 3) % 7});
    t.push_back({i, (i + 2) % 7, (i + 3) % 7});
  }
  // stellar subdivision of {0,1,3}
  t.erase(std::remove_if(t.begin(), t.end(),
                         [](std::vector<int> s) {
                           std::sort(s.begin(), s.end());
                           return s == std::vector<int>{0, 1, 3};
                         }),
          t.end());
  t.push_back({0, 1, 7});
  t.push_back({1, 3, 7});
  t.push_back({0, 3, 7});
  return SimplicialComplex::from_simplices(t);
}

SimplicialComplex projective_plane() {
  return SimplicialComplex::from_simplices({{0, 1, 3}, {0, 1, 5}, {0, 2, 4}, {0, 2, 5}, {0, 3, 4},
                                            {1, 2, 3}, {1, 2, 4}, {1, 4, 5}, {2, 3, 5}, {3, 4, 5}});
}

SimplicialComplex full_simplex(int n) {
  if (n < 0) throw Error("domain", "negative simplex dimension");
  std::vector<int> s(n + 1);
  for (int i = 0; i <= n; ++i) s[i] = i;
  return SimplicialComplex::from_simplices({s});
}

SimplicialComplex disjoint_points(int n) {
  std::vector<std::vector<int>> s;
  for (int i = 0; i < n; ++i) s.push_back({i});
  return SimplicialComplex::from_simplices(s);
}

SimplicialComplex prism(const SimplicialComplex& K) {
  std::vector<std::vector<int>> out;
  for (const auto& m : K.maximal())
    for (std::size_t i = 0; i < m.size(); ++i) {
      std::vector<int> s;
      for (std::size_t j = 0; j <= i; ++j) s.push_back(2 * m[j]);
      for (std::size_t j = i; j < m.size(); ++j) s.push_back(2 * m[j] + 1);
      out.push_back(s);
    }
  return SimplicialComplex::from_simplices(out);
}

SimplicialComplex by_name(const std::string& name) {
  if (name == "point") return point();
  if (name == "hexagon") return hexagon();
  if (name == "octahedron") return octahedron();
  if (name == "torus") return torus();
  if (name == "rp2") return projective_plane();
  if (name.rfind("simplex", 0) == 0 && name.size() > 7) return full_simplex(std::stoi(name.substr(7)));
  throw Error("unknown-complex", "no built-in complex named '" + name + "'");
}

}  // namespace complexes

Coeff parse_coeff(const std::string& s) {
  if (s == "Z") return Coeff::Z;
  if (s == "Q") return Coeff::Q;
  if (s == "Q/Z" || s == "QZ") return Coeff::QZ;
  throw Error("unsupported-coefficients", "coefficients '" + s + "' not in {Z, Q, Q/Z}");
}

std::string coeff_name(Coeff g) { return g == Coeff::Z ? "Z" : g == Coeff::Q ? "Q" : "Q/Z"; }

std::size_t Nerve::ordered_count(int p) const { return K->count(p) * factorial(p + 1).get_ui(); }

bool Nerve::nonempty(std::vector<int> labels) const {
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  return K->contains(labels);
}

Nerve star_covering(const SimplicialComplex& K) { return Nerve{&K}; }

Rat CechCochain::eval(const SimplicialComplex& K, std::vector<int> tuple) const {
  if (static_cast<int>(tuple.size()) != p + 1) throw Error("degree", "tuple length does not match cochain degree");
  int s = sort_sign(tuple);
  if (s == 0) return 0;
  long i = K.index(tuple);
  if (i < 0) throw Error("domain", "tuple does not span a nerve simplex");
  return s * values[i];
}

IntMatrix coboundary_matrix(const SimplicialComplex& K, int p) {
  IntMatrix D(K.count(p + 1), K.count(p));
  const auto& up = K.simplices(p + 1);
  for (std::size_t i = 0; i < up.size(); ++i)
    for (std::size_t j = 0; j < up[i].size(); ++j) {
      long c = K.index(face_of(up[i], j));
      D(i, c) += (j % 2 ? -1 : 1);
    }
  return D;
}

CechCochain cech_d(const SimplicialComplex& K, const CechCochain& c) {
  if (c.values.size() != K.count(c.p)) throw Error("shape", "cochain size does not match the nerve");
  CechCochain r;
  r.p = c.p + 1;
  r.coeff = c.coeff;
  r.values = matvec(coboundary_matrix(K, c.p), c.values);
  if (c.coeff == Coeff::QZ)
    for (auto& x : r.values) x = mod_one(x);
  return r;
}

std::string CechGroup::str() const {
  if (coeff == Coeff::Z) return group.str();
  std::string s;
  if (group.betti > 0) {
    s = coeff == Coeff::Q ? "Q" : "Q/Z";
    if (group.betti > 1) s += "^" + std::to_string(group.betti);
  }
  for (const auto& t : group.torsion) s += (s.empty() ? "" : " + ") + std::string("Z/") + t.get_str();
  return s.empty() ? "0" : s;
}

namespace {
IntMatrix in_matrix(const SimplicialComplex& K, int k) {
  return k == 0 ? IntMatrix(K.count(0), 0) : coboundary_matrix(K, k - 1);
}
}  // namespace

HomologyPresentation cech_presentation(const SimplicialComplex& K, int k) {
  return HomologyPresentation(in_matrix(K, k), coboundary_matrix(K, k));
}

CechGroup cech_cohomology(const SimplicialComplex& K, Coeff g, int k) {
  CechGroup out;
  out.coeff = g;
  if (k < 0 || k > K.dim()) return out;
  HomologyGroup hz = homology_at(in_matrix(K, k), coboundary_matrix(K, k));
  if (g == Coeff::Z) {
    out.group = hz;
  } else if (g == Coeff::Q) {
    out.group.betti = hz.betti;
  } else {
    // Q/Z^(b_k) plus the torsion of H^{k+1}(Z)
    out.group.betti = hz.betti;
    if (k + 1 <= K.dim()) out.group.torsion = homology_at(in_matrix(K, k + 1), coboundary_matrix(K, k + 1)).torsion;
  }
  return out;
}

Cochain zero_cochain(const SimplicialComplex& K, int q) { return {q, RatVec(K.count(q))}; }

Cochain simplicial_d(const SimplicialComplex& K, const Cochain& w) {
  if (w.v.size() != K.count(w.q)) throw Error("shape", "cochain size does not match the complex");
  return {w.q + 1, matvec(coboundary_matrix(K, w.q), w.v)};
}

Chain simplicial_boundary(const SimplicialComplex& K, const Chain& z) {
  if (z.c.size() != K.count(z.q)) throw Error("shape", "chain size does not match the complex");
  if (z.q == 0) return {-1, {}};
  return {z.q - 1, matvec(coboundary_matrix(K, z.q - 1).transpose(), z.c)};
}

Rat evaluate(const Cochain& w, const Chain& z) {
  if (w.q != z.q || w.v.size() != z.c.size()) throw Error("degree", "evaluation of mismatched cochain and chain");
  Rat s = 0;
  for (std::size_t i = 0; i < w.v.size(); ++i)
    if (z.c[i] != 0) s += w.v[i] * Rat(z.c[i]);
  return s;
}

Cochain cup(const SimplicialComplex& K, const Cochain& a, const Cochain& b) {
  Cochain r = zero_cochain(K, a.q + b.q);
  const auto& S = K.simplices(a.q + b.q);
  for (std::size_t i = 0; i < S.size(); ++i) {
    Simplex front(S[i].begin(), S[i].begin() + a.q + 1);
    Simplex back(S[i].begin() + a.q, S[i].end());
    const Rat& x = a.v[K.index(front)];
    if (x == 0) continue;
    r.v[i] = x * b.v[K.index(back)];
  }
  return r;
}

Cochain add(const Cochain& a, const Cochain& b, const Rat& s) {
  if (a.q != b.q || a.v.size() != b.v.size()) throw Error("degree", "adding cochains of different degree");
  Cochain r = a;
  for (std::size_t i = 0; i < r.v.size(); ++i) r.v[i] += s * b.v[i];
  return r;
}

Cochain scale(const Cochain& a, const Rat& s) {
  Cochain r = a;
  for (auto& x : r.v) x *= s;
  return r;
}

bool is_zero(const Cochain& a) {
  for (const auto& x : a.v)
    if (x != 0) return false;
  return true;
}

Chain fundamental_cycle(const SimplicialComplex& K) {
  int n = K.dim();
  IntMatrix d = n == 0 ? IntMatrix(0, K.count(0)) : coboundary_matrix(K, n - 1).transpose();
  IntMatrix Z = kernel_integral(d);
  if (Z.cols != 1) throw Error("domain", "complex has no unique fundamental cycle");
  Chain z{n, IntVec(Z.rows)};
  int sign = 0;
  for (std::size_t i = 0; i < Z.rows; ++i) {
    if (sign == 0 && Z(i, 0) != 0) sign = Z(i, 0) > 0 ? 1 : -1;
    z.c[i] = Z(i, 0);
  }
  for (auto& x : z.c) x *= sign;
  return z;
}

}  // namespace cix
