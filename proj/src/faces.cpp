#include "cix/faces.hpp"

#include <algorithm>

namespace cix {

int FaceComplex::position(int k, const std::string& face) const {
  if (k < 0 || k > dim) return -1;
  const auto& g = generators[k];
  auto it = std::lower_bound(g.begin(), g.end(), face);
  return it != g.end() && *it == face ? static_cast<int>(it - g.begin()) : -1;
}

int FaceComplex::kappa(const std::string& lower, const std::string& upper) const {
  for (int k = 0; k < dim; ++k) {
    int i = position(k, upper), j = position(k + 1, lower);
    if (i >= 0 && j >= 0) return complex.boundary[k + 1](i, j).get_si();
  }
  return 0;
}

FaceComplex build_face_complex(const Cornered& m, const FaceComplexOptions& opt) {
  auto adm = check_admissibility(m);
  if (!adm.verdict)
    throw Error("precondition", "face complex needs an admissible decomposition (" + adm.violations[0].kind + " at '" +
                                    adm.violations[0].face + "')");
  const FacePoset& P = m.poset;
  PosetIndex idx(P);
  FaceComplex F;
  F.dim = P.dim;
  F.generators.resize(P.dim + 1);
  std::map<std::string, const Face*> byid;
  for (const auto& f : m.decomposition.faces) {
    F.generators[f.codim].push_back(f.id);
    byid[f.id] = &f;
  }
  for (auto& g : F.generators) std::sort(g.begin(), g.end());
  auto base = opt.base_orientations.empty() ? P.orientations : opt.base_orientations;
  for (const auto& fid : F.generators[0]) {
    auto& o = F.orientation[fid];
    for (const auto& a : byid[fid]->atoms) {
      auto it = base.find(a);
      o[a] = it == base.end() ? 1 : it->second;
    }
  }
  F.complex.ranks.resize(P.dim + 1);
  for (int k = 0; k <= P.dim; ++k) F.complex.ranks[k] = F.generators[k].size();
  F.complex.boundary.assign(P.dim + 1, IntMatrix());
  F.complex.boundary[0] = IntMatrix(0, F.complex.ranks[0]);
  for (int c = 0; c < P.dim; ++c) {
    IntMatrix B(F.complex.ranks[c], F.complex.ranks[c + 1]);
    for (std::size_t ii = 0; ii < F.generators[c].size(); ++ii) {
      const Face& fi = *byid[F.generators[c][ii]];
      std::map<std::size_t, int> oi;
      for (auto& [a, s] : F.orientation[fi.id]) oi[idx.index(a)] = s;
      for (std::size_t jj = 0; jj < F.generators[c + 1].size(); ++jj) {
        const Face& fj = *byid[F.generators[c + 1][jj]];
        if (!face_below(m, idx, fj, fi)) continue;
        std::map<std::string, int> induced;
        for (const auto& a : fj.atoms) {
          int hits = 0, s = 0;
          for (const auto& st : idx.up(idx.index(a)))
            if (oi.count(st.to)) {
              ++hits;
              s = oi[st.to] * st.sign;
            }
          if (hits != 1)
            throw Error("orientation", "atom '" + a + "' of face '" + fj.id + "' meets face '" + fi.id + "' " +
                                           std::to_string(hits) + " times");
          induced[a] = s;
        }
        auto [it, fresh] = F.orientation.emplace(fj.id, induced);
        int eps = 1;
        if (!fresh) {
          bool same = true, opposite = true;
          for (auto& [a, s] : induced) {
            same = same && it->second[a] == s;
            opposite = opposite && it->second[a] == -s;
          }
          if (!same && !opposite)
            throw Error("orientation", "interval ('" + fj.id + "' < '" + fi.id +
                                           "') induces an orientation outside the propagated orbit");
          eps = same ? 1 : -1;
        }
        B(ii, jj) = eps;
      }
    }
    F.complex.boundary[c + 1] = std::move(B);
  }
  for (const auto& fid : opt.flip) {
    auto it = F.orientation.find(fid);
    if (it == F.orientation.end()) throw Error("unknown-face", "cannot flip unknown face '" + fid + "'");
    for (auto& [a, s] : it->second) s = -s;
    int k = byid[fid]->codim;
    int p = F.position(k, fid);
    if (k + 1 <= P.dim) {
      auto& up = F.complex.boundary[k + 1];
      for (std::size_t j = 0; j < up.cols; ++j) up(p, j) = -up(p, j);
    }
    if (k >= 1) {
      auto& dn = F.complex.boundary[k];
      for (std::size_t i = 0; i < dn.rows; ++i) dn(i, p) = -dn(i, p);
    }
  }
  return F;
}

HomologyGroup face_homology(const FaceComplex& F, int k) {
  if (k < 0 || k > F.dim) return {};
  return homology(F.complex, k);
}

IntVec to_vector(const FaceComplex& F, const ObstructionChain& c) {
  if (c.degree < 0 || c.degree > F.dim) throw Error("degree", "chain degree out of range");
  IntVec v(F.rank(c.degree));
  for (const auto& [f, x] : c.coeffs) {
    int p = F.position(c.degree, f);
    if (p < 0) throw Error("unknown-face", "no face '" + f + "' in degree " + std::to_string(c.degree));
    v[p] += x;
  }
  return v;
}

ObstructionChain from_vector(const FaceComplex& F, int degree, const IntVec& v) {
  ObstructionChain c;
  c.degree = degree;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) c.coeffs[F.generators[degree][i]] = v[i];
  return c;
}

ObstructionChain boundary(const FaceComplex& F, const ObstructionChain& c) {
  IntVec v = to_vector(F, c);
  if (c.degree == 0) return {-1, {}};
  return from_vector(F, c.degree - 1, matvec(F.complex.boundary[c.degree], v));
}

ObstructionChain dual_d(const FaceComplex& F, const ObstructionChain& u) {
  IntVec v = to_vector(F, u);
  if (u.degree == F.dim) return {F.dim + 1, {}};
  return from_vector(F, u.degree + 1, matvec(F.complex.boundary[u.degree + 1].transpose(), v));
}

Int dual_pairing(const FaceComplex& F, const ObstructionChain& c, const ObstructionChain& u) {
  if (c.degree != u.degree) throw Error("degree", "pairing of a degree-" + std::to_string(c.degree) +
                                                      " chain with a degree-" + std::to_string(u.degree) + " cochain");
  if (c.degree < 0 || c.degree > F.dim) return 0;
  IntVec a = to_vector(F, c), b = to_vector(F, u);
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

namespace {

void require_closed(const FaceComplex& F, const ObstructionChain& c) {
  if (c.degree == 0) return;
  IntVec d = matvec(F.complex.boundary[c.degree], to_vector(F, c));
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i] != 0)
      throw Error("not-closed", "obstruction chain is not closed at face '" + F.generators[c.degree - 1][i] + "'");
}

}  // namespace

DescendResult obstruction_descend(const FaceComplex& F, const ObstructionChain& c) {
  require_closed(F, c);
  HomologyPresentation hp(F.complex.incoming(c.degree), F.complex.outgoing(c.degree));
  DescendResult r;
  r.cls = hp.coords(to_vector(F, c));
  r.group = hp.group();
  r.zero = r.cls.is_zero();
  return r;
}

std::optional<ObstructionChain> correction_chain(const FaceComplex& F, const ObstructionChain& c,
                                                 const ObstructionChain& c2) {
  if (c.degree != c2.degree) throw Error("degree", "correction between chains of different degree");
  IntVec a = to_vector(F, c), b = to_vector(F, c2);
  for (std::size_t i = 0; i < a.size(); ++i) b[i] -= a[i];
  auto D = solve_integral(F.complex.incoming(c.degree), b);
  if (!D) return std::nullopt;
  return from_vector(F, c.degree + 1, *D);
}

FeasibilityResult taming_feasibility(const Cornered& m, const Supplier& s, const FaceComplexOptions& opt) {
  FaceComplex F = build_face_complex(m, opt);
  FeasibilityResult res;
  for (const auto& lvl : s.levels) {
    FeasibilityStep st;
    st.degree = lvl.degree;
    DescendResult d = obstruction_descend(F, lvl);
    st.cls = d.cls;
    ObstructionChain target{lvl.degree, {}};
    if (d.zero) {
      st.action = lvl.coeffs.empty() ? "zero" : "corrected";
      st.correction = *correction_chain(F, lvl, target);
      res.steps.push_back(std::move(st));
      continue;
    }
    bool free_part = false;
    for (const auto& x : d.cls.free) free_part = free_part || x != 0;
    if (free_part || !s.scalable) {
      st.action = "blocked";
      res.feasible = false;
      res.witness = "degree " + std::to_string(lvl.degree) + ": class " +
                    (free_part ? "has a free component" : "is torsion and the supplier does not permit scaling");
      res.steps.push_back(std::move(st));
      break;
    }
    Int N = 1;
    for (std::size_t i = 0; i < d.cls.torsion.size(); ++i)
      if (d.cls.torsion[i] != 0) {
        Int g;
        mpz_gcd(g.get_mpz_t(), d.cls.torsion[i].get_mpz_t(), d.cls.orders[i].get_mpz_t());
        Int ord = d.cls.orders[i] / g;
        mpz_lcm(N.get_mpz_t(), N.get_mpz_t(), ord.get_mpz_t());
      }
    ObstructionChain scaled = lvl;
    for (auto& [f, x] : scaled.coeffs) x *= N;
    st.action = "scaled";
    st.scale = N;
    st.correction = *correction_chain(F, scaled, target);
    res.scale *= N;
    res.steps.push_back(std::move(st));
  }
  return res;
}

}  // namespace cix
