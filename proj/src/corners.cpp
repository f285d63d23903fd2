#include "cix/corners.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace cix {

PosetIndex::PosetIndex(const FacePoset& p) {
  if (p.dim < 0) throw Error("structure", "negative dimension");
  for (const auto& a : p.atoms) {
    if (a.id.empty()) throw Error("structure", "atom with empty id");
    if (a.codim < 0 || a.codim > p.dim)
      throw Error("structure", "atom '" + a.id + "' has codim outside 0.." + std::to_string(p.dim));
    if (!pos_.emplace(a.id, ids_.size()).second) throw Error("structure", "duplicate atom id '" + a.id + "'");
    ids_.push_back(a.id);
    codim_.push_back(a.codim);
  }
  up_.resize(ids_.size());
  down_.resize(ids_.size());
  for (const auto& ps : p.passages) {
    int lo = index(ps.lower), hi = index(ps.upper);
    if (lo < 0 || hi < 0)
      throw Error("structure", "passage references unknown atom '" + (lo < 0 ? ps.lower : ps.upper) + "'");
    if (codim_[lo] != codim_[hi] + 1)
      throw Error("structure", "passage " + ps.lower + " < " + ps.upper + " does not join adjacent codimensions");
    if (ps.sign != 1 && ps.sign != -1) throw Error("structure", "passage sign must be +1 or -1");
    if (ps.mult < 1) throw Error("structure", "passage multiplicity must be positive");
    for (int m = 0; m < ps.mult; ++m) {
      up_[lo].push_back({static_cast<std::size_t>(hi), ps.sign});
      down_[hi].push_back({static_cast<std::size_t>(lo), ps.sign});
    }
  }
}

int PosetIndex::index(const std::string& id) const {
  auto it = pos_.find(id);
  return it == pos_.end() ? -1 : static_cast<int>(it->second);
}

long PosetIndex::chains(std::size_t a, std::size_t b) const {
  if (a == b) return 1;
  if (codim_[a] <= codim_[b]) return 0;
  long n = 0;
  for (const auto& s : up_[a]) n += chains(s.to, b);
  return n;
}

ValidationReport validate_poset(const FacePoset& p) {
  PosetIndex idx(p);
  ValidationReport rep;
  const std::size_t n = idx.size();
  // adjacent pairs reached more than once
  for (std::size_t a = 0; a < n; ++a) {
    std::map<std::size_t, int> cnt;
    for (const auto& s : idx.up(a)) ++cnt[s.to];
    for (auto [b, c] : cnt)
      if (c > 1)
        rep.notes.push_back("corner reached twice through one atom: '" + idx.id(a) + "' lies " + std::to_string(c) +
                            " times on '" + idx.id(b) + "'");
  }
  for (std::size_t a = 0; a < n; ++a) {
    std::map<std::size_t, std::pair<long, long>> acc;  // b -> (count, signed)
    for (const auto& s1 : idx.up(a))
      for (const auto& s2 : idx.up(s1.to)) {
        auto& e = acc[s2.to];
        e.first += 1;
        e.second += s1.sign * s2.sign;
      }
    for (auto& [b, e] : acc) {
      if (e.first != 2) {
        rep.failures.push_back({"diamond", idx.id(a), idx.id(b),
                                "interval has " + std::to_string(e.first) + " passage chains, expected 2"});
      } else if (e.second != 0) {
        rep.failures.push_back({"sign", idx.id(a), idx.id(b), "the two passage chains carry equal signs"});
      }
    }
  }
  std::sort(rep.notes.begin(), rep.notes.end());
  rep.valid = rep.failures.empty();
  return rep;
}

std::string default_face_id(std::vector<std::string> atoms) {
  std::sort(atoms.begin(), atoms.end());
  std::string s;
  for (std::size_t i = 0; i < atoms.size(); ++i) s += (i ? "," : "") + atoms[i];
  return s;
}

void check_partition(const FacePoset& p, const FaceDecomposition& d) {
  std::map<std::string, int> codim;
  for (const auto& a : p.atoms) codim[a.id] = a.codim;
  std::set<std::string> seen, fids;
  for (const auto& f : d.faces) {
    if (f.atoms.empty()) throw Error("partition", "face '" + f.id + "' is empty");
    if (!fids.insert(f.id).second) throw Error("partition", "duplicate face id '" + f.id + "'");
    for (const auto& a : f.atoms) {
      auto it = codim.find(a);
      if (it == codim.end()) throw Error("partition", "face '" + f.id + "' names unknown atom '" + a + "'");
      if (it->second != f.codim)
        throw Error("partition", "atom '" + a + "' has codim " + std::to_string(it->second) + " but face '" + f.id +
                                     "' has codim " + std::to_string(f.codim));
      if (!seen.insert(a).second) throw Error("partition", "atom '" + a + "' lies in two faces");
    }
  }
  for (const auto& a : p.atoms)
    if (!seen.count(a.id)) throw Error("partition", "atom '" + a.id + "' lies in no face");
}

AdmissibilityReport check_admissibility(const FacePoset& p, const FaceDecomposition& d) {
  auto vr = validate_poset(p);
  if (!vr.valid)
    throw Error("precondition", "poset fails validation at " + vr.failures[0].lower + " < " + vr.failures[0].upper);
  check_partition(p, d);
  PosetIndex idx(p);
  AdmissibilityReport rep;
  const std::size_t n = idx.size();
  // embedding: each atom of a face sees its sub-atoms as in a corner model, and atoms of a face stay apart
  for (const auto& f : d.faces) {
    std::map<std::size_t, std::string> owner;
    for (const auto& x : f.atoms) {
      std::size_t xi = idx.index(x);
      for (std::size_t a = 0; a < n; ++a) {
        if (idx.codim(a) <= idx.codim(xi)) continue;
        long c = idx.chains(a, xi);
        if (c == 0) continue;
        long expect = factorial(idx.codim(a) - idx.codim(xi)).get_si();
        if (c != expect) {
          rep.violations.push_back({"embedding-failure", f.id, {x},
                                    "'" + idx.id(a) + "' is reached " + std::to_string(c) + " times, a corner model gives " +
                                        std::to_string(expect)});
          continue;
        }
        auto [it, fresh] = owner.emplace(a, x);
        if (!fresh && it->second != x)
          rep.violations.push_back({"embedding-failure", f.id, {it->second, x},
                                    "atoms meet along '" + idx.id(a) + "'"});
      }
    }
  }
  // boundaries of faces are unions of faces
  for (const auto& j : d.faces) {
    std::set<std::string> under;
    for (const auto& x : j.atoms) {
      std::size_t xi = idx.index(x);
      for (std::size_t a = 0; a < n; ++a)
        if (idx.codim(a) > idx.codim(xi) && idx.chains(a, xi) > 0) under.insert(idx.id(a));
    }
    for (const auto& f : d.faces) {
      if (f.codim <= j.codim) continue;
      std::vector<std::string> in, out;
      for (const auto& a : f.atoms) (under.count(a) ? in : out).push_back(a);
      if (!in.empty() && !out.empty())
        rep.violations.push_back({"face-union-failure", j.id, f.atoms,
                                  "face '" + f.id + "' meets the boundary of '" + j.id + "' only partially"});
    }
  }
  // deduplicate witnesses of the same violation
  std::sort(rep.violations.begin(), rep.violations.end(), [](const auto& a, const auto& b) {
    return std::tie(a.kind, a.face, a.witness, a.detail) < std::tie(b.kind, b.face, b.witness, b.detail);
  });
  rep.violations.erase(std::unique(rep.violations.begin(), rep.violations.end(),
                                   [](const auto& a, const auto& b) {
                                     return a.kind == b.kind && a.face == b.face && a.witness == b.witness &&
                                            a.detail == b.detail;
                                   }),
                       rep.violations.end());
  rep.verdict = rep.violations.empty();
  return rep;
}

namespace {

void require_admissible(const Cornered& m, const char* what) {
  auto r = check_admissibility(m);
  if (!r.verdict) throw Error("precondition", std::string(what) + ": input decomposition is not admissible");
}

int orientation_of(const FacePoset& p, const std::string& id) {
  auto it = p.orientations.find(id);
  return it == p.orientations.end() ? 1 : it->second;
}

}  // namespace

Cornered product(const Cornered& A, const Cornered& B) {
  require_admissible(A, "product");
  require_admissible(B, "product");
  const FacePoset& P = A.poset;
  const FacePoset& Q = B.poset;
  auto name = [](const std::string& a, const std::string& b) { return a + "*" + b; };
  Cornered r;
  r.poset.dim = P.dim + Q.dim;
  for (const auto& a : P.atoms)
    for (const auto& b : Q.atoms) {
      r.poset.atoms.push_back({name(a.id, b.id), a.codim + b.codim, a.connected && b.connected});
      if (a.codim == 0 && b.codim == 0) {
        int o = orientation_of(P, a.id) * orientation_of(Q, b.id);
        if (o != 1) r.poset.orientations[name(a.id, b.id)] = o;
      }
    }
  std::map<std::string, int> qdim;
  for (const auto& b : Q.atoms) qdim[b.id] = Q.dim - b.codim;
  // a step in the first factor passes over the second factor's atom: sign (-1)^dim
  for (const auto& ps : P.passages)
    for (const auto& b : Q.atoms) {
      int s = (qdim[b.id] % 2 ? -1 : 1) * ps.sign;
      r.poset.passages.push_back({name(ps.lower, b.id), name(ps.upper, b.id), s, ps.mult});
    }
  for (const auto& a : P.atoms)
    for (const auto& ps : Q.passages)
      r.poset.passages.push_back({name(a.id, ps.lower), name(a.id, ps.upper), ps.sign, ps.mult});
  for (const auto& f : A.decomposition.faces)
    for (const auto& g : B.decomposition.faces) {
      Face h;
      h.codim = f.codim + g.codim;
      for (const auto& a : f.atoms)
        for (const auto& b : g.atoms) h.atoms.push_back(name(a, b));
      std::sort(h.atoms.begin(), h.atoms.end());
      h.id = name(f.id, g.id);
      r.decomposition.faces.push_back(std::move(h));
    }
  return r;
}

const Face& find_face(const FaceDecomposition& d, const std::string& id) {
  for (const auto& f : d.faces)
    if (f.id == id) return f;
  throw Error("unknown-face", "no face with id '" + id + "'");
}

bool face_below(const Cornered&, const PosetIndex& idx, const Face& j, const Face& i) {
  if (j.codim <= i.codim) return false;
  for (const auto& a : j.atoms)
    for (const auto& b : i.atoms)
      if (idx.chains(idx.index(a), idx.index(b)) > 0) return true;
  return false;
}

Cornered boundary_face(const Cornered& m, const std::string& fid) {
  const Face& j = find_face(m.decomposition, fid);
  if (j.codim < 1) throw Error("domain", "boundary_face needs a face of codim >= 1");
  PosetIndex idx(m.poset);
  std::set<std::string> keep;
  for (const auto& x : j.atoms) {
    std::size_t xi = idx.index(x);
    for (std::size_t a = 0; a < idx.size(); ++a)
      if (idx.below(a, xi)) keep.insert(idx.id(a));
  }
  Cornered r;
  r.poset.dim = m.poset.dim - j.codim;
  for (const auto& a : m.poset.atoms)
    if (keep.count(a.id)) r.poset.atoms.push_back({a.id, a.codim - j.codim, a.connected});
  for (const auto& ps : m.poset.passages)
    if (keep.count(ps.lower) && keep.count(ps.upper)) r.poset.passages.push_back(ps);
  for (const auto& f : m.decomposition.faces) {
    if (f.codim < j.codim) continue;
    if (f.codim == j.codim) {
      if (f.id == j.id) r.decomposition.faces.push_back({f.id, 0, f.atoms});
      continue;
    }
    std::size_t inside = 0;
    for (const auto& a : f.atoms) inside += keep.count(a);
    if (inside == 0) continue;
    if (inside != f.atoms.size())
      throw Error("precondition", "face '" + f.id + "' is cut by the boundary of '" + j.id + "'");
    r.decomposition.faces.push_back({f.id, f.codim - j.codim, f.atoms});
  }
  return r;
}

std::string adjacent_face(const Cornered& m, const std::string& i, const std::string& k) {
  PosetIndex idx(m.poset);
  const Face& fi = find_face(m.decomposition, i);
  const Face& fk = find_face(m.decomposition, k);
  if (fi.codim != 1 || fk.codim != 2) throw Error("domain", "adjacent_face needs a codim-1 face and a codim-2 face");
  if (!face_below(m, idx, fk, fi)) throw Error("domain", "'" + k + "' is not below '" + i + "'");
  std::vector<std::string> cand;
  for (const auto& f : m.decomposition.faces)
    if (f.codim == 1 && f.id != i && face_below(m, idx, fk, f)) cand.push_back(f.id);
  if (cand.size() != 1)
    throw Error("not-unique", std::to_string(cand.size()) + " candidate adjacent faces for ('" + i + "', '" + k +
                                  "'); the decomposition is not admissible");
  return cand[0];
}

FaceDecomposition reduce(const FacePoset& p, const FaceDecomposition& d) {
  check_partition(p, d);
  FaceDecomposition r;
  Face top;
  top.codim = 0;
  for (const auto& f : d.faces) {
    if (f.codim == 0)
      top.atoms.insert(top.atoms.end(), f.atoms.begin(), f.atoms.end());
    else
      r.faces.push_back(f);
  }
  if (!top.atoms.empty()) {
    std::sort(top.atoms.begin(), top.atoms.end());
    top.id = default_face_id(top.atoms);
    r.faces.insert(r.faces.begin(), std::move(top));
  }
  return r;
}

FaceDecomposition atomic_decomposition(const FacePoset& p) {
  FaceDecomposition d;
  for (const auto& a : p.atoms) d.faces.push_back({a.id, a.codim, {a.id}});
  return d;
}

std::vector<long> atom_counts(const FacePoset& p) {
  std::vector<long> c(p.dim + 1, 0);
  for (const auto& a : p.atoms) ++c.at(a.codim);
  return c;
}

std::vector<long> face_counts(const Cornered& m) {
  std::vector<long> c(m.poset.dim + 1, 0);
  for (const auto& f : m.decomposition.faces) ++c.at(f.codim);
  return c;
}

Cornered point() {
  Cornered m;
  m.poset.dim = 0;
  m.poset.atoms = {{"pt", 0, true}};
  m.decomposition = atomic_decomposition(m.poset);
  return m;
}

Cornered interval() {
  Cornered m;
  m.poset.dim = 1;
  m.poset.atoms = {{"c", 0, true}, {"0", 1, true}, {"1", 1, true}};
  m.poset.passages = {{"0", "c", 1, 1}, {"1", "c", -1, 1}};
  m.decomposition = atomic_decomposition(m.poset);
  return m;
}

Cornered interval_merged() {
  Cornered m = interval();
  m.decomposition.faces = {{"c", 0, {"c"}}, {"0,1", 1, {"0", "1"}}};
  return m;
}

Cornered simplex(int n) {
  if (n < 0) throw Error("domain", "simplex dimension must be >= 0");
  Cornered m;
  m.poset.dim = n;
  auto name = [](const std::vector<int>& s) {
    std::string r = "[";
    for (std::size_t i = 0; i < s.size(); ++i) r += (i ? "," : "") + std::to_string(s[i]);
    return r + "]";
  };
  const int verts = n + 1;
  // codim-k atoms: k-subsets S of {0..n} with |S| <= n (the face where the coordinates in S vanish)
  for (unsigned mask = 0; mask < (1u << verts); ++mask) {
    std::vector<int> s;
    for (int v = 0; v < verts; ++v)
      if (mask >> v & 1u) s.push_back(v);
    if (static_cast<int>(s.size()) > n) continue;
    m.poset.atoms.push_back({name(s), static_cast<int>(s.size()), true});
    int pos = 0;
    for (int j = 0; j < verts; ++j) {
      if (mask >> j & 1u) continue;
      // adding j: sign from j's position among the coordinates still free
      if (static_cast<int>(s.size()) + 1 <= n) {
        std::vector<int> t = s;
        t.insert(std::lower_bound(t.begin(), t.end(), j), j);
        m.poset.passages.push_back({name(t), name(s), pos % 2 ? -1 : 1, 1});
      }
      ++pos;
    }
  }
  std::sort(m.poset.atoms.begin(), m.poset.atoms.end(),
            [](const Atom& a, const Atom& b) { return std::tie(a.codim, a.id) < std::tie(b.codim, b.id); });
  m.decomposition = atomic_decomposition(m.poset);
  return m;
}

Cornered one_eck() {
  Cornered m;
  m.poset.dim = 2;
  m.poset.atoms = {{"D", 0, true}, {"A", 1, true}, {"p", 2, true}};
  m.poset.passages = {{"A", "D", 1, 1}, {"p", "A", 1, 1}, {"p", "A", -1, 1}};
  m.decomposition = atomic_decomposition(m.poset);
  return m;
}

Cornered power(const Cornered& m, int n) {
  if (n < 0) throw Error("domain", "negative power");
  Cornered r = point();
  if (n == 0) return r;
  r = m;
  for (int i = 1; i < n; ++i) r = product(r, m);
  return r;
}

Cornered q4_example() {
  Cornered cube = power(interval(), 4);
  auto rename = [](const std::string& s) {
    std::string r;
    for (char c : s)
      if (c != '*') r += (c == 'c' ? 'I' : c);
    return r;
  };
  Cornered q;
  q.poset.dim = 4;
  for (const auto& a : cube.poset.atoms) q.poset.atoms.push_back({rename(a.id), a.codim, true});
  for (const auto& ps : cube.poset.passages)
    q.poset.passages.push_back({rename(ps.lower), rename(ps.upper), ps.sign, ps.mult});
  auto antipode = [](std::string s) {
    for (char& c : s) c = c == '0' ? '1' : c == '1' ? '0' : c;
    return s;
  };
  std::set<std::string> done;
  for (const auto& a : q.poset.atoms) {
    if (done.count(a.id)) continue;
    if (a.codim == 0) {
      q.decomposition.faces.push_back({a.id, 0, {a.id}});
      done.insert(a.id);
      continue;
    }
    std::vector<std::string> pair{a.id, antipode(a.id)};
    std::sort(pair.begin(), pair.end());
    done.insert(pair.begin(), pair.end());
    q.decomposition.faces.push_back({default_face_id(pair), a.codim, pair});
  }
  return q;
}

}  // namespace cix
