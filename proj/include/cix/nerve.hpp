#pragma once

#include <string>
#include <vector>

#include "cix/homology.hpp"

namespace cix {

using Simplex = std::vector<int>;  // strictly increasing vertex labels

class SimplicialComplex {
 public:
  SimplicialComplex() = default;
  // closes the given simplices under faces; input vertex lists may be unsorted
  static SimplicialComplex from_simplices(const std::vector<std::vector<int>>& simplices,
                                          const std::vector<int>& extra_vertices = {});

  int dim() const { return static_cast<int>(by_dim_.size()) - 1; }
  std::size_t count(int p) const { return p < 0 || p > dim() ? 0 : by_dim_[p].size(); }
  const std::vector<Simplex>& simplices(int p) const;
  const Simplex& simplex(int p, std::size_t i) const { return by_dim_[p][i]; }
  long index(const Simplex& s) const;  // -1 if absent; s must be sorted
  bool contains(const Simplex& s) const { return index(s) >= 0; }
  const std::vector<int>& vertices() const { return vertices_; }
  std::vector<std::vector<int>> maximal() const;

 private:
  std::vector<int> vertices_;
  std::vector<std::vector<Simplex>> by_dim_;
};

Simplex face_of(const Simplex& s, std::size_t j);  // drop the j-th vertex
Simplex join(const Simplex& a, const Simplex& b);   // sorted union
// sorts t in place; returns the permutation sign, or 0 if a label repeats
int sort_sign(std::vector<int>& t);

// q-simplices tau with tau u x in K (the closed star of x)
std::vector<std::size_t> closed_star(const SimplicialComplex& K, const Simplex& x, int q);

namespace complexes {
SimplicialComplex point();
SimplicialComplex hexagon();
SimplicialComplex octahedron();
SimplicialComplex torus();  // 16 triangles
SimplicialComplex projective_plane();
SimplicialComplex full_simplex(int n);
SimplicialComplex disjoint_points(int n);
// I x K with the staircase subdivision; vertex (v, t) is labelled 2v + t
SimplicialComplex prism(const SimplicialComplex& K);
SimplicialComplex by_name(const std::string& name);  // throws on unknown names
}  // namespace complexes

enum class Coeff { Z, Q, QZ };
Coeff parse_coeff(const std::string& s);
std::string coeff_name(Coeff g);

// Star covering U_v = open star of v. U_x is nonempty iff x spans a simplex, so the
// nondegenerate p-simplices of the ordered nerve are the orderings of K's p-simplices.
struct Nerve {
  const SimplicialComplex* K = nullptr;
  std::size_t ordered_count(int p) const;   // nondegenerate ordered p-simplices
  std::size_t sorted_count(int p) const { return K->count(p); }
  bool nonempty(std::vector<int> labels) const;
};
Nerve star_covering(const SimplicialComplex& K);

// Alternating cochain, one value per sorted p-simplex.
struct CechCochain {
  int p = 0;
  Coeff coeff = Coeff::Z;
  RatVec values;
  Rat eval(const SimplicialComplex& K, std::vector<int> tuple) const;
};

IntMatrix coboundary_matrix(const SimplicialComplex& K, int p);  // C^p -> C^{p+1}
CechCochain cech_d(const SimplicialComplex& K, const CechCochain& c);

struct CechGroup {
  Coeff coeff = Coeff::Z;
  HomologyGroup group;  // for Q/Z, betti counts Q/Z summands
  std::string str() const;
};
CechGroup cech_cohomology(const SimplicialComplex& K, Coeff g, int k);
HomologyPresentation cech_presentation(const SimplicialComplex& K, int k);

// Global simplicial cochains and chains on K.
struct Cochain {
  int q = 0;
  RatVec v;
};
struct Chain {
  int q = 0;
  IntVec c;
};

Cochain zero_cochain(const SimplicialComplex& K, int q);
Cochain simplicial_d(const SimplicialComplex& K, const Cochain& w);
Chain simplicial_boundary(const SimplicialComplex& K, const Chain& z);
Rat evaluate(const Cochain& w, const Chain& z);
Cochain cup(const SimplicialComplex& K, const Cochain& a, const Cochain& b);
Cochain add(const Cochain& a, const Cochain& b, const Rat& s = 1);
Cochain scale(const Cochain& a, const Rat& s);
bool is_zero(const Cochain& a);
// integral generator of H_top for a closed connected orientable pseudomanifold
Chain fundamental_cycle(const SimplicialComplex& K);

}  // namespace cix
