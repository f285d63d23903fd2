#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cix/nerve.hpp"

namespace cix {

// Sparse integer matrix (triplets, rows sorted).
struct SparseMatrix {
  std::size_t rows = 0, cols = 0;
  struct Entry {
    std::size_t r, c;
    long v;
  };
  std::vector<Entry> e;
  RatVec apply(const RatVec& x) const;
  RatVec apply_ref(const RatVec& x) const;
  IntMatrix dense() const;
  IntMatrix dense_cols(const std::vector<std::size_t>& cols) const;
};

// Discrete Deligne double complex of the star covering of K, truncated at form degree k-1.
// Block (p,q): q = -1 holds integers on nerve p-simplices; q >= 0 holds rational values on
// pairs (x, tau) with x a p-simplex and tau a q-simplex of the closed star of x.
class DeligneModel {
 public:
  DeligneModel(SimplicialComplex K, int k);

  const SimplicialComplex& base() const { return K_; }
  int k() const { return k_; }

  struct Item {
    std::size_t x, tau;
  };
  const std::vector<Item>& items(int p, int q) const;
  long find(int p, int q, std::size_t x, std::size_t tau) const;  // -1 if absent

  std::vector<int> qs(int n) const;  // form degrees present in total degree n
  std::size_t offset(int n, int q) const;
  std::size_t total_size(int n) const;
  const SparseMatrix& d(int n) const;  // total degree n -> n+1

 private:
  SimplicialComplex K_;
  int k_;
  std::map<std::pair<int, int>, std::vector<Item>> items_;
  std::map<std::pair<int, int>, std::map<std::pair<std::size_t, std::size_t>, std::size_t>> lookup_;
  std::map<int, SparseMatrix> d_;
  SparseMatrix build_d(int n) const;
};

struct DeligneCochain {
  int k = 0;
  int n = 0;                    // total degree; cocycles live in n = k-1
  std::map<int, RatVec> comp;   // q -> values on items(n-q, q)
};

DeligneCochain zero_cochain(const DeligneModel& M, int n);
RatVec flatten(const DeligneModel& M, const DeligneCochain& c);
DeligneCochain unflatten(const DeligneModel& M, int n, const RatVec& v);
DeligneCochain add(const DeligneCochain& a, const DeligneCochain& b, const Rat& s = 1);
DeligneCochain scale(const DeligneCochain& a, const Rat& s);
bool is_zero(const DeligneCochain& c);
bool well_formed(const DeligneModel& M, const DeligneCochain& c);  // shapes and integrality of q = -1

DeligneCochain total_d(const DeligneModel& M, const DeligneCochain& c);
bool is_closed(const DeligneModel& M, const DeligneCochain& c);

Cochain curvature(const DeligneModel& M, const DeligneCochain& x);
ClassCoords char_class(const DeligneModel& M, const DeligneCochain& x);
CechCochain underlying_cocycle(const DeligneModel& M, const DeligneCochain& x);
DeligneCochain a_map(const DeligneModel& M, const Cochain& omega);

std::optional<DeligneCochain> is_coboundary(const DeligneModel& M, const DeligneCochain& c);

enum class Neighborhood { SupportClosure, ClosedStar };
Rat holonomy(const DeligneModel& M, const DeligneCochain& x, const Chain& z,
             Neighborhood nb = Neighborhood::SupportClosure);

// Closed cochain whose integral row is the given cocycle; with flat, curvature is forced to 0.
DeligneCochain lift_cocycle(const DeligneModel& M, const CechCochain& z, bool flat = false);

// f maps vertices of the source complex to vertices of the target complex simplicially.
DeligneCochain pullback(const DeligneModel& target, const DeligneModel& source, const std::map<int, int>& f,
                        const DeligneCochain& c);

// Restriction to a subcomplex L of the model's base.
DeligneCochain restrict_to(const DeligneModel& M, const DeligneModel& L, const DeligneCochain& c);

// On the prism model of I x K: compares the two end restrictions.
bool flat_homotopy_check(const DeligneModel& prism, const DeligneModel& K, const DeligneCochain& x);

}  // namespace cix
