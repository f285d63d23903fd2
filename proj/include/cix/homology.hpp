#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cix/arith.hpp"

namespace cix {

template <class T>
struct Matrix {
  std::size_t rows = 0, cols = 0;
  std::vector<T> a;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}

  T& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  Matrix transpose() const {
    Matrix t(cols, rows);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
    return t;
  }
  bool is_zero() const {
    for (const auto& x : a)
      if (x != 0) return false;
    return true;
  }
  bool operator==(const Matrix& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

using IntMatrix = Matrix<Int>;
using RatMatrix = Matrix<Rat>;
using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

// OpenMP row-parallel product; matmul_ref is the serial reference.
IntMatrix matmul(const IntMatrix& A, const IntMatrix& B);
IntMatrix matmul_ref(const IntMatrix& A, const IntMatrix& B);
IntVec matvec(const IntMatrix& A, const IntVec& x);
RatVec matvec(const IntMatrix& A, const RatVec& x);
RatMatrix to_rat(const IntMatrix& A);

// A = U * S * V; Uinv, Vinv are the exact inverses.
struct SmithForm {
  IntMatrix U, S, V, Uinv, Vinv;
  std::size_t rank = 0;
  IntVec diag;  // first `rank` invariant factors, each dividing the next
};

SmithForm smith_normal_form(const IntMatrix& A);
Int determinant(const IntMatrix& A);  // Bareiss, square only
std::size_t rank_rational(const IntMatrix& A);

struct HomologyGroup {
  long betti = 0;
  IntVec torsion;  // invariant factors > 1, divisibility chain
  bool is_zero() const { return betti == 0 && torsion.empty(); }
  bool operator==(const HomologyGroup& o) const { return betti == o.betti && torsion == o.torsion; }
  std::string str() const;  // e.g. "Z^2 + Z/2"
};

// Homology at a middle term C: in maps into C (rows = dim C), out maps out of C (cols = dim C).
HomologyGroup homology_at(const IntMatrix& in, const IntMatrix& out);

// Graded complex with boundary[k] : C_k -> C_{k-1} (boundary[0] has 0 rows).
struct IntChainComplex {
  std::vector<std::size_t> ranks;
  std::vector<IntMatrix> boundary;

  std::size_t top() const { return ranks.empty() ? 0 : ranks.size() - 1; }
  IntMatrix incoming(std::size_t k) const;  // boundary[k+1] or a dim x 0 matrix
  IntMatrix outgoing(std::size_t k) const;  // boundary[k] or a 0 x dim matrix
  bool squares_to_zero() const;
};

HomologyGroup homology(const IntChainComplex& C, std::size_t k);

// Coordinates of a class: free part exact, torsion part reduced modulo its order.
struct ClassCoords {
  IntVec free;
  IntVec torsion;
  IntVec orders;
  bool is_zero() const;
  bool operator==(const ClassCoords& o) const { return free == o.free && torsion == o.torsion; }
};

// Presentation of ker(out)/im(in) able to name the class of a cycle.
class HomologyPresentation {
 public:
  HomologyPresentation(const IntMatrix& in, const IntMatrix& out);
  ClassCoords coords(const IntVec& cycle) const;
  bool is_cycle(const IntVec& c) const;
  HomologyGroup group() const;
  // cycle representing the i-th free generator / j-th torsion generator
  IntVec free_generator(std::size_t i) const;
  IntVec torsion_generator(std::size_t j) const;

 private:
  IntMatrix in_, out_;
  IntMatrix Zbasis_;   // dim x z, integral basis of ker(out)
  IntMatrix Zleft_;    // z x dim, left inverse on ker(out)
  SmithForm M_;        // in = Z * M
  std::size_t first_nontrivial_ = 0;
};

std::optional<IntVec> solve_integral(const IntMatrix& A, const IntVec& b);
std::optional<RatVec> solve_rational(const RatMatrix& A, const RatVec& b);
std::optional<RatVec> solve_rational(const IntMatrix& A, const RatVec& b);

// Basis of the rational left null space {y : y^T A = 0}, scaled to primitive integer rows.
IntMatrix left_null_integral(const IntMatrix& A);
// Integral basis of ker A (saturated).
IntMatrix kernel_integral(const IntMatrix& A);

// Solve Az * xz + Aq * xq = r with xz integral and xq rational.
struct MixedSolution {
  IntVec xz;
  RatVec xq;
};
std::optional<MixedSolution> solve_mixed(const IntMatrix& Az, const IntMatrix& Aq, const RatVec& r);

}  // namespace cix
