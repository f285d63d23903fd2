#include "cix/homology.hpp"

#include <algorithm>
#include <sstream>

namespace cix {

IntMatrix matmul_ref(const IntMatrix& A, const IntMatrix& B) {
  if (A.cols != B.rows) throw Error("shape", "matmul: inner dimensions differ");
  IntMatrix C(A.rows, B.cols);
  for (std::size_t i = 0; i < A.rows; ++i)
    for (std::size_t k = 0; k < A.cols; ++k) {
      const Int& x = A(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < B.cols; ++j) C(i, j) += x * B(k, j);
    }
  return C;
}

IntMatrix matmul(const IntMatrix& A, const IntMatrix& B) {
  if (A.cols != B.rows) throw Error("shape", "matmul: inner dimensions differ");
  IntMatrix C(A.rows, B.cols);
  const long n = static_cast<long>(A.rows);
#pragma omp parallel for schedule(static)
  for (long ii = 0; ii < n; ++ii) {
    std::size_t i = static_cast<std::size_t>(ii);
    Int t;
    for (std::size_t k = 0; k < A.cols; ++k) {
      const Int& x = A(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < B.cols; ++j) {
        mpz_mul(t.get_mpz_t(), x.get_mpz_t(), B(k, j).get_mpz_t());
        C(i, j) += t;
      }
    }
  }
  return C;
}

IntVec matvec(const IntMatrix& A, const IntVec& x) {
  if (A.cols != x.size()) throw Error("shape", "matvec: size mismatch");
  IntVec y(A.rows);
  for (std::size_t i = 0; i < A.rows; ++i)
    for (std::size_t j = 0; j < A.cols; ++j)
      if (A(i, j) != 0) y[i] += A(i, j) * x[j];
  return y;
}

RatVec matvec(const IntMatrix& A, const RatVec& x) {
  if (A.cols != x.size()) throw Error("shape", "matvec: size mismatch");
  RatVec y(A.rows);
  for (std::size_t i = 0; i < A.rows; ++i)
    for (std::size_t j = 0; j < A.cols; ++j)
      if (A(i, j) != 0 && x[j] != 0) y[i] += Rat(A(i, j)) * x[j];
  return y;
}

RatMatrix to_rat(const IntMatrix& A) {
  RatMatrix R(A.rows, A.cols);
  for (std::size_t i = 0; i < A.a.size(); ++i) R.a[i] = A.a[i];
  return R;
}

namespace {

struct SnfWork {
  IntMatrix S, U, Uinv, V, Vinv;

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < S.cols; ++c) std::swap(S(i, c), S(j, c));
    for (std::size_t r = 0; r < U.rows; ++r) std::swap(U(r, i), U(r, j));
    for (std::size_t c = 0; c < Uinv.cols; ++c) std::swap(Uinv(i, c), Uinv(j, c));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < S.rows; ++r) std::swap(S(r, i), S(r, j));
    for (std::size_t c = 0; c < V.cols; ++c) std::swap(V(i, c), V(j, c));
    for (std::size_t r = 0; r < Vinv.rows; ++r) std::swap(Vinv(r, i), Vinv(r, j));
  }
  // row_i += q * row_j
  void add_row(std::size_t i, std::size_t j, const Int& q) {
    for (std::size_t c = 0; c < S.cols; ++c)
      if (S(j, c) != 0) S(i, c) += q * S(j, c);
    for (std::size_t r = 0; r < U.rows; ++r)
      if (U(r, i) != 0) U(r, j) -= q * U(r, i);
    for (std::size_t c = 0; c < Uinv.cols; ++c)
      if (Uinv(j, c) != 0) Uinv(i, c) += q * Uinv(j, c);
  }
  // col_i += q * col_j
  void add_col(std::size_t i, std::size_t j, const Int& q) {
    for (std::size_t r = 0; r < S.rows; ++r)
      if (S(r, j) != 0) S(r, i) += q * S(r, j);
    for (std::size_t c = 0; c < V.cols; ++c)
      if (V(i, c) != 0) V(j, c) -= q * V(i, c);
    for (std::size_t r = 0; r < Vinv.rows; ++r)
      if (Vinv(r, j) != 0) Vinv(r, i) += q * Vinv(r, j);
  }
  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < S.cols; ++c) S(i, c) = -S(i, c);
    for (std::size_t r = 0; r < U.rows; ++r) U(r, i) = -U(r, i);
    for (std::size_t c = 0; c < Uinv.cols; ++c) Uinv(i, c) = -Uinv(i, c);
  }
};

}  // namespace

SmithForm smith_normal_form(const IntMatrix& A) {
  SnfWork w;
  w.S = A;
  w.U = w.Uinv = IntMatrix::identity(A.rows);
  w.V = w.Vinv = IntMatrix::identity(A.cols);
  const std::size_t m = A.rows, n = A.cols;
  std::size_t t = 0;
  while (t < m && t < n) {
    // smallest nonzero entry of the trailing block
    bool found = false;
    std::size_t pi = 0, pj = 0;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (w.S(i, j) != 0 && (!found || abs(w.S(i, j)) < abs(w.S(pi, pj)))) {
          found = true;
          pi = i;
          pj = j;
        }
    if (!found) break;
    w.swap_rows(t, pi);
    w.swap_cols(t, pj);
    for (;;) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (w.S(i, t) == 0) continue;
        Int q = w.S(i, t) / w.S(t, t);
        w.add_row(i, t, -q);
        if (w.S(i, t) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (w.S(t, j) == 0) continue;
        Int q = w.S(t, j) / w.S(t, t);
        w.add_col(j, t, -q);
        if (w.S(t, j) != 0) dirty = true;
      }
      if (dirty) {
        // a smaller remainder exists in row or column t; make it the pivot
        std::size_t bi = t, bj = t;
        for (std::size_t i = t + 1; i < m; ++i)
          if (w.S(i, t) != 0 && abs(w.S(i, t)) < abs(w.S(bi, bj))) bi = i, bj = t;
        for (std::size_t j = t + 1; j < n; ++j)
          if (w.S(t, j) != 0 && abs(w.S(t, j)) < abs(w.S(bi, bj))) bi = t, bj = j;
        w.swap_rows(t, bi);
        w.swap_cols(t, bj);
        continue;
      }
      // divisibility of the trailing block by the pivot
      bool fixed = false;
      for (std::size_t i = t + 1; i < m && !fixed; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (w.S(i, j) != 0 && w.S(i, j) % w.S(t, t) != 0) {
            w.add_row(t, i, 1);
            fixed = true;
            break;
          }
      if (!fixed) break;
    }
    if (w.S(t, t) < 0) w.negate_row(t);
    ++t;
  }
  SmithForm f;
  f.rank = t;
  for (std::size_t i = 0; i < t; ++i) f.diag.push_back(w.S(i, i));
  f.S = std::move(w.S);
  f.U = std::move(w.U);
  f.Uinv = std::move(w.Uinv);
  f.V = std::move(w.V);
  f.Vinv = std::move(w.Vinv);
  return f;
}

Int determinant(const IntMatrix& A) {
  if (A.rows != A.cols) throw Error("shape", "determinant of non-square matrix");
  const std::size_t n = A.rows;
  if (n == 0) return 1;
  IntMatrix M = A;
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (M(k, k) == 0) {
      std::size_t r = k + 1;
      while (r < n && M(r, k) == 0) ++r;
      if (r == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(M(k, c), M(r, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) M(i, j) = (M(i, j) * M(k, k) - M(i, k) * M(k, j)) / prev;
    prev = M(k, k);
  }
  return sign * M(n - 1, n - 1);
}

namespace {

// In-place reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref(RatMatrix& M, std::size_t ncols_pivot) {
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  std::vector<std::size_t> nz;
  for (std::size_t c = 0; c < ncols_pivot && r < M.rows; ++c) {
    std::size_t p = r;
    while (p < M.rows && M(p, c) == 0) ++p;
    if (p == M.rows) continue;
    if (p != r)
      for (std::size_t j = 0; j < M.cols; ++j) std::swap(M(p, j), M(r, j));
    Rat inv = 1 / M(r, c);
    nz.clear();
    for (std::size_t j = c; j < M.cols; ++j)
      if (M(r, j) != 0) {
        M(r, j) *= inv;
        nz.push_back(j);
      }
    for (std::size_t i = 0; i < M.rows; ++i) {
      if (i == r || M(i, c) == 0) continue;
      Rat f = M(i, c);
      for (std::size_t j : nz) M(i, j) -= f * M(r, j);
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

Int lcm_den(const RatVec& v) {
  Int l = 1;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  return l;
}

}  // namespace

std::size_t rank_rational(const IntMatrix& A) {
  RatMatrix M = to_rat(A);
  return rref(M, M.cols).size();
}

std::string HomologyGroup::str() const {
  std::ostringstream os;
  bool first = true;
  if (betti > 0) {
    os << "Z";
    if (betti > 1) os << "^" << betti;
    first = false;
  }
  for (const auto& t : torsion) {
    if (!first) os << " + ";
    os << "Z/" << t.get_str();
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

HomologyGroup homology_at(const IntMatrix& in, const IntMatrix& out) {
  HomologyGroup h;
  std::size_t dim = in.rows;
  SmithForm si = smith_normal_form(in);
  std::size_t ro = rank_rational(out);
  h.betti = static_cast<long>(dim) - static_cast<long>(ro) - static_cast<long>(si.rank);
  for (const auto& d : si.diag)
    if (d > 1) h.torsion.push_back(d);
  return h;
}

IntMatrix IntChainComplex::incoming(std::size_t k) const {
  if (k + 1 < boundary.size() && k + 1 < ranks.size()) return boundary[k + 1];
  return IntMatrix(ranks.at(k), 0);
}

IntMatrix IntChainComplex::outgoing(std::size_t k) const {
  if (k >= 1 && k < boundary.size()) return boundary[k];
  return IntMatrix(0, ranks.at(k));
}

bool IntChainComplex::squares_to_zero() const {
  for (std::size_t k = 2; k < boundary.size(); ++k) {
    const auto& a = boundary[k - 1];
    const auto& b = boundary[k];
    if (a.rows == 0 || b.cols == 0) continue;
    if (!matmul(a, b).is_zero()) return false;
  }
  return true;
}

HomologyGroup homology(const IntChainComplex& C, std::size_t k) {
  if (k >= C.ranks.size()) return {};
  return homology_at(C.incoming(k), C.outgoing(k));
}

bool ClassCoords::is_zero() const {
  for (const auto& x : free)
    if (x != 0) return false;
  for (const auto& x : torsion)
    if (x != 0) return false;
  return true;
}

HomologyPresentation::HomologyPresentation(const IntMatrix& in, const IntMatrix& out) : in_(in), out_(out) {
  const std::size_t dim = in.rows;
  if (out.cols != dim) throw Error("shape", "presentation: in/out dimensions differ");
  SmithForm so = smith_normal_form(out);
  const std::size_t z = dim - so.rank;
  Zbasis_ = IntMatrix(dim, z);
  Zleft_ = IntMatrix(z, dim);
  for (std::size_t j = 0; j < z; ++j)
    for (std::size_t i = 0; i < dim; ++i) {
      Zbasis_(i, j) = so.Vinv(i, so.rank + j);
      Zleft_(j, i) = so.V(so.rank + j, i);
    }
  IntMatrix M = matmul(Zleft_, in);
  M_ = smith_normal_form(M);
  first_nontrivial_ = 0;
  while (first_nontrivial_ < M_.rank && M_.diag[first_nontrivial_] == 1) ++first_nontrivial_;
}

bool HomologyPresentation::is_cycle(const IntVec& c) const {
  for (const auto& x : matvec(out_, c))
    if (x != 0) return false;
  return true;
}

ClassCoords HomologyPresentation::coords(const IntVec& cycle) const {
  if (!is_cycle(cycle)) throw Error("precondition", "class of a non-cycle requested");
  IntVec t = matvec(Zleft_, cycle);
  IntVec u = matvec(M_.Uinv, t);
  ClassCoords cc;
  for (std::size_t i = first_nontrivial_; i < M_.rank; ++i) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), u[i].get_mpz_t(), M_.diag[i].get_mpz_t());
    cc.torsion.push_back(r);
    cc.orders.push_back(M_.diag[i]);
  }
  for (std::size_t i = M_.rank; i < u.size(); ++i) cc.free.push_back(u[i]);
  return cc;
}

HomologyGroup HomologyPresentation::group() const {
  HomologyGroup h;
  h.betti = static_cast<long>(Zbasis_.cols - M_.rank);
  for (std::size_t i = first_nontrivial_; i < M_.rank; ++i) h.torsion.push_back(M_.diag[i]);
  return h;
}

IntVec HomologyPresentation::free_generator(std::size_t i) const {
  std::size_t idx = M_.rank + i;
  IntVec e(Zbasis_.cols);
  for (std::size_t r = 0; r < e.size(); ++r) e[r] = M_.U(r, idx);
  return matvec(Zbasis_, e);
}

IntVec HomologyPresentation::torsion_generator(std::size_t j) const {
  std::size_t idx = first_nontrivial_ + j;
  IntVec e(Zbasis_.cols);
  for (std::size_t r = 0; r < e.size(); ++r) e[r] = M_.U(r, idx);
  return matvec(Zbasis_, e);
}

std::optional<IntVec> solve_integral(const IntMatrix& A, const IntVec& b) {
  if (b.size() != A.rows) throw Error("shape", "solve_integral: rhs size mismatch");
  SmithForm f = smith_normal_form(A);
  IntVec y = matvec(f.Uinv, b);
  IntVec xp(A.cols);
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (i < f.rank) {
      if (y[i] % f.diag[i] != 0) return std::nullopt;
      xp[i] = y[i] / f.diag[i];
    } else if (y[i] != 0) {
      return std::nullopt;
    }
  }
  return matvec(f.Vinv, xp);
}

std::optional<RatVec> solve_rational(const RatMatrix& A, const RatVec& b) {
  if (b.size() != A.rows) throw Error("shape", "solve_rational: rhs size mismatch");
  RatMatrix M(A.rows, A.cols + 1);
  for (std::size_t i = 0; i < A.rows; ++i) {
    for (std::size_t j = 0; j < A.cols; ++j) M(i, j) = A(i, j);
    M(i, A.cols) = b[i];
  }
  auto piv = rref(M, A.cols);
  for (std::size_t i = piv.size(); i < M.rows; ++i)
    if (M(i, A.cols) != 0) return std::nullopt;
  RatVec x(A.cols);
  for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = M(r, A.cols);
  return x;
}

std::optional<RatVec> solve_rational(const IntMatrix& A, const RatVec& b) { return solve_rational(to_rat(A), b); }

IntMatrix left_null_integral(const IntMatrix& A) {
  RatMatrix T = to_rat(A.transpose());  // cols of T index the rows of A
  auto piv = rref(T, T.cols);
  std::vector<char> is_piv(T.cols, 0);
  for (auto p : piv) is_piv[p] = 1;
  std::vector<RatVec> basis;
  for (std::size_t f = 0; f < T.cols; ++f) {
    if (is_piv[f]) continue;
    RatVec y(T.cols);
    y[f] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) y[piv[r]] = -T(r, f);
    basis.push_back(std::move(y));
  }
  IntMatrix P(basis.size(), A.rows);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    Int l = lcm_den(basis[i]);
    Int g = 0;
    for (std::size_t j = 0; j < A.rows; ++j) {
      Rat v = basis[i][j] * l;
      P(i, j) = v.get_num();
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), P(i, j).get_mpz_t());
    }
    if (g > 1)
      for (std::size_t j = 0; j < A.rows; ++j) P(i, j) /= g;
  }
  return P;
}

IntMatrix kernel_integral(const IntMatrix& A) {
  SmithForm f = smith_normal_form(A);
  IntMatrix K(A.cols, A.cols - f.rank);
  for (std::size_t j = 0; j < K.cols; ++j)
    for (std::size_t i = 0; i < A.cols; ++i) K(i, j) = f.Vinv(i, f.rank + j);
  return K;
}

std::optional<MixedSolution> solve_mixed(const IntMatrix& Az, const IntMatrix& Aq, const RatVec& r) {
  if (Az.rows != r.size() || Aq.rows != r.size()) throw Error("shape", "solve_mixed: row mismatch");
  IntMatrix P = left_null_integral(Aq);
  IntMatrix PA = matmul(P, Az);
  RatVec Pr = matvec(P, r);
  Int l = lcm_den(Pr);
  IntVec rhs(Pr.size());
  for (std::size_t i = 0; i < Pr.size(); ++i) rhs[i] = Rat(Pr[i] * l).get_num();
  if (l != 1)
    for (auto& x : PA.a) x *= l;
  auto xz = solve_integral(PA, rhs);
  if (!xz) return std::nullopt;
  RatVec rest = r;
  RatVec az = matvec(Az, RatVec(xz->begin(), xz->end()));
  for (std::size_t i = 0; i < rest.size(); ++i) rest[i] -= az[i];
  auto xq = solve_rational(Aq, rest);
  if (!xq) return std::nullopt;  // unreachable when P spans the left null space
  return MixedSolution{*xz, *xq};
}

}  // namespace cix
