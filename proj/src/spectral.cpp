#include "cix/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <regex>

namespace cix {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_hermitian(const CMat& D, const char* what) {
  if (D.rows() != D.cols()) throw Error("shape", std::string(what) + ": matrix is not square");
  double scale = std::max(1.0, D.norm());
  if ((D - D.adjoint()).norm() > 1e-10 * scale) throw Error("domain", std::string(what) + ": matrix is not hermitian");
}

Eigen::VectorXd eigenvalues(const CMat& H) {
  Eigen::SelfAdjointEigenSolver<CMat> es(H, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

long negatives(const Eigen::VectorXd& ev) {
  long n = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) n += ev[i] < 0;
  return n;
}

double min_abs(const Eigen::VectorXd& ev) {
  double m = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < ev.size(); ++i) m = std::min(m, std::abs(ev[i]));
  return m;
}

Rat floor_rat(const Rat& r) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return Rat(q);
}

}  // namespace

std::vector<SpectralValue> circle_spectrum(const TwistedCircleOperator& op, const Rat& lo, const Rat& hi) {
  const Rat shift = op.spin == Spin::Bounding ? Rat(1, 2) : Rat(0);
  std::vector<SpectralValue> out;
  if (op.phases) {
    for (const auto& r : *op.phases) {
      Rat base = mod_one(r) + shift;
      for (Rat x = base + floor_rat(lo - base); x <= hi; x += 1)
        if (x >= lo) out.push_back({x.get_d(), x});
    }
  } else {
    const auto& U = op.U;
    if (U.rows() != U.cols() || U.rows() == 0) throw Error("shape", "holonomy must be a nonempty square matrix");
    CMat I = CMat::Identity(U.rows(), U.cols());
    if ((U.adjoint() * U - I).norm() > 1e-12 * std::max<double>(1.0, std::sqrt(double(U.rows()))))
      throw Error("domain", "holonomy is not unitary to 1e-12");
    Eigen::ComplexEigenSolver<CMat> es(U, false);
    const double l = lo.get_d(), h = hi.get_d();
    for (Eigen::Index j = 0; j < U.rows(); ++j) {
      double th = std::arg(es.eigenvalues()[j]);
      if (th < 0) th += 2 * kPi;
      double base = th / (2 * kPi) + shift.get_d();
      for (double x = base + std::floor(l - base); x <= h + 1e-12; x += 1)
        if (x >= l - 1e-12) out.push_back({x, std::nullopt});
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.value < b.value; });
  return out;
}

EtaValue eta0_progression(const Rat& a, bool kernel_mode) {
  EtaValue e;
  if (a > 0 && a < 1) {
    e.exact = a - Rat(1, 2);
  } else if (is_integer(a) && kernel_mode) {
    // spectrum Z: the nonzero part is symmetric
    e.exact = Rat(0);
    e.dim_ker = 1;
  } else if (is_integer(a)) {
    throw Error("kernel", "spectrum contains 0; use kernel mode to get eta0 with dim ker");
  } else {
    throw Error("domain", "offset must lie in (0,1)");
  }
  e.value = e.exact->get_d();
  return e;
}

Rat eta0_finite(const CMat& D, double tol) {
  require_hermitian(D, "eta0");
  auto ev = eigenvalues(D);
  double scale = std::max(1.0, D.norm());
  long neg = 0, pos = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (std::abs(ev[i]) <= tol * scale) throw Error("singular", "eta0 of a non-invertible matrix");
    (ev[i] < 0 ? neg : pos)++;
  }
  Rat r(neg - pos, 2);
  r.canonicalize();
  return r;
}

namespace {

struct Tracker {
  const CMat& A;
  const CMat& B;
  double step_norm;  // spectral norm of B - A
  const SfOptions& opt;
  double scale;
  std::vector<Crossing> found;
  std::size_t segment;

  Eigen::VectorXd at(double t) const { return eigenvalues((1 - t) * A + t * B); }

  long run(double t0, double t1, const Eigen::VectorXd& e0, const Eigen::VectorXd& e1, int depth) {
    double m0 = min_abs(e0), m1 = min_abs(e1);
    double dF = (t1 - t0) * step_norm;
    // Weyl: no eigenvalue reaches 0 inside when the perturbation is smaller than the gap at an end
    if (dF < std::max(m0, m1)) return 0;
    if (depth >= opt.max_halvings) {
      double tol = opt.tol * scale;
      if (m0 <= tol || m1 <= tol)
        throw Error("ambiguous", "eigenvalue tracking is ambiguous after " + std::to_string(depth) + " halvings");
      long c = negatives(e1) - negatives(e0);
      if (c != 0) found.push_back({segment, 0.5 * (t0 + t1), c});
      return c;
    }
    // split at the midpoint unless an eigenvalue sits exactly on zero there
    double tm = 0;
    Eigen::VectorXd em;
    for (double f : {0.5, 0.4375, 0.5625, 0.375, 0.625}) {
      tm = t0 + f * (t1 - t0);
      em = at(tm);
      if (min_abs(em) > opt.tol * scale) break;
    }
    return run(t0, tm, e0, em, depth + 1) + run(tm, t1, em, e1, depth + 1);
  }
};

SfResult segment_flow(const std::vector<CMat>& path, std::size_t s, const SfOptions& opt, double scale) {
  const CMat dA = path[s + 1] - path[s];
  const double step = dA.rows() ? eigenvalues(dA).cwiseAbs().maxCoeff() : 0.0;
  Tracker tr{path[s], path[s + 1], step, opt, scale, {}, s};
  long c = tr.run(0, 1, tr.at(0), tr.at(1), 0);
  return {c, std::move(tr.found)};
}

void check_path(const std::vector<CMat>& path, const SfOptions& opt, double& scale) {
  if (path.empty()) throw Error("shape", "empty path");
  scale = 1;
  for (const auto& m : path) {
    require_hermitian(m, "spectral flow");
    if (m.rows() != path[0].rows()) throw Error("shape", "path matrices differ in size");
    scale = std::max(scale, m.norm());
  }
  for (const CMat* e : {&path.front(), &path.back()})
    if (min_abs(eigenvalues(*e)) <= opt.tol * scale) throw Error("singular", "path endpoint is not invertible");
}

SfResult finish(std::vector<SfResult>& parts, const SfOptions& opt) {
  SfResult r;
  for (auto& p : parts) {
    r.sf += p.sf;
    r.crossings.insert(r.crossings.end(), p.crossings.begin(), p.crossings.end());
  }
  if (opt.convention == SfConvention::Standard) {
    r.sf = -r.sf;
    for (auto& c : r.crossings) c.count = -c.count;
  }
  return r;
}

}  // namespace

SfResult spectral_flow_ref(const std::vector<CMat>& path, const SfOptions& opt) {
  double scale;
  check_path(path, opt, scale);
  std::vector<SfResult> parts;
  for (std::size_t s = 0; s + 1 < path.size(); ++s) parts.push_back(segment_flow(path, s, opt, scale));
  return finish(parts, opt);
}

SfResult spectral_flow(const std::vector<CMat>& path, const SfOptions& opt) {
  double scale;
  check_path(path, opt, scale);
  const long segs = static_cast<long>(path.size()) - 1;
  std::vector<SfResult> parts(std::max<long>(segs, 0));
  std::vector<std::string> errors(parts.size());
  std::vector<std::string> kinds(parts.size());
#pragma omp parallel for schedule(dynamic)
  for (long s = 0; s < segs; ++s) {
    try {
      parts[s] = segment_flow(path, static_cast<std::size_t>(s), opt, scale);
    } catch (const Error& e) {
      kinds[s] = e.kind;
      errors[s] = e.what();
    }
  }
  for (std::size_t s = 0; s < errors.size(); ++s)
    if (!kinds[s].empty()) throw Error(kinds[s], errors[s]);
  return finish(parts, opt);
}

long spectral_flow_branches(const std::vector<std::vector<double>>& branches, SfConvention c) {
  long sf = 0;
  for (const auto& b : branches)
    for (std::size_t i = 0; i + 1 < b.size(); ++i) {
      double x = b[i], y = b[i + 1];
      if (std::isnan(x) || std::isnan(y)) continue;
      if (x == 0 || y == 0) throw Error("refine", "branch sample lies on zero");
      if (x > 0 && y < 0) ++sf;
      if (x < 0 && y > 0) --sf;
    }
  return c == SfConvention::Default ? sf : -sf;
}

UnitaryLoop parse_loop(const std::string& expr) {
  std::string s;
  for (char ch : expr)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  UnitaryLoop u;
  if (s == "1") {
    u.degree = 0;
    return u;
  }
  static const std::regex re(R"(^(?:e\^\{|exp\()([+-]?)(\d*)\*?it(?:\}|\))$)");
  std::smatch m;
  if (!std::regex_match(s, m, re)) throw Error("parse", "loop must look like e^{ik t}, got '" + expr + "'");
  long k = m[2].str().empty() ? 1 : std::stol(m[2].str());
  u.degree = m[1].str() == "-" ? -k : k;
  return u;
}

std::vector<cplx> loop_samples(const UnitaryLoop& u) {
  if (!u.degree) {
    if (u.samples.empty()) throw Error("shape", "loop has no samples");
    for (const auto& z : u.samples)
      if (std::abs(std::abs(z) - 1) > 1e-9) throw Error("domain", "loop sample is not unit-modulus");
    return u.samples;
  }
  long k = *u.degree;
  long N = std::max<long>(64 * std::labs(k), 64);
  std::vector<cplx> out(N);
  // half-offset grid keeps samples away from the symmetric points
  for (long j = 0; j < N; ++j) out[j] = std::polar(1.0, double(k) * 2 * kPi * (j + 0.5) / double(N));
  return out;
}

namespace {

std::vector<double> increments(const std::vector<cplx>& z) {
  std::vector<double> d(z.size());
  for (std::size_t j = 0; j < z.size(); ++j) {
    double a = std::arg(z[(j + 1) % z.size()] / z[j]);
    if (std::abs(a) > kPi - 1e-9) throw Error("refine", "consecutive loop samples are antipodal; refine the grid");
    d[j] = a;
  }
  return d;
}

}  // namespace

long winding_number(const UnitaryLoop& u) {
  auto z = loop_samples(u);
  double s = 0;
  for (double a : increments(z)) s += a;
  double w = s / (2 * kPi);
  long r = std::lround(w);
  if (std::abs(w - r) > 1e-6) throw Error("internal", "argument sum is not an integer multiple of 2 pi");
  return r;
}

TransmissionResult transmission(const UnitaryLoop& u) {
  auto z = loop_samples(u);
  for (const auto& x : z)
    if (std::abs(x - cplx(0, -1)) < 1e-12) throw Error("refine", "loop sample equals -i; refine the grid");
  auto d = increments(z);
  TransmissionResult r;
  // the bound state (Im u < 0) has eigenvalue Re u; it passes 0 exactly when the arc passes -i
  for (std::size_t j = 0; j < z.size(); ++j) {
    double phi = std::arg(cplx(0, -1) / z[j]);
    if (d[j] > 0 && phi > 0 && phi < d[j]) ++r.ccw;
    if (d[j] < 0 && phi < 0 && phi > d[j]) ++r.cw;
  }
  // counterclockwise: Re u goes from negative to positive, counted -1
  r.index = r.cw - r.ccw;
  return r;
}

long transmission_index(const UnitaryLoop& u) { return transmission(u).index; }

Taming taming_from_kernel(const GradedMatrixOperator& op, double tol) {
  const CMat& D = op.D;
  require_hermitian(D, "taming");
  const Eigen::Index n = D.rows();
  double thr = tol * std::max(1.0, D.norm());
  Taming t;
  t.P = CMat::Zero(n, n);
  auto kernel_basis = [&](const CMat& A) {
    Eigen::JacobiSVD<CMat> svd(A, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    Eigen::Index r = 0;
    while (r < sv.size() && sv[r] > thr) ++r;
    return CMat(svd.matrixV().rightCols(A.cols() - r));
  };
  if (!op.grading) {
    CMat K = kernel_basis(D);
    t.dim_ker = K.cols();
    t.P = K * K.adjoint();
  } else {
    const CMat& z = *op.grading;
    require_hermitian(z, "grading");
    if ((z * z - CMat::Identity(n, n)).norm() > 1e-10) throw Error("domain", "grading is not an involution");
    if ((D * z + z * D).norm() > thr) throw Error("domain", "operator does not anticommute with the grading");
    Eigen::SelfAdjointEigenSolver<CMat> es(z);
    std::vector<Eigen::Index> minus, plus;
    for (Eigen::Index i = 0; i < n; ++i) (es.eigenvalues()[i] < 0 ? minus : plus).push_back(i);
    CMat Qp(n, plus.size()), Qm(n, minus.size());
    for (std::size_t i = 0; i < plus.size(); ++i) Qp.col(i) = es.eigenvectors().col(plus[i]);
    for (std::size_t i = 0; i < minus.size(); ++i) Qm.col(i) = es.eigenvectors().col(minus[i]);
    CMat Kp = Qp * kernel_basis(D * Qp);
    CMat Km = Qm * kernel_basis(D * Qm);
    if (Kp.cols() != Km.cols())
      throw Error("index", "index " + std::to_string(Kp.cols() - Km.cols()) +
                               " is nonzero: the kernel cannot be removed by a finite-rank taming");
    t.dim_ker = Kp.cols() + Km.cols();
    CMat U = Km * Kp.adjoint();
    t.P = U + U.adjoint();
  }
  Eigen::JacobiSVD<CMat> svd(D + t.P);
  t.min_singular = svd.singularValues().size() ? svd.singularValues()[svd.singularValues().size() - 1] : 1.0;
  if (t.min_singular <= thr) throw Error("internal", "perturbed operator is not invertible");
  return t;
}

EtaJump check_eta_jump(const std::vector<CMat>& path, const SfOptions& opt) {
  SfOptions o = opt;
  o.convention = SfConvention::Default;
  EtaJump j;
  j.sf = spectral_flow(path, o).sf;
  j.eta_start = eta0_finite(path.front(), opt.tol);
  j.eta_end = eta0_finite(path.back(), opt.tol);
  j.holds = j.eta_end - j.eta_start == Rat(j.sf);
  return j;
}

Rat bernoulli(int n) {
  if (n < 0) throw Error("domain", "Bernoulli index must be >= 0");
  // x e^x / (e^x - 1) = sum B_n x^n / n!, i.e. sum_j B_{n-j}/(n-j)! * 1/(j+1)! = 1/n!
  std::vector<Rat> B(n + 1);
  for (int m = 0; m <= n; ++m) {
    Rat s = Rat(1, factorial(m));
    for (int j = 1; j <= m; ++j) s -= B[m - j] / Rat(factorial(m - j)) / Rat(factorial(j + 1));
    B[m] = s * Rat(factorial(m));
  }
  return B[n];
}

bool is_even_class(const SimplicialComplex& K, const Cochain& c1) {
  for (const auto& x : c1.v)
    if (!is_integer(x)) return false;
  IntMatrix D = coboundary_matrix(K, c1.q - 1);
  IntMatrix A(D.rows, D.rows + D.cols);
  for (std::size_t i = 0; i < D.rows; ++i) {
    A(i, i) = 2;
    for (std::size_t j = 0; j < D.cols; ++j) A(i, D.rows + j) = D(i, j);
  }
  IntVec b(c1.v.size());
  for (std::size_t i = 0; i < b.size(); ++i) b[i] = c1.v[i].get_num();
  return solve_integral(A, b).has_value();
}

GoetteForm goette_eta_form(const SimplicialComplex& K, int m, const Cochain& c1) {
  if (m < 1) throw Error("domain", "m must be >= 1");
  if (c1.q != 2 || c1.v.size() != K.count(2)) throw Error("degree", "c1 must be a 2-cochain on the base");
  if (!is_zero(simplicial_d(K, c1))) throw Error("not-closed", "c1 is not closed");
  GoetteForm g;
  g.even = is_even_class(K, c1);
  if (!g.even) g.warnings.push_back("c1 is not cohomologous to twice an integral cocycle");
  Cochain p = c1;
  for (int i = 1; i < m; ++i) p = cup(K, p, c1);
  g.form = scale(p, bernoulli(m + 1) / Rat(factorial(m + 1)));
  return g;
}

}  // namespace cix
