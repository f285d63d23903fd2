#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cix/nerve.hpp"

namespace cix {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;

enum class Spin { Bounding, Nonbounding };

// Holonomy either numeric (U) or exact: eigenvalues exp(2 pi i r) for rationals r.
struct TwistedCircleOperator {
  CMat U;
  std::optional<std::vector<Rat>> phases;
  Spin spin = Spin::Nonbounding;
};

struct SpectralValue {
  double value = 0;
  std::optional<Rat> exact;
};

std::vector<SpectralValue> circle_spectrum(const TwistedCircleOperator& op, const Rat& lo, const Rat& hi);

struct EtaValue {
  std::optional<Rat> exact;
  double value = 0;
  double error = 0;
  long dim_ker = 0;
};

// Spectrum {a + n}: eta0 = a - 1/2. a in Z needs kernel mode and yields eta0 = 0, dim ker = 1.
EtaValue eta0_progression(const Rat& a, bool kernel_mode = false);

// (n_- - n_+)/2 of an invertible hermitian matrix
Rat eta0_finite(const CMat& D, double tol = 1e-12);

enum class SfConvention { Default, Standard };  // Default: positive to negative counts +1

struct SfOptions {
  int max_halvings = 20;
  SfConvention convention = SfConvention::Default;
  double tol = 1e-12;
};

struct Crossing {
  std::size_t segment = 0;
  double t = 0;  // local parameter in [0,1]
  long count = 0;
};

struct SfResult {
  long sf = 0;
  std::vector<Crossing> crossings;
};

// Piecewise-linear path through the given hermitian matrices. Segments are tracked in
// parallel (OpenMP); spectral_flow_ref is the serial reference.
SfResult spectral_flow(const std::vector<CMat>& path, const SfOptions& opt = {});
SfResult spectral_flow_ref(const std::vector<CMat>& path, const SfOptions& opt = {});
// Analytic branches sampled on a common grid; NaN marks a parameter where the branch is absent.
long spectral_flow_branches(const std::vector<std::vector<double>>& branches, SfConvention c = SfConvention::Default);

struct UnitaryLoop {
  std::optional<long> degree;  // symbolic u = exp(i k t)
  std::vector<cplx> samples;   // cyclic grid otherwise
};

UnitaryLoop parse_loop(const std::string& expr);
std::vector<cplx> loop_samples(const UnitaryLoop& u);
long winding_number(const UnitaryLoop& u);

struct TransmissionResult {
  long index = 0;
  long ccw = 0, cw = 0;  // passages of the bound state through zero
};
TransmissionResult transmission(const UnitaryLoop& u);
long transmission_index(const UnitaryLoop& u);

struct GradedMatrixOperator {
  CMat D;
  std::optional<CMat> grading;
};

struct Taming {
  CMat P;
  long dim_ker = 0;
  double min_singular = 0;  // of D + P
};
Taming taming_from_kernel(const GradedMatrixOperator& op, double tol = 1e-10);

struct EtaJump {
  Rat eta_start, eta_end;
  long sf = 0;
  bool holds = false;
};
EtaJump check_eta_jump(const std::vector<CMat>& path, const SfOptions& opt = {});

Rat bernoulli(int n);

struct GoetteForm {
  Cochain form;
  bool even = true;
  std::vector<std::string> warnings;
};
bool is_even_class(const SimplicialComplex& K, const Cochain& c1);
GoetteForm goette_eta_form(const SimplicialComplex& K, int m, const Cochain& c1);

}  // namespace cix
