#pragma once

#include <vector>

#include "charzero/numeric.hpp"

namespace charzero::spectral {

/// H(z) = (2/z) integral_{e^{-1/2}}^1 (1 - e^{-zu}) du / u. Gauss-Legendre for
/// |z| >= 0.1 (panels scaled with |z|), Taylor series below.
cplx H_eval(cplx z);

/// H'(z) = -2 I(z) / z^2 + 2 I'(z) / z with I'(z) = (e^{-z/sqrt e} - e^{-z}) / z.
cplx H_derivative(cplx z);

/// -log(pi k) + 2 pi i (k + 1/4).
cplx asymptotic_zero(int k);

struct HZero {
  int k = 0;
  cplx z;
  double residual = 0.0;
  double asymptotic_gap = 0.0;
  /// Winding number of H around the strip box (1 confirms uniqueness).
  int winding = 0;
  /// True when Newton left the strip and the grid fallback seeded the zero.
  bool grid_fallback = false;
};

/// The box Re in [-log(pi k) - 3, 0], Im in [2 pi k - pi, 2 pi k + pi].
struct StripBox {
  double re_min = 0.0;
  double re_max = 0.0;
  double im_min = 0.0;
  double im_max = 0.0;
};
StripBox strip_box(int k);

/// Zeros z_1 .. z_K (K <= 200) in ascending imaginary part.
std::vector<HZero> find_H_zeros(int count);

struct SpectrumConstants {
  /// integral_1^{sqrt e} log t / (t + 1) dt.
  double integral = 0.0;
  double integral_err = 0.0;
  double delta0 = 0.0;
  double delta0_err = 0.0;
  double delta1 = 0.0;
  double delta1_err = 0.0;
};

/// Gauss-Legendre with 20 and 40 nodes; the difference (floored at a few ulps) is the bound.
SpectrumConstants delta_constants(int nodes = 40);

enum class BoundMode { Prop71, Cor18 };

/// Prop71: max(|delta1|, 1/2 + 2 (log alpha)^2); Cor18: min(delta0, 1/4 - (log u)^2).
/// The argument must lie in [e^{-1/2}, 1].
double spectrum_bound(BoundMode mode, double arg);

}  // namespace charzero::spectral
