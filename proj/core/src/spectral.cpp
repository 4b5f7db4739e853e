#include "charzero/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "charzero/error.hpp"
#include "charzero/parallel.hpp"

namespace charzero::spectral {

namespace {

const double kLower = std::exp(-0.5);

/// I(z) = integral_{e^{-1/2}}^1 (1 - e^{-zu}) / u du.
cplx I_quadrature(cplx z) {
  const int panels = std::max(1, static_cast<int>(std::ceil(std::abs(z) * (1.0 - kLower) / 4.0)));
  return numeric::gauss_legendre([z](double u) { return (1.0 - std::exp(-z * u)) / u; }, kLower, 1.0, 20, panels);
}

/// H(z) from 2 sum_{m >= 1} (-1)^{m+1} z^{m-1} (1 - e^{-m/2}) / (m m!).
cplx H_series(cplx z) {
  cplx sum(0.0, 0.0);
  cplx zpow(1.0, 0.0);
  double factorial = 1.0;
  for (int m = 1; m <= 40; ++m) {
    factorial *= m;
    const double coeff = (1.0 - std::exp(-0.5 * m)) / (m * factorial);
    const cplx term = (m % 2 == 1 ? 1.0 : -1.0) * coeff * zpow;
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    zpow *= z;
  }
  return 2.0 * sum;
}

struct NewtonOutcome {
  cplx z;
  double residual = 0.0;
  bool ok = false;
};

NewtonOutcome newton(cplx z, const StripBox& box) {
  for (int it = 0; it < 100; ++it) {
    const cplx step = H_eval(z) / H_derivative(z);
    if (!std::isfinite(std::abs(step))) break;
    z -= step;
    if (z.imag() < box.im_min - 1.0 || z.imag() > box.im_max + 1.0) break;
    if (std::abs(step) < 1e-15 * std::abs(z)) break;
  }
  const double residual = std::abs(H_eval(z));
  const bool inside = z.imag() > box.im_min && z.imag() < box.im_max && z.real() >= box.re_min && z.real() <= box.re_max;
  return {z, residual, inside && residual <= 1e-10};
}

cplx grid_seed(const StripBox& box) {
  constexpr double kStep = 0.1;
  cplx best;
  double best_abs = std::numeric_limits<double>::infinity();
  for (double re = box.re_min; re <= box.re_max; re += kStep) {
    for (double im = box.im_min + kStep; im < box.im_max; im += kStep) {
      const double a = std::abs(H_eval({re, im}));
      if (a < best_abs) {
        best_abs = a;
        best = {re, im};
      }
    }
  }
  return best;
}

}  // namespace

cplx H_eval(cplx z) {
  if (std::abs(z) < 0.1) return H_series(z);
  return 2.0 * I_quadrature(z) / z;
}

cplx H_derivative(cplx z) {
  if (std::abs(z) < 0.1) {
    // Termwise derivative of the series.
    cplx sum(0.0, 0.0);
    cplx zpow(1.0, 0.0);
    double factorial = 2.0;
    for (int m = 2; m <= 40; ++m) {
      if (m > 2) factorial *= m;
      const double coeff = (m - 1) * (1.0 - std::exp(-0.5 * m)) / (m * factorial);
      const cplx term = (m % 2 == 1 ? 1.0 : -1.0) * coeff * zpow;
      sum += term;
      if (std::abs(term) < 1e-17 * std::abs(sum)) break;
      zpow *= z;
    }
    return 2.0 * sum;
  }
  const cplx I = I_quadrature(z);
  const cplx dI = (std::exp(-kLower * z) - std::exp(-z)) / z;
  return -2.0 * I / (z * z) + 2.0 * dI / z;
}

cplx asymptotic_zero(int k) { return {-std::log(kPi * k), kTwoPi * (k + 0.25)}; }

StripBox strip_box(int k) {
  return {-std::log(kPi * k) - 3.0, 0.0, kTwoPi * k - kPi, kTwoPi * k + kPi};
}

std::vector<HZero> find_H_zeros(int count) {
  if (count < 0 || count > 200) throw DomainError("find_H_zeros: count must lie in [0, 200]");
  std::vector<HZero> out(static_cast<std::size_t>(count));
  parallel_for(out.size(), [&](std::size_t i) {
    const int k = static_cast<int>(i) + 1;
    const StripBox box = strip_box(k);
    HZero zero;
    zero.k = k;
    NewtonOutcome r = newton(asymptotic_zero(k), box);
    if (!r.ok) {
      zero.grid_fallback = true;
      r = newton(grid_seed(box), box);
      if (!r.ok) throw ConvergenceError("find_H_zeros: no zero located in strip k=" + std::to_string(k));
    }
    zero.z = r.z;
    zero.residual = r.residual;
    zero.asymptotic_gap = std::abs(r.z - asymptotic_zero(k));
    const auto w = numeric::rectangle_winding(H_eval, box.re_min, box.re_max, box.im_min, box.im_max, {0.1, 1e-9});
    zero.winding = w ? *w : -1;
    out[i] = zero;
  });
  std::sort(out.begin(), out.end(), [](const HZero& a, const HZero& b) { return a.z.imag() < b.z.imag(); });
  return out;
}

SpectrumConstants delta_constants(int nodes) {
  if (nodes < 4) throw DomainError("delta_constants: need at least 4 nodes");
  auto f = [](double t) { return std::log(t) / (t + 1.0); };
  const double hi = std::exp(0.5);
  const double fine = numeric::gauss_legendre(f, 1.0, hi, nodes);
  const double coarse = numeric::gauss_legendre(f, 1.0, hi, nodes / 2);
  const double eps = std::numeric_limits<double>::epsilon();

  SpectrumConstants out;
  out.integral = fine;
  out.integral_err = std::max(std::abs(fine - coarse), 8.0 * eps * std::abs(fine));
  const double log_term = std::log(1.0 + hi);
  out.delta0 = 1.0 - log_term + 2.0 * fine;
  out.delta1 = 1.0 - 2.0 * log_term + 4.0 * fine;
  out.delta0_err = 2.0 * out.integral_err + 4.0 * eps;
  out.delta1_err = 4.0 * out.integral_err + 8.0 * eps;
  return out;
}

double spectrum_bound(BoundMode mode, double arg) {
  constexpr double kSlack = 1e-15;
  if (!(arg >= kLower - kSlack && arg <= 1.0 + kSlack)) {
    throw DomainError("spectrum_bound: argument must lie in [e^{-1/2}, 1]");
  }
  const double log_arg = std::abs(arg - kLower) <= kSlack ? -0.5 : std::log(arg);
  const SpectrumConstants c = delta_constants();
  if (mode == BoundMode::Prop71) return std::max(std::abs(c.delta1), 0.5 + 2.0 * log_arg * log_arg);
  return std::min(c.delta0, 0.25 - log_arg * log_arg);
}

}  // namespace charzero::spectral
