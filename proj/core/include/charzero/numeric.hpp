#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace charzero {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Value together with an absolute error bound.
template <typename T>
struct Bounded {
  T value{};
  double err_bound = 0.0;
};

namespace numeric {

/// Pairwise (tree) summation. The association order depends only on the
/// length, so results are bit-reproducible.
template <typename T>
T pairwise_sum(std::span<const T> xs) {
  constexpr std::size_t kLeaf = 16;
  if (xs.size() <= kLeaf) {
    T acc{};
    for (const T& x : xs) acc += x;
    return acc;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

template <typename T>
T pairwise_sum(const std::vector<T>& xs) {
  return pairwise_sum(std::span<const T>(xs));
}

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Rule with n points, computed by Newton iteration on P_n. Cached per n.
const GaussLegendreRule& gauss_legendre_rule(int n);

/// Composite Gauss-Legendre on [a, b] with `panels` equal panels of `order` points.
template <typename F>
auto gauss_legendre(F&& f, double a, double b, int order = 20, int panels = 1) {
  const GaussLegendreRule& rule = gauss_legendre_rule(order);
  using R = decltype(f(a));
  const double width = (b - a) / panels;
  std::vector<R> parts;
  parts.reserve(static_cast<std::size_t>(panels));
  for (int k = 0; k < panels; ++k) {
    const double lo = a + k * width;
    const double mid = lo + 0.5 * width;
    const double half = 0.5 * width;
    R acc{};
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      acc += rule.weights[i] * f(mid + half * rule.nodes[i]);
    }
    parts.push_back(acc * half);
  }
  return pairwise_sum(parts);
}

namespace detail {

template <typename F, typename R>
R simpson_step(F& f, double a, double b, R fa, R fm, R fb, R whole, double tol, int depth,
               int& evals, int max_evals) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const R flm = f(lm);
  const R frm = f(rm);
  evals += 2;
  const R left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const R right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const R delta = left + right - whole;
  if (depth <= 0 || evals > max_evals || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, evals, max_evals) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, evals, max_evals);
}

}  // namespace detail

/// Adaptive Simpson with Richardson correction. Works for real or complex integrands.
template <typename F>
auto adaptive_simpson(F&& f, double a, double b, double tol, int max_depth = 40,
                      int max_evals = 2'000'000) {
  using R = decltype(f(a));
  const R fa = f(a);
  const R fb = f(b);
  const R fm = f(0.5 * (a + b));
  const R whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  int evals = 3;
  return detail::simpson_step(f, a, b, fa, fm, fb, whole, tol, max_depth, evals, max_evals);
}

/// Golden-section maximisation of a unimodal function on [a, b] until the
/// bracket is narrower than `tol`. Returns the abscissa.
template <typename F>
double golden_section_max(F&& f, double a, double b, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

/// Principal-branch-free log Gamma: Lanczos (g = 607/128, 15 terms) for
/// Re z >= 1/2, upward recurrence for -10 < Re z < 1/2 and reflection
/// below. Continuous along paths that avoid the non-positive real axis.
cplx log_gamma(cplx z);

/// Gamma(z) = exp(log_gamma(z)).
cplx gamma(cplx z);

/// Bernoulli numbers B_0 .. B_30 (B_1 = -1/2).
double bernoulli(int n);

/// Argument increment arg(b / a) in (-pi, pi].
inline double arg_step(cplx a, cplx b) { return std::arg(b / a); }

struct ContourOptions {
  double max_step = 0.05;
  /// Below this step the contour is taken to pass through a zero.
  double min_step = 1e-9;
};

/// Winding number of f around the rectangle [x1, x2] x [y1, y2] by continuous
/// argument tracking; the step is halved until every increment is below pi/4.
/// Returns nullopt when the contour meets a zero (or a non-finite value).
template <typename F>
std::optional<int> rectangle_winding(F&& f, double x1, double x2, double y1, double y2,
                                     const ContourOptions& options, std::size_t* evaluations = nullptr) {
  const cplx corners[4] = {{x1, y1}, {x2, y1}, {x2, y2}, {x1, y2}};
  auto bad = [](cplx v) { return !std::isfinite(v.real()) || !std::isfinite(v.imag()) || v == cplx(0.0, 0.0); };
  std::size_t evals = 1;
  cplx value = f(corners[0]);
  if (bad(value)) return std::nullopt;
  double total = 0.0;
  for (int e = 0; e < 4; ++e) {
    const cplx a = corners[e];
    const cplx b = corners[(e + 1) % 4];
    const double length = std::abs(b - a);
    double u = 0.0;
    double h = std::min(options.max_step, length);
    while (u < 1.0) {
      const double remaining = (1.0 - u) * length;
      const bool last = h >= remaining;
      const cplx s = last ? b : a + (b - a) * (u + h / length);
      const cplx v = f(s);
      ++evals;
      if (bad(v)) return std::nullopt;
      const double d = arg_step(value, v);
      if (std::abs(d) < kPi / 4.0) {
        total += d;
        u = last ? 1.0 : u + h / length;
        value = v;
        h = std::min(2.0 * h, options.max_step);
      } else {
        h *= 0.5;
        if (h < options.min_step) return std::nullopt;
      }
    }
  }
  if (evaluations) *evaluations += evals;
  const double winding = total / kTwoPi;
  const double rounded = std::round(winding);
  if (std::abs(winding - rounded) > 0.1) return std::nullopt;
  return static_cast<int>(rounded);
}

}  // namespace numeric
}  // namespace charzero
