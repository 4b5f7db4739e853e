#include "charzero/plancherel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "charzero/error.hpp"
#include "charzero/lfunction.hpp"
#include "charzero/parallel.hpp"

namespace charzero::plancherel {

namespace {

/// 2 max_x |S(x, chi)|: bounds every block sum sum_{a < n <= b} chi(n).
double block_sum_bound(const dirichlet::Character& chi) {
  const std::uint64_t q = chi.modulus();
  cplx s(0.0, 0.0);
  double best = 0.0;
  for (std::uint64_t n = 1; n <= q; ++n) {
    s += chi(static_cast<std::int64_t>(n));
    best = std::max(best, std::abs(s));
  }
  return 2.0 * best;
}

/// Abel-summation bound on |sum_{n > N} chi(n) n^{-i phi} I(log n)| (without the sqrt(2 pi T) factor).
double lhs_tail(double B, double N, double b, double T, double phi) {
  const double a = std::log(N);
  const double G = gaussian_tail_integral(a, b, T);
  return B * (2.0 * G + std::abs(phi) * G / (T * a - b));
}

/// (C0, C1) with |L(sigma + it)| <= C0 + C1 |s|, from partial summation at N = q.
std::pair<double, double> growth_constants(const dirichlet::Character& chi, double sigma) {
  if (!(sigma > 0.0)) throw DomainError("l_growth_bound: requires Re s > 0");
  const std::uint64_t q = chi.modulus();
  double head = 0.0;
  for (std::uint64_t n = 1; n <= q; ++n) head += std::pow(static_cast<double>(n), -sigma);
  return {head, block_sum_bound(chi) * std::pow(static_cast<double>(q), -sigma) / sigma};
}

}  // namespace

void PlancherelCase::validate() const {
  if (chi.is_principal()) throw DomainError("plancherel: principal character");
  if (!(lambda >= 0.0 && lambda <= 0.5)) throw DomainError("plancherel: lambda must lie in [0, 1/2]");
  if (!(T > 0.0)) throw DomainError("plancherel: T must be positive");
  if (!(tolerance > 0.0)) throw DomainError("plancherel: tolerance must be positive");
}

double gaussian_tail_integral(double a, double b, double T) {
  const double centre = b / T;
  return std::exp(b * b / (2.0 * T)) * std::sqrt(kPi / (2.0 * T)) * std::erfc(std::sqrt(T / 2.0) * (a - centre));
}

double l_growth_bound(const dirichlet::Character& chi, cplx s) {
  const auto [c0, c1] = growth_constants(chi, s.real());
  return c0 + c1 * std::abs(s);
}

SideValue lhs_gaussian_sum(const PlancherelCase& c) {
  c.validate();
  const double b = c.lambda - 1.0;
  const double scale = std::sqrt(kTwoPi * c.T);
  const double B = block_sum_bound(c.chi);
  const double target = c.tolerance / scale;

  auto tail = [&](std::uint64_t n) { return lhs_tail(B, static_cast<double>(n), b, c.T, c.phi); };
  std::uint64_t hi = 16;
  while (tail(hi) >= target) {
    if (hi >= c.max_terms) {
      throw ConvergenceError("lhs_gaussian_sum: tail bound " + std::to_string(scale * tail(hi)) +
                             " above tolerance at the term cap");
    }
    hi = std::min(2 * hi, c.max_terms);
  }
  std::uint64_t lo = hi / 2;
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    (tail(mid) < target ? hi : lo) = mid;
  }
  const std::uint64_t n_max = hi;

  std::vector<double> mags(n_max, 0.0);
  const cplx sum = blocked_pairwise_sum<cplx>(n_max, [&](std::size_t i) {
    const auto n = static_cast<std::int64_t>(i + 1);
    const cplx chi_n = c.chi(n);
    if (chi_n == cplx(0.0, 0.0)) return chi_n;
    const double log_n = std::log(static_cast<double>(n));
    const double G = gaussian_tail_integral(log_n, b, c.T);
    mags[i] = G;
    return chi_n * std::polar(G, -c.phi * log_n);
  });
  const double magnitude = numeric::pairwise_sum(mags);

  SideValue out;
  out.value = scale * sum;
  out.tail_bound = scale * tail(n_max);
  out.err_bound = out.tail_bound + 1e-15 * scale * magnitude;
  out.n_max = n_max;
  out.evaluations = n_max;
  return out;
}

SideValue rhs_L_integral(const PlancherelCase& c) {
  c.validate();
  const double sigma = 1.0 - c.lambda;
  const double xi_max = c.xi_scale * std::sqrt(c.T);
  const lfunction::Window window{std::abs(c.phi) + xi_max, 0.0, 1.0};
  const lfunction::LEvaluator L(c.chi, {}, window);

  auto weight = [&](double xi) { return std::exp(-xi * xi / (2.0 * c.T)) / cplx(sigma, xi); };

  // Samples at xi = -xi_max + j h; each halving adds the odd points.
  std::size_t intervals = 16;
  double h = 2.0 * xi_max / static_cast<double>(intervals);
  auto line = L.vertical_line(sigma, c.phi - xi_max, h, intervals + 1);
  std::vector<cplx> terms(intervals + 1);
  for (std::size_t j = 0; j <= intervals; ++j) {
    const double xi = -xi_max + h * static_cast<double>(j);
    terms[j] = line[j] * weight(xi) * ((j == 0 || j == intervals) ? 0.5 : 1.0);
  }
  std::size_t evaluations = intervals + 1;
  cplx sum_all = numeric::pairwise_sum(terms);
  cplx estimate = h * sum_all;
  double change = std::numeric_limits<double>::infinity();
  constexpr int kMaxHalvings = 14;
  int halvings = 0;
  while (halvings < kMaxHalvings) {
    const double h_new = 0.5 * h;
    const auto mids = L.vertical_line(sigma, c.phi - xi_max + h_new, h, intervals);
    evaluations += intervals;
    std::vector<cplx> mid_terms(intervals);
    for (std::size_t j = 0; j < intervals; ++j) {
      const double xi = -xi_max + h_new + h * static_cast<double>(j);
      mid_terms[j] = mids[j] * weight(xi);
    }
    sum_all += numeric::pairwise_sum(mid_terms);
    intervals *= 2;
    h = h_new;
    const cplx refined = h * sum_all;
    change = std::abs(refined - estimate);
    estimate = refined;
    ++halvings;
    if (change < 0.1 * c.tolerance && halvings >= 3) break;
  }
  if (!(change < c.tolerance)) {
    throw ConvergenceError("rhs_L_integral: trapezoid sums did not settle (last change " + std::to_string(change) + ")");
  }

  // |L| <= C0 + C1 |s| on the line; |s| <= sigma + |phi| + |xi| and |xi| / |sigma + i xi| <= 1.
  const auto [c0, c1] = growth_constants(c.chi, sigma);
  const double gauss_tail = std::sqrt(kPi * c.T / 2.0) * std::erfc(xi_max / std::sqrt(2.0 * c.T));
  const double tail = 2.0 * ((c0 + c1 * (sigma + std::abs(c.phi))) / xi_max + c1) * gauss_tail;

  SideValue out;
  out.value = estimate;
  out.tail_bound = tail;
  out.err_bound = tail + change;
  out.xi_max = xi_max;
  out.evaluations = evaluations;
  return out;
}

PlancherelResult plancherel_identity(const PlancherelCase& c) {
  PlancherelResult out;
  out.lhs = lhs_gaussian_sum(c);
  out.rhs = rhs_L_integral(c);
  out.residual = std::abs(out.lhs.value - out.rhs.value) / (1.0 + std::abs(out.lhs.value) + std::abs(out.rhs.value));
  return out;
}

}  // namespace charzero::plancherel
