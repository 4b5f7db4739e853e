#pragma once

#include <cstdint>

#include "charzero/dirichlet.hpp"
#include "charzero/numeric.hpp"

namespace charzero::plancherel {

struct PlancherelCase {
  dirichlet::Character chi;
  double phi = 0.0;
  double lambda = 0.0;
  double T = 1.0;
  /// Target for each side's truncation and discretisation error.
  double tolerance = 1e-9;
  /// Hard cap on the left-hand series length.
  std::uint64_t max_terms = 50'000'000;
  /// Right-hand integration range is |xi| <= xi_scale * sqrt(T).
  double xi_scale = 10.0;

  void validate() const;
};

struct SideValue {
  cplx value;
  /// Truncation bound plus discretisation estimate.
  double err_bound = 0.0;
  double tail_bound = 0.0;
  std::uint64_t n_max = 0;
  double xi_max = 0.0;
  std::size_t evaluations = 0;
};

/// I(a) = integral_a^inf exp(b y - T y^2 / 2) dy in closed form through erfc.
double gaussian_tail_integral(double a, double b, double T);

/// sqrt(2 pi T) sum_{n <= n_max} chi(n) n^{-i phi} I(log n) with b = lambda - 1,
/// n_max the least value whose Abel-summation tail bound is below the tolerance.
SideValue lhs_gaussian_sum(const PlancherelCase& c);

/// integral of L(1 - lambda + i phi + i xi) / (1 - lambda + i xi) exp(-xi^2 / 2T)
/// over |xi| <= xi_max by step-halving trapezoid sums on one vertical line.
SideValue rhs_L_integral(const PlancherelCase& c);

/// Explicit bound on |L(sigma + it, chi)| for 0 < sigma, non-principal chi:
/// sum_{n <= q} n^{-sigma} + |s| B q^{-sigma} / sigma with B = 2 max |S(x, chi)|.
double l_growth_bound(const dirichlet::Character& chi, cplx s);

struct PlancherelResult {
  SideValue lhs;
  SideValue rhs;
  /// |lhs - rhs| / (1 + |lhs| + |rhs|).
  double residual = 0.0;
};

PlancherelResult plancherel_identity(const PlancherelCase& c);

}  // namespace charzero::plancherel
