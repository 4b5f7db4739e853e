#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "charzero/dirichlet.hpp"
#include "charzero/lfunction.hpp"
#include "charzero/numeric.hpp"
#include "charzero/zero_record.hpp"

namespace charzero::zeros {

struct Region {
  enum class Kind { Rectangle, Disk };

  Kind kind = Kind::Rectangle;
  double sigma1 = 0.0;
  double sigma2 = 1.0;
  double t1 = 0.0;
  double t2 = 1.0;
  cplx center;
  double radius = 0.0;

  static Region rectangle(double sigma1, double sigma2, double t1, double t2);
  static Region disk(cplx center, double radius);

  bool contains(cplx s) const;
  /// Smallest axis-parallel rectangle containing the region.
  Region bounding_rectangle() const;
};

struct ZeroSearchConfig {
  double grid_spacing = 0.05;
  double retry_spacing = 0.01;
  double newton_step = 1e-6;
  int max_newton_iterations = 50;
  double residual_tolerance = 1e-10;
  /// Initial (and maximal) contour step for argument tracking.
  double contour_step = 0.05;
  /// Below this step the contour is taken to pass through a zero.
  double min_contour_step = 1e-9;
  int max_perturbations = 5;
  double perturbation = 1e-4;
};

struct WindingResult {
  int count = 0;
  /// Contour actually used (differs from the request after perturbation).
  Region contour;
  int perturbations = 0;
  std::size_t evaluations = 0;
};

/// Winding number of xi(s, chi) around a rectangle. Requires a primitive,
/// non-principal chi and a rectangle inside the evaluator window.
WindingResult winding_count(const lfunction::XiEvaluator& xi, const Region& rect,
                            const ZeroSearchConfig& config = {});

int count_zeros_argument_principle(const dirichlet::Character& chi, const Region& rect,
                                   const ZeroSearchConfig& config = {});

/// Zeros with 0 < beta < 1 inside the rectangle, sorted by (gamma, beta). The
/// count is checked against the winding number; one finer retry, then ConvergenceError.
std::vector<ZeroRecord> locate_zeros(const dirichlet::Character& chi, const Region& rect,
                                     const ZeroSearchConfig& config = {});

/// Canonical order: ascending gamma, then beta.
void sort_zeros(std::vector<ZeroRecord>& zeros);

struct HadamardCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double log_gap = 0.0;
  /// Bound on |log| of the product over zeros beyond t_cover.
  double tail_bound = 0.0;
  std::size_t zeros_used = 0;
  bool coverage_ok = false;
  /// |L(1 - lambda + it)| and (1/lambda) exp(sum 2 lambda^2 / |1 + lambda + it - rho|^2).
  double lemma_lhs = 0.0;
  double lemma_bound = 0.0;
  double lemma_constant = 0.0;
  bool lemma_ok = false;
};

HadamardCheck hadamard_ratio_check(const dirichlet::Character& chi, double lambda, double t,
                                   std::span<const ZeroRecord> zeros, double t_cover,
                                   double lemma_constant = 10.0, double density_c = 1.0 / kPi);

struct Prop34Value {
  double sum = 0.0;
  double tail_bound = 0.0;
  double total = 0.0;
  std::size_t zeros_used = 0;
  bool coverage_ok = true;
};

/// sum over zeros with |gamma - (phi + xi_shift)| <= t_cover of
/// lambda / |1 + lambda + i phi + i xi_shift - rho|^2, plus the density tail
/// beyond t_cover (zero when t_cover is infinite).
Prop34Value prop34_functional(std::uint64_t q, double lambda, double phi, double xi_shift,
                              std::span<const ZeroRecord> zeros,
                              double t_cover = std::numeric_limits<double>::infinity(),
                              double density_c = 1.0 / kPi);

struct DiskAuditConfig {
  /// Absolute constant in L >= c N^6 and L >= (c N)^{2k^2}.
  double c = 1.0;
  ZeroSearchConfig search;
};

struct DiskAudit {
  std::uint64_t q = 0;
  std::uint64_t conrey = 0;
  double x = 0.0;
  double L = 0.0;
  double abs_S = 0.0;
  /// x / |S(x, chi)|, infinite when S = 0.
  double N = 0.0;
  double phi = 0.0;
  double M = 0.0;
  cplx center;
  double radius = 0.0;
  int count = 0;
  int threshold_360 = 0;
  int threshold_400 = 0;
  bool x_range_ok = false;
  bool n_range_ok = false;
  bool l_range_ok_360 = false;
  bool l_range_ok_400 = false;
  bool vacuous = true;
  bool meets_360 = false;
  bool meets_400 = false;
};

/// ceil(L / 360) and ceil(L / 400).
int threshold_360(double L);
int threshold_400(double L);

/// Counts zeros in the disk |s - (1 + i phi)| < L log q / (log x)^2 and reports
/// the hypothesis ranges. Throws RangeError when the disk leaves the window.
DiskAudit disk_count_audit(const dirichlet::Character& chi, double x, double L,
                           const DiskAuditConfig& config = {});

/// Zeros of L(s, chi) with 0 < beta < 1 inside the disk.
int count_zeros_in_disk(const dirichlet::Character& chi, const Region& disk,
                        const ZeroSearchConfig& config = {});

}  // namespace charzero::zeros
