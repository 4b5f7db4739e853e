#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "charzero/dirichlet.hpp"
#include "charzero/numeric.hpp"
#include "charzero/zero_record.hpp"

namespace charzero::lfunction {

/// Euler-Maclaurin parameters for the Hurwitz zeta function.
struct HurwitzParams {
  /// Terms summed directly; 0 selects max(50, ceil(2 |Im s|)).
  int shift_terms = 0;
  /// Highest Bernoulli index used (B_2 .. B_b); even, at most 30.
  int bernoulli_terms = 20;
  double target_abs_error = 1e-12;

  int shift_for(cplx s) const;
  void validate() const;
};

/// zeta(s, a) = sum_{n >= 0} (n + a)^{-s} for 0 < a <= 1, continued to s != 1.
/// The bound dominates the Euler-Maclaurin remainder plus accumulated rounding.
Bounded<cplx> hurwitz_zeta(cplx s, double a, const HurwitzParams& params = {});

/// Rectangle of the s-plane on which an evaluator's bound is validated.
struct Window {
  double t_max = 50.0;
  double sigma_min = -1.0;
  double sigma_max = 3.0;

  bool contains(cplx s) const {
    return std::abs(s.imag()) <= t_max && s.real() >= sigma_min && s.real() <= sigma_max;
  }
};

/// L(s, chi) = sum_a chi(a) sum_{n >= 0} (qn + a)^{-s}, each inner sum by
/// Euler-Maclaurin. Immutable after construction and safe to share.
class LEvaluator {
 public:
  explicit LEvaluator(dirichlet::Character chi, HurwitzParams params = {}, Window window = {});

  Bounded<cplx> operator()(cplx s) const;

  /// L at sigma + i (t0 + j dt), j = 0 .. count-1, using a single shift N for
  /// the whole line and multiplicative phase recurrences (re-seeded every 64 steps).
  std::vector<cplx> vertical_line(double sigma, double t0, double dt, std::size_t count) const;

  const dirichlet::Character& character() const { return chi_; }
  const HurwitzParams& params() const { return params_; }
  const Window& window() const { return window_; }

 private:
  struct Residue {
    std::uint64_t a;
    cplx weight;  // chi(a)
  };

  Bounded<cplx> evaluate(cplx s, int shift) const;

  dirichlet::Character chi_;
  HurwitzParams params_;
  Window window_;
  std::vector<Residue> residues_;
  double log_q_ = 0.0;
};

/// Completed function xi(s, chi) = (q/pi)^{(s+a)/2} Gamma((s+a)/2) L(s, chi)
/// for primitive chi. Near the Gamma pole s = -a the functional equation
/// xi(s, chi) = eps(chi) xi(1 - s, conj chi) is used instead.
class XiEvaluator {
 public:
  explicit XiEvaluator(dirichlet::Character chi, HurwitzParams params = {}, Window window = {});

  cplx operator()(cplx s) const;
  /// The direct product formula, without the functional-equation switch.
  cplx direct(cplx s) const;
  /// eps(chi) = tau(chi) / (i^a sqrt q), |eps| = 1.
  cplx root_number() const { return root_number_; }
  const LEvaluator& l() const { return l_; }
  int parity() const { return parity_; }

 private:
  LEvaluator l_;
  LEvaluator l_conj_;
  int parity_ = 0;
  cplx root_number_;
};

/// Gauss sum tau(chi) = sum_a chi(a) e(a/q), summed pairwise.
cplx gauss_sum(const dirichlet::Character& chi);

Bounded<cplx> L_value(const dirichlet::Character& chi, cplx s, const HurwitzParams& params = {});

/// Throws DomainError for imprimitive chi.
cplx xi_value(const dirichlet::Character& chi, cplx s);

/// Truncated Dirichlet series sum_{n <= n_max} chi(n) n^{-s}, Re s > 1, with
/// the integral-comparison tail bound n_max^{1-sigma} / (sigma - 1).
Bounded<cplx> dirichlet_series(const dirichlet::Character& chi, cplx s, std::uint64_t n_max);

struct ExplicitFormulaConfig {
  /// Zero density envelope c log(q (2 + |u|)) per unit height for the tail.
  double density_c = 1.0 / kPi;
  /// Prime-power cutoff for the von Mangoldt series.
  std::uint64_t cutoff = 2'000'000;
  /// Tail estimates above this are flagged as insufficient coverage.
  double coverage_tolerance = 0.5;
};

struct ExplicitFormulaBalance {
  double lambda = 0.0;
  double t = 0.0;
  /// -Re L'/L(s0) from the Dirichlet series of Lambda(n) chi(n) n^{-s0}.
  double lhs = 0.0;
  /// Rigorous bound on the series remainder beyond the cutoff (psi(x) < 1.03883 x).
  double lhs_tail_bound = 0.0;
  /// 1/2 log(q(1+|t|)) - sum_rho Re 1/(s0 - rho) - zero_tail.
  double rhs = 0.0;
  double zero_sum = 0.0;
  double zero_tail = 0.0;
  double residual = 0.0;
  double t_cover = 0.0;
  std::size_t zeros_used = 0;
  bool coverage_ok = false;
  /// sum_n Lambda(n) n^{-1-lambda} and its gap to 1/lambda.
  double von_mangoldt_sum = 0.0;
  double von_mangoldt_gap = 0.0;
};

/// Zeros must cover |Im rho - t| <= t_cover; t_cover <= 0 throws CoverageError.
ExplicitFormulaBalance explicit_formula_balance(const dirichlet::Character& chi, double lambda,
                                                double t, std::span<const ZeroRecord> zeros,
                                                double t_cover,
                                                const ExplicitFormulaConfig& config = {});

/// c * integral over |u - t| > t_cover of log(q (2 + |u|)) * w(u) du, where
/// w(u) = kernel(|u - t|). Shared by every zero-sum tail in the library.
template <typename Kernel>
double zero_density_tail(double density_c, double q, double t, double t_cover, Kernel&& kernel);

}  // namespace charzero::lfunction

#include "charzero/lfunction_inl.hpp"
