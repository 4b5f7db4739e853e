#include "charzero/lfunction.hpp"

#include <algorithm>
#include <string>

#include "charzero/error.hpp"
#include "charzero/parallel.hpp"
#include "charzero/primes.hpp"

namespace charzero::lfunction {

namespace {

constexpr double kRoundingEps = 4e-16;

/// (e^z - 1) / z, stable near z = 0.
cplx expm1_over(cplx z) {
  if (std::abs(z) < 1e-5) return 1.0 + z / 2.0 + z * z / 6.0;
  return (std::exp(z) - 1.0) / z;
}

/// Bernoulli coefficients B_{2k} / (2k)! for k = 1 .. kmax.
std::vector<double> bernoulli_coefficients(int kmax) {
  std::vector<double> c(static_cast<std::size_t>(kmax) + 1, 0.0);
  double fact = 1.0;
  for (int k = 1; k <= kmax; ++k) {
    fact *= (2.0 * k - 1.0) * (2.0 * k);
    c[static_cast<std::size_t>(k)] = numeric::bernoulli(2 * k) / fact;
  }
  return c;
}

/// Euler-Maclaurin correction bracket for shift point w:
///   1/2 + sum_k B_2k/(2k)! (s)_{2k-1} w^{1-2k},
/// and the remainder bound factor 4 |(s)_{2M}| / (2 pi)^{2M} / (sigma + 2M - 1) (times w^{-sigma-2M+1}).
struct Correction {
  cplx bracket;
  double remainder;
};

Correction em_correction(cplx s, double w, int kmax, const std::vector<double>& coeffs) {
  cplx poch = s;  // (s)_{2k-1}
  double winv = 1.0 / w;
  double wpow = winv;  // w^{1-2k}
  cplx bracket = 0.5;
  for (int k = 1; k <= kmax; ++k) {
    bracket += coeffs[static_cast<std::size_t>(k)] * poch * wpow;
    poch *= (s + (2.0 * k - 1.0)) * (s + 2.0 * k);
    wpow *= winv * winv;
  }
  // poch is now (s)_{2 kmax + 1}; the remainder needs (s)_{2 kmax}.
  const double poch_2m = std::abs(poch / (s + 2.0 * kmax));
  const double sigma_m = s.real() + 2.0 * kmax - 1.0;
  const double scale = std::pow(kTwoPi, 2.0 * kmax);
  const double rem = sigma_m > 0.0 ? 4.0 * poch_2m / scale / sigma_m * std::pow(w, 1.0 - 2.0 * kmax)
                                   : std::numeric_limits<double>::infinity();
  return {bracket, rem};
}

}  // namespace

int HurwitzParams::shift_for(cplx s) const {
  if (shift_terms > 0) return shift_terms;
  return std::max(50, static_cast<int>(std::ceil(2.0 * std::abs(s.imag()))));
}

void HurwitzParams::validate() const {
  if (bernoulli_terms < 2 || bernoulli_terms > 30 || bernoulli_terms % 2 != 0) {
    throw DomainError("HurwitzParams: bernoulli_terms must be even and in [2, 30]");
  }
  if (shift_terms < 0) throw DomainError("HurwitzParams: shift_terms must be >= 0");
}

Bounded<cplx> hurwitz_zeta(cplx s, double a, const HurwitzParams& params) {
  params.validate();
  if (s == cplx(1.0, 0.0)) throw PoleError("hurwitz_zeta: pole at s = 1");
  if (!(a > 0.0 && a <= 1.0)) throw DomainError("hurwitz_zeta: a must lie in (0, 1]");
  const int n_shift = params.shift_for(s);
  const int kmax = params.bernoulli_terms / 2;
  static const std::vector<double> coeffs = bernoulli_coefficients(15);

  std::vector<cplx> terms;
  terms.reserve(static_cast<std::size_t>(n_shift) + 3);
  double magnitude = 0.0;
  for (int n = 0; n < n_shift; ++n) {
    const cplx term = std::exp(-s * std::log(n + a));
    magnitude += std::abs(term);
    terms.push_back(term);
  }
  const double w = n_shift + a;
  const cplx w_pow = std::exp(-s * std::log(w));  // w^{-s}
  const Correction corr = em_correction(s, w, kmax, coeffs);
  const cplx integral = w_pow * w / (s - 1.0);
  const cplx tail = w_pow * corr.bracket;
  terms.push_back(integral);
  terms.push_back(tail);
  magnitude += std::abs(integral) + std::abs(tail);

  Bounded<cplx> out;
  out.value = numeric::pairwise_sum(terms);
  out.err_bound = corr.remainder * std::exp(-s.real() * std::log(w)) + kRoundingEps * magnitude;
  return out;
}

LEvaluator::LEvaluator(dirichlet::Character chi, HurwitzParams params, Window window)
    : chi_(std::move(chi)), params_(params), window_(window) {
  params_.validate();
  const std::uint64_t q = chi_.modulus();
  log_q_ = std::log(static_cast<double>(q));
  for (std::uint64_t a = 1; a <= q; ++a) {
    const cplx w = chi_(static_cast<std::int64_t>(a));
    if (w != cplx(0.0, 0.0)) residues_.push_back({a, w});
  }
}

Bounded<cplx> LEvaluator::operator()(cplx s) const { return evaluate(s, params_.shift_for(s)); }

Bounded<cplx> LEvaluator::evaluate(cplx s, int shift) const {
  const bool principal = chi_.is_principal();
  if (principal && s == cplx(1.0, 0.0)) throw PoleError("L_value: principal character at s = 1");
  const auto q = static_cast<double>(chi_.modulus());
  const int kmax = params_.bernoulli_terms / 2;
  static const std::vector<double> coeffs = bernoulli_coefficients(15);

  std::vector<cplx> parts;
  parts.reserve(residues_.size());
  double magnitude = 0.0;
  double remainder = 0.0;
  const cplx q_pow = std::exp(-s * log_q_);  // q^{-s}
  for (const auto& [a, weight] : residues_) {
    std::vector<cplx> terms;
    terms.reserve(static_cast<std::size_t>(shift) + 3);
    for (int n = 0; n < shift; ++n) {
      const cplx term = std::exp(-s * std::log(q * n + static_cast<double>(a)));
      magnitude += std::abs(term);
      terms.push_back(term);
    }
    const double w = shift + static_cast<double>(a) / q;
    const double log_w = std::log(w);
    const cplx W_pow = std::exp(-s * std::log(q * shift + static_cast<double>(a)));  // (qN + a)^{-s}
    const Correction corr = em_correction(s, w, kmax, coeffs);
    // q^{-s} w^{1-s} / (s - 1); for non-principal chi the constant q^{-s}/(s-1)
    // cancels across residues, which keeps s = 1 finite.
    const cplx integral = principal ? q_pow * std::exp((1.0 - s) * log_w) / (s - 1.0)
                                    : q_pow * (-log_w) * expm1_over((1.0 - s) * log_w);
    const cplx tail = W_pow * corr.bracket;
    terms.push_back(integral);
    terms.push_back(tail);
    magnitude += std::abs(integral) + std::abs(tail);
    remainder += std::abs(q_pow) * corr.remainder * std::exp(-s.real() * log_w);
    parts.push_back(weight * numeric::pairwise_sum(terms));
  }
  Bounded<cplx> out;
  out.value = numeric::pairwise_sum(parts);
  out.err_bound = remainder + kRoundingEps * magnitude;
  return out;
}

std::vector<cplx> LEvaluator::vertical_line(double sigma, double t0, double dt,
                                            std::size_t count) const {
  std::vector<cplx> out(count, cplx(0.0, 0.0));
  if (count == 0) return out;
  const double t_end = t0 + dt * static_cast<double>(count - 1);
  const int shift = params_.shift_for(cplx(sigma, std::max(std::abs(t0), std::abs(t_end))));
  const bool principal = chi_.is_principal();
  const auto q = static_cast<double>(chi_.modulus());
  const int kmax = params_.bernoulli_terms / 2;
  static const std::vector<double> coeffs = bernoulli_coefficients(15);
  constexpr std::size_t kReseed = 64;

  auto s_at = [&](std::size_t j) { return cplx(sigma, t0 + dt * static_cast<double>(j)); };
  if (principal) {
    for (std::size_t j = 0; j < count; ++j) {
      if (s_at(j) == cplx(1.0, 0.0)) throw PoleError("L_value: principal character at s = 1");
    }
  }

  std::vector<cplx> acc(count);
  // Accumulates weight * x^{-s_j} for all j by phase recurrence.
  auto add_power = [&](double log_x, cplx weight, std::vector<cplx>& into) {
    const cplx rot = std::polar(1.0, -dt * log_x);
    cplx base;
    for (std::size_t j = 0; j < count; ++j) {
      if (j % kReseed == 0) base = weight * std::exp(-s_at(j) * log_x);
      into[j] += base;
      base *= rot;
    }
  };

  for (const auto& [a, weight] : residues_) {
    std::fill(acc.begin(), acc.end(), cplx(0.0, 0.0));
    for (int n = 0; n < shift; ++n) add_power(std::log(q * n + static_cast<double>(a)), 1.0, acc);
    const double w = shift + static_cast<double>(a) / q;
    const double log_w = std::log(w);
    const double log_W = std::log(q * shift + static_cast<double>(a));
    for (std::size_t j = 0; j < count; ++j) {
      const cplx s = s_at(j);
      const cplx q_pow = std::exp(-s * log_q_);
      const cplx integral = principal ? q_pow * std::exp((1.0 - s) * log_w) / (s - 1.0)
                                      : q_pow * (-log_w) * expm1_over((1.0 - s) * log_w);
      const Correction corr = em_correction(s, w, kmax, coeffs);
      acc[j] += integral + std::exp(-s * log_W) * corr.bracket;
      out[j] += weight * acc[j];
    }
  }
  return out;
}

XiEvaluator::XiEvaluator(dirichlet::Character chi, HurwitzParams params, Window window)
    : l_(chi, params, window), l_conj_(chi.conjugate(), params, window), parity_(chi.parity()) {
  if (!chi.is_primitive()) throw DomainError("XiEvaluator: character must be primitive");
  const double q = static_cast<double>(chi.modulus());
  const cplx i_pow = parity_ == 0 ? cplx(1.0, 0.0) : cplx(0.0, 1.0);
  root_number_ = gauss_sum(chi) / (i_pow * std::sqrt(q));
}

cplx XiEvaluator::direct(cplx s) const {
  const double q = static_cast<double>(l_.character().modulus());
  const cplx w = (s + static_cast<double>(parity_)) / 2.0;
  return std::exp(w * std::log(q / kPi) + numeric::log_gamma(w)) * l_(s).value;
}

cplx XiEvaluator::operator()(cplx s) const {
  if (std::abs(s + static_cast<double>(parity_)) >= 0.25) return direct(s);
  const double q = static_cast<double>(l_.character().modulus());
  const cplx r = 1.0 - s;
  const cplx w = (r + static_cast<double>(parity_)) / 2.0;
  return root_number_ * std::exp(w * std::log(q / kPi) + numeric::log_gamma(w)) * l_conj_(r).value;
}

cplx gauss_sum(const dirichlet::Character& chi) {
  const std::uint64_t q = chi.modulus();
  std::vector<cplx> terms;
  terms.reserve(q);
  for (std::uint64_t a = 1; a <= q; ++a) {
    const cplx c = chi(static_cast<std::int64_t>(a));
    if (c == cplx(0.0, 0.0)) continue;
    terms.push_back(c * std::polar(1.0, kTwoPi * static_cast<double>(a % q) / static_cast<double>(q)));
  }
  return numeric::pairwise_sum(terms);
}

Bounded<cplx> L_value(const dirichlet::Character& chi, cplx s, const HurwitzParams& params) {
  return LEvaluator(chi, params)(s);
}

cplx xi_value(const dirichlet::Character& chi, cplx s) { return XiEvaluator(chi)(s); }

Bounded<cplx> dirichlet_series(const dirichlet::Character& chi, cplx s, std::uint64_t n_max) {
  if (!(s.real() > 1.0)) throw DomainError("dirichlet_series: requires Re s > 1");
  Bounded<cplx> out;
  out.value = blocked_pairwise_sum<cplx>(n_max, [&](std::size_t i) {
    const auto n = static_cast<std::int64_t>(i + 1);
    const cplx c = chi(n);
    if (c == cplx(0.0, 0.0)) return c;
    return c * std::exp(-s * std::log(static_cast<double>(n)));
  });
  const double sigma = s.real();
  out.err_bound = std::pow(static_cast<double>(n_max), 1.0 - sigma) / (sigma - 1.0) +
                  kRoundingEps * static_cast<double>(n_max);
  return out;
}

ExplicitFormulaBalance explicit_formula_balance(const dirichlet::Character& chi, double lambda,
                                                double t, std::span<const ZeroRecord> zeros,
                                                double t_cover,
                                                const ExplicitFormulaConfig& config) {
  if (!chi.is_primitive()) throw DomainError("explicit_formula_balance: character must be primitive");
  if (!(lambda > 0.0 && lambda <= 0.5)) {
    throw DomainError("explicit_formula_balance: lambda must lie in (0, 1/2]");
  }
  if (!(t_cover > 0.0)) {
    throw CoverageError("explicit_formula_balance: zero list covers no height range (t_cover <= 0)");
  }
  const double sigma = 1.0 + lambda;
  const cplx s0(sigma, t);
  const double q = static_cast<double>(chi.modulus());

  ExplicitFormulaBalance out;
  out.lambda = lambda;
  out.t = t;
  out.t_cover = t_cover;

  auto list = primes::prime_list(config.cutoff);
  std::vector<double> terms;
  for (std::uint32_t p : list->up_to(config.cutoff)) {
    const double logp = std::log(static_cast<double>(p));
    std::uint64_t pk = p;
    while (true) {
      const cplx c = chi(static_cast<std::int64_t>(pk % chi.modulus()));
      if (c != cplx(0.0, 0.0)) {
        terms.push_back(logp * (c * std::exp(-s0 * std::log(static_cast<double>(pk)))).real());
      }
      if (pk > config.cutoff / p) break;
      pk *= p;
    }
  }
  out.lhs = numeric::pairwise_sum(terms);
  out.lhs_tail_bound =
      1.03883 * sigma * std::pow(static_cast<double>(config.cutoff), -lambda) / lambda;

  std::vector<double> zero_terms;
  for (const auto& z : zeros) {
    if (std::abs(z.gamma - t) > t_cover) continue;
    zero_terms.push_back((1.0 / (s0 - z.rho())).real());
  }
  out.zeros_used = zero_terms.size();
  out.zero_sum = numeric::pairwise_sum(zero_terms);
  const double shift = sigma - 0.5;
  out.zero_tail = zero_density_tail(config.density_c, q, t, t_cover,
                                    [&](double d) { return shift / (shift * shift + d * d); });
  out.rhs = 0.5 * std::log(q * (1.0 + std::abs(t))) - out.zero_sum - out.zero_tail;
  out.residual = std::abs(out.lhs - out.rhs);
  out.coverage_ok = out.zero_tail <= config.coverage_tolerance;

  const auto vm = primes::von_mangoldt_series(sigma, config.cutoff);
  out.von_mangoldt_sum = vm.value();
  out.von_mangoldt_gap = out.von_mangoldt_sum - 1.0 / lambda;
  return out;
}

}  // namespace charzero::lfunction
