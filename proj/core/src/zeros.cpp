#include "charzero/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "charzero/error.hpp"
#include "charzero/multfn.hpp"

namespace charzero {

std::string_view to_string(ZeroMethod m) {
  switch (m) {
    case ZeroMethod::GridNewton:
      return "grid+newton";
    case ZeroMethod::ArgumentPrincipleRefined:
      return "argument-principle-refined";
  }
  return "unknown";
}

}  // namespace charzero

namespace charzero::zeros {

namespace {

void require_rectangle(const Region& rect) {
  if (rect.kind != Region::Kind::Rectangle) throw DomainError("expected a rectangle region");
  if (!(rect.sigma1 < rect.sigma2) || !(rect.t1 < rect.t2)) throw DomainError("rectangle has empty interior");
}

void require_in_window(const lfunction::Window& w, const Region& rect) {
  const bool inside = rect.sigma1 >= w.sigma_min && rect.sigma2 <= w.sigma_max &&
                      std::abs(rect.t1) <= w.t_max && std::abs(rect.t2) <= w.t_max;
  if (!inside) throw RangeError("region lies outside the evaluator window");
}

void require_zero_search_character(const dirichlet::Character& chi) {
  if (!chi.is_primitive()) throw DomainError("zero search requires a primitive character");
  if (chi.is_principal()) throw DomainError("zero search requires a non-principal character");
}

std::optional<int> try_winding(const lfunction::XiEvaluator& xi, const Region& rect,
                               const ZeroSearchConfig& config, std::size_t& evals) {
  return numeric::rectangle_winding(xi, rect.sigma1, rect.sigma2, rect.t1, rect.t2,
                                    {config.contour_step, config.min_contour_step}, &evals);
}

Region perturbed(const Region& rect, int k, const ZeroSearchConfig& config, const lfunction::Window& w) {
  const double d = config.perturbation * k;
  Region r = rect;
  r.sigma1 = rect.sigma1 - 1.0 * d >= w.sigma_min ? rect.sigma1 - 1.0 * d : rect.sigma1 + 1.0 * d;
  r.sigma2 = rect.sigma2 + 0.7 * d <= w.sigma_max ? rect.sigma2 + 0.7 * d : rect.sigma2 - 0.7 * d;
  r.t1 = std::abs(rect.t1 - 1.3 * d) <= w.t_max ? rect.t1 - 1.3 * d : rect.t1 + 1.3 * d;
  r.t2 = std::abs(rect.t2 + 0.9 * d) <= w.t_max ? rect.t2 + 0.9 * d : rect.t2 - 0.9 * d;
  return r;
}

struct NewtonResult {
  cplx s;
  double residual = 0.0;
  bool converged = false;
};

NewtonResult newton(const lfunction::LEvaluator& L, cplx s, const ZeroSearchConfig& config) {
  const double h = config.newton_step;
  cplx v = L(s).value;
  for (int it = 0; it < config.max_newton_iterations; ++it) {
    const cplx d = (L(s + h).value - L(s - h).value) / (2.0 * h);
    if (d == cplx(0.0, 0.0)) break;
    const cplx step = v / d;
    if (!std::isfinite(std::abs(step)) || std::abs(step) > 1.0) break;
    s -= step;
    v = L(s).value;
    if (std::abs(step) < 1e-14 * std::max(1.0, std::abs(s))) break;
  }
  return {s, std::abs(v), std::abs(v) <= config.residual_tolerance};
}

std::vector<ZeroRecord> scan_rectangle(const lfunction::LEvaluator& L, const Region& rect, double spacing,
                                       ZeroMethod method, const ZeroSearchConfig& config) {
  const auto n_sigma = static_cast<std::size_t>(std::ceil((rect.sigma2 - rect.sigma1) / spacing)) + 1;
  const auto n_t = static_cast<std::size_t>(std::ceil((rect.t2 - rect.t1) / spacing)) + 1;
  const double h_sigma = (rect.sigma2 - rect.sigma1) / static_cast<double>(n_sigma - 1);
  const double h_t = (rect.t2 - rect.t1) / static_cast<double>(n_t - 1);
  const std::size_t cols = n_sigma + 2;
  const std::size_t rows = n_t + 2;

  std::vector<std::vector<double>> mag(cols);
  for (std::size_t i = 0; i < cols; ++i) {
    const double sigma = rect.sigma1 + h_sigma * (static_cast<double>(i) - 1.0);
    const auto line = L.vertical_line(sigma, rect.t1 - h_t, h_t, rows);
    mag[i].resize(rows);
    for (std::size_t j = 0; j < rows; ++j) mag[i][j] = std::abs(line[j]);
  }

  const auto& chi = L.character();
  std::vector<ZeroRecord> found;
  for (std::size_t i = 1; i + 1 < cols; ++i) {
    for (std::size_t j = 1; j + 1 < rows; ++j) {
      const double m = mag[i][j];
      bool minimum = true;
      for (int di = -1; di <= 1 && minimum; ++di) {
        for (int dj = -1; dj <= 1; ++dj) {
          if (di == 0 && dj == 0) continue;
          if (mag[i + di][j + dj] < m) {
            minimum = false;
            break;
          }
        }
      }
      if (!minimum) continue;
      const cplx seed(rect.sigma1 + h_sigma * (static_cast<double>(i) - 1.0),
                      rect.t1 + h_t * (static_cast<double>(j) - 1.0));
      const NewtonResult r = newton(L, seed, config);
      if (!r.converged) continue;
      if (!(r.s.real() > 0.0 && r.s.real() < 1.0) || !rect.contains(r.s)) continue;
      // Trivial zero of L at s = 0 for even characters.
      if (chi.parity() == 0 && std::abs(r.s) < 1e-6) continue;
      bool duplicate = false;
      for (auto& z : found) {
        if (std::abs(z.rho() - r.s) < 1e-7) {
          duplicate = true;
          if (r.residual < z.residual) {
            z.beta = r.s.real();
            z.gamma = r.s.imag();
            z.residual = r.residual;
          }
          break;
        }
      }
      if (duplicate) continue;
      found.push_back({chi.modulus(), chi.conrey_label(), r.s.real(), r.s.imag(), r.residual, method});
    }
  }
  sort_zeros(found);
  return found;
}

}  // namespace

Region Region::rectangle(double sigma1, double sigma2, double t1, double t2) {
  Region r;
  r.kind = Kind::Rectangle;
  r.sigma1 = sigma1;
  r.sigma2 = sigma2;
  r.t1 = t1;
  r.t2 = t2;
  if (!(sigma1 < sigma2) || !(t1 < t2)) throw DomainError("rectangle has empty interior");
  return r;
}

Region Region::disk(cplx center, double radius) {
  if (!(radius > 0.0)) throw DomainError("disk radius must be positive");
  Region r;
  r.kind = Kind::Disk;
  r.center = center;
  r.radius = radius;
  return r;
}

bool Region::contains(cplx s) const {
  if (kind == Kind::Disk) return std::abs(s - center) < radius;
  return s.real() > sigma1 && s.real() < sigma2 && s.imag() > t1 && s.imag() < t2;
}

Region Region::bounding_rectangle() const {
  if (kind == Kind::Rectangle) return *this;
  return rectangle(center.real() - radius, center.real() + radius, center.imag() - radius, center.imag() + radius);
}

void sort_zeros(std::vector<ZeroRecord>& zeros) {
  std::sort(zeros.begin(), zeros.end(), [](const ZeroRecord& a, const ZeroRecord& b) {
    if (a.gamma != b.gamma) return a.gamma < b.gamma;
    return a.beta < b.beta;
  });
}

WindingResult winding_count(const lfunction::XiEvaluator& xi, const Region& rect, const ZeroSearchConfig& config) {
  require_rectangle(rect);
  const auto& window = xi.l().window();
  require_in_window(window, rect);
  if (xi.l().character().is_principal()) throw DomainError("winding_count requires a non-principal character");
  WindingResult out;
  for (int k = 0; k <= config.max_perturbations; ++k) {
    const Region contour = k == 0 ? rect : perturbed(rect, k, config, window);
    if (const auto n = try_winding(xi, contour, config, out.evaluations)) {
      out.count = *n;
      out.contour = contour;
      out.perturbations = k;
      return out;
    }
  }
  throw ConvergenceError("argument principle: contour passes through a zero after " +
                         std::to_string(config.max_perturbations) + " perturbations");
}

int count_zeros_argument_principle(const dirichlet::Character& chi, const Region& rect,
                                   const ZeroSearchConfig& config) {
  require_zero_search_character(chi);
  const lfunction::XiEvaluator xi(chi);
  return winding_count(xi, rect, config).count;
}

std::vector<ZeroRecord> locate_zeros(const dirichlet::Character& chi, const Region& rect,
                                     const ZeroSearchConfig& config) {
  require_zero_search_character(chi);
  require_rectangle(rect);
  const lfunction::XiEvaluator xi(chi);
  const WindingResult winding = winding_count(xi, rect, config);
  const Region& contour = winding.contour;
  auto zeros = scan_rectangle(xi.l(), contour, config.grid_spacing, ZeroMethod::GridNewton, config);
  if (static_cast<int>(zeros.size()) == winding.count) return zeros;
  zeros = scan_rectangle(xi.l(), contour, config.retry_spacing, ZeroMethod::ArgumentPrincipleRefined, config);
  if (static_cast<int>(zeros.size()) == winding.count) return zeros;
  throw ConvergenceError("locate_zeros: found " + std::to_string(zeros.size()) + " zeros but the winding number is " +
                         std::to_string(winding.count) + " (q=" + std::to_string(chi.modulus()) +
                         ", conrey=" + std::to_string(chi.conrey_label()) + ")");
}

HadamardCheck hadamard_ratio_check(const dirichlet::Character& chi, double lambda, double t,
                                   std::span<const ZeroRecord> zeros, double t_cover, double lemma_constant,
                                   double density_c) {
  if (!chi.is_primitive()) throw DomainError("hadamard_ratio_check requires a primitive character");
  if (!(lambda > 0.0 && lambda <= 0.5)) throw DomainError("hadamard_ratio_check: lambda must lie in (0, 1/2]");
  const double q = static_cast<double>(chi.modulus());
  const cplx s0(1.0 + lambda, t);
  const cplx s1(1.0 - lambda, t);
  const lfunction::LEvaluator L(chi);
  const double abs_l1 = std::abs(L(s1).value);
  const double abs_l0 = std::abs(L(s0).value);

  HadamardCheck out;
  out.lhs = abs_l1 / abs_l0;
  std::vector<double> log_terms;
  std::vector<double> lemma_terms;
  for (const auto& z : zeros) {
    if (std::abs(z.gamma - t) > t_cover) continue;
    log_terms.push_back(std::log(std::abs(s1 - z.rho())) - std::log(std::abs(s0 - z.rho())));
    lemma_terms.push_back(2.0 * lambda * lambda / std::norm(s0 - z.rho()));
  }
  out.zeros_used = log_terms.size();
  const double log_rhs = lambda * std::log(q * (1.0 + std::abs(t))) + numeric::pairwise_sum(log_terms);
  out.rhs = std::exp(log_rhs);
  out.log_gap = std::abs(std::log(out.lhs) - log_rhs);
  out.tail_bound = std::isfinite(t_cover)
                       ? lfunction::zero_density_tail(density_c, q, t, t_cover,
                                                      [lambda](double d) { return 2.0 * lambda / (d * d); })
                       : 0.0;
  out.coverage_ok = t_cover >= std::abs(t) + 20.0;
  out.lemma_lhs = abs_l1;
  out.lemma_bound = std::exp(numeric::pairwise_sum(lemma_terms)) / lambda;
  out.lemma_constant = lemma_constant;
  out.lemma_ok = abs_l1 <= lemma_constant * out.lemma_bound;
  return out;
}

Prop34Value prop34_functional(std::uint64_t q, double lambda, double phi, double xi_shift,
                              std::span<const ZeroRecord> zeros, double t_cover, double density_c) {
  if (!(lambda > 0.0)) throw DomainError("prop34_functional: lambda must be positive");
  const double height = phi + xi_shift;
  const cplx s(1.0 + lambda, height);
  std::vector<double> terms;
  for (const auto& z : zeros) {
    if (std::abs(z.gamma - height) > t_cover) continue;
    terms.push_back(lambda / std::norm(s - z.rho()));
  }
  Prop34Value out;
  out.zeros_used = terms.size();
  out.sum = numeric::pairwise_sum(terms);
  out.tail_bound = std::isfinite(t_cover)
                       ? lfunction::zero_density_tail(density_c, static_cast<double>(q), height, t_cover,
                                                      [lambda](double d) { return lambda / (d * d); })
                       : 0.0;
  out.total = out.sum + out.tail_bound;
  out.coverage_ok = t_cover > 0.0;
  return out;
}

int threshold_360(double L) { return static_cast<int>(std::ceil(L / 360.0)); }
int threshold_400(double L) { return static_cast<int>(std::ceil(L / 400.0)); }

int count_zeros_in_disk(const dirichlet::Character& chi, const Region& disk, const ZeroSearchConfig& config) {
  if (disk.kind != Region::Kind::Disk) throw DomainError("count_zeros_in_disk expects a disk");
  const Region box = disk.bounding_rectangle();
  const double sigma1 = std::max(box.sigma1, -0.02);
  const double sigma2 = std::min(box.sigma2, 1.02);
  if (!(sigma1 < sigma2)) return 0;
  const Region clipped = Region::rectangle(sigma1, sigma2, box.t1, box.t2);
  require_in_window(lfunction::Window{}, clipped);
  const auto zeros = locate_zeros(chi, clipped, config);
  return static_cast<int>(std::count_if(zeros.begin(), zeros.end(),
                                        [&](const ZeroRecord& z) { return disk.contains(z.rho()); }));
}

DiskAudit disk_count_audit(const dirichlet::Character& chi, double x, double L, const DiskAuditConfig& config) {
  if (!(x > 1.0)) throw DomainError("disk_count_audit: requires x > 1");
  if (!(L > 0.0)) throw DomainError("disk_count_audit: L must be positive");
  require_zero_search_character(chi);
  DiskAudit out;
  out.q = chi.modulus();
  out.conrey = chi.conrey_label();
  out.x = x;
  out.L = L;
  out.abs_S = std::abs(dirichlet::partial_sum(chi, x).value);
  out.N = out.abs_S > 0.0 ? x / out.abs_S : std::numeric_limits<double>::infinity();

  const auto f = multfn::from_character(chi.modulus(), chi.conrey_label(), static_cast<std::uint64_t>(std::ceil(x)));
  const auto data = multfn::find_phi_and_M(f, x);
  out.phi = data.phi;
  out.M = data.M;

  const double q = static_cast<double>(chi.modulus());
  const double log_x = std::log(x);
  out.center = cplx(1.0, out.phi);
  out.radius = L * std::log(q) / (log_x * log_x);
  out.threshold_360 = threshold_360(L);
  out.threshold_400 = threshold_400(L);

  const auto k = static_cast<double>(chi.order());
  out.x_range_ok = std::exp(std::sqrt(std::log(q))) <= x && x <= std::sqrt(q);
  out.n_range_ok = out.N >= 1.0 && out.N <= std::pow(log_x, 0.01);
  out.l_range_ok_360 = log_x / 2.0 >= L && L >= config.c * std::pow(out.N, 6.0);
  out.l_range_ok_400 = log_x / 2.0 >= L && L >= std::pow(config.c * out.N, 2.0 * k * k);
  out.vacuous = !(out.x_range_ok && out.n_range_ok && (out.l_range_ok_360 || out.l_range_ok_400));

  out.count = count_zeros_in_disk(chi, Region::disk(out.center, out.radius), config.search);
  out.meets_360 = out.count >= out.threshold_360;
  out.meets_400 = out.count >= out.threshold_400;
  return out;
}

}  // namespace charzero::zeros
