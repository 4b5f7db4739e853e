#include "charzero/multfn.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <mutex>
#include <random>
#include <string>

#include "charzero/dirichlet.hpp"
#include "charzero/error.hpp"
#include "charzero/parallel.hpp"
#include "charzero/primes.hpp"

namespace charzero::multfn {

namespace {

std::shared_ptr<const std::vector<std::uint32_t>> spf_table(std::uint64_t n) {
  static std::mutex mutex;
  static std::shared_ptr<const std::vector<std::uint32_t>> cached;
  std::lock_guard lock(mutex);
  if (!cached || cached->size() <= n) {
    if (n > std::numeric_limits<std::uint32_t>::max() - 1) {
      throw RangeError("multiplicative table size exceeds 32-bit range");
    }
    std::uint64_t target = std::max<std::uint64_t>(n, 1u << 16);
    if (cached) target = std::max<std::uint64_t>(target, 2 * (cached->size() - 1));
    cached = std::make_shared<const std::vector<std::uint32_t>>(
        primes::smallest_prime_factors(static_cast<std::uint32_t>(target)));
  }
  return cached;
}

void check_x(const CMF& f, double x, const char* where) {
  if (!(x >= 0.0) || x > static_cast<double>(f.sieve_limit())) {
    throw RangeError(std::string(where) + ": x exceeds the sieve limit of " + f.name());
  }
}

double parse_double(std::string_view text, std::string_view spec) {
  try {
    std::size_t used = 0;
    const std::string s(text);
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw DomainError("bad function spec '" + std::string(spec) + "'");
  }
}

std::uint64_t parse_u64(std::string_view text, std::string_view spec) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw DomainError("bad function spec '" + std::string(spec) + "'");
  }
  return v;
}

/// log|F(sigma + i t_j)| for t_j = sign * j * h, j = 0 .. count-1.
std::vector<double> log_abs_F_ray(const CMF& f, double x, double sigma, double h, double sign,
                                  std::size_t count) {
  const auto ps = f.primes();
  const std::size_t n_primes =
      static_cast<std::size_t>(std::upper_bound(ps.begin(), ps.end(), x) - ps.begin());
  constexpr std::size_t kChunk = 256;
  constexpr std::size_t kLogEvery = 32;
  constexpr std::size_t kReseed = 64;
  const std::size_t chunks = (n_primes + kChunk - 1) / kChunk;
  std::vector<std::vector<double>> partial(chunks);

  parallel_for(chunks, [&](std::size_t c) {
    std::vector<double> acc(count, 0.0);
    std::vector<double> prod(count, 1.0);
    const std::size_t lo = c * kChunk;
    const std::size_t hi = std::min(n_primes, lo + kChunk);
    for (std::size_t i = lo; i < hi; ++i) {
      const double logp = std::log(static_cast<double>(ps[i]));
      const cplx a = f.prime_value(i) * std::exp(-sigma * logp);
      const cplx rot = std::polar(1.0, -sign * h * logp);
      cplx z;
      for (std::size_t j = 0; j < count; ++j) {
        if (j % kReseed == 0) z = a * std::polar(1.0, -sign * h * static_cast<double>(j) * logp);
        const double re = 1.0 - z.real();
        const double im = z.imag();
        prod[j] *= re * re + im * im;
        z *= rot;
      }
      if ((i - lo + 1) % kLogEvery == 0 || i + 1 == hi) {
        for (std::size_t j = 0; j < count; ++j) {
          acc[j] += std::log(prod[j]);
          prod[j] = 1.0;
        }
      }
    }
    partial[c] = std::move(acc);
  });

  std::vector<double> out(count, 0.0);
  std::vector<double> column(chunks);
  for (std::size_t j = 0; j < count; ++j) {
    for (std::size_t c = 0; c < chunks; ++c) column[c] = partial[c][j];
    out[j] = -0.5 * numeric::pairwise_sum(column);
  }
  return out;
}

}  // namespace

CompletelyMultiplicativeFunction::CompletelyMultiplicativeFunction(std::uint64_t limit,
                                                                   const PrimeRule& rule,
                                                                   std::string name)
    : limit_(limit), name_(std::move(name)) {
  if (limit < 1) throw DomainError("CompletelyMultiplicativeFunction: limit must be >= 1");
  prime_owner_ = primes::prime_list(limit);
  primes_ = prime_owner_->up_to(limit);
  auto table = std::make_shared<std::vector<cplx>>();
  table->reserve(primes_.size());
  for (std::uint32_t p : primes_) {
    const cplx v = rule(p);
    if (std::abs(v) > 1.0 + 1e-12) throw DomainError("CompletelyMultiplicativeFunction: |f(p)| > 1");
    table->push_back(v);
  }
  base_ = std::move(table);
}

cplx CompletelyMultiplicativeFunction::prime_value(std::size_t i) const {
  const cplx v = (*base_)[i];
  if (twist_ == 0.0) return v;
  return v * std::polar(1.0, -twist_ * std::log(static_cast<double>(primes_[i])));
}

cplx CompletelyMultiplicativeFunction::at_prime(std::uint64_t p) const {
  if (p > limit_) throw RangeError("at_prime: p exceeds the sieve limit");
  const auto it = std::lower_bound(primes_.begin(), primes_.end(), p);
  if (it == primes_.end() || *it != p) throw DomainError("at_prime: argument is not prime");
  return prime_value(static_cast<std::size_t>(it - primes_.begin()));
}

cplx CompletelyMultiplicativeFunction::operator()(std::uint64_t n) const {
  if (n == 0 || n > limit_) throw RangeError("f(n): n outside [1, sieve limit]");
  cplx v(1.0, 0.0);
  for (const auto& [p, e] : primes::factorize(n)) {
    const cplx fp = at_prime(p);
    for (int k = 0; k < e; ++k) v *= fp;
  }
  return v;
}

std::vector<cplx> CompletelyMultiplicativeFunction::values(std::uint64_t n_max) const {
  if (n_max > limit_) throw RangeError("values: n_max exceeds the sieve limit of " + name_);
  std::vector<cplx> out(n_max + 1, cplx(0.0, 0.0));
  if (n_max >= 1) out[1] = 1.0;
  if (n_max < 2) return out;
  const auto spf = spf_table(n_max);
  std::size_t prime_index = 0;
  for (std::uint64_t n = 2; n <= n_max; ++n) {
    const std::uint32_t p = (*spf)[n];
    if (p == n) {
      out[n] = prime_value(prime_index++);
    } else {
      out[n] = out[p] * out[n / p];
    }
  }
  return out;
}

CompletelyMultiplicativeFunction CompletelyMultiplicativeFunction::twisted(double phi) const {
  CompletelyMultiplicativeFunction g = *this;
  g.twist_ = twist_ + phi;
  return g;
}

CompletelyMultiplicativeFunction CompletelyMultiplicativeFunction::times(
    const CompletelyMultiplicativeFunction& g) const {
  const std::uint64_t limit = std::min(limit_, g.limit_);
  CompletelyMultiplicativeFunction out;
  out.limit_ = limit;
  out.name_ = name_ + "*" + g.name_;
  out.prime_owner_ = prime_owner_;
  out.primes_ = prime_owner_->up_to(limit);
  auto table = std::make_shared<std::vector<cplx>>();
  table->reserve(out.primes_.size());
  for (std::size_t i = 0; i < out.primes_.size(); ++i) table->push_back(prime_value(i) * g.prime_value(i));
  out.base_ = std::move(table);
  return out;
}

CompletelyMultiplicativeFunction CompletelyMultiplicativeFunction::power(int k) const {
  if (k < 0) throw DomainError("power: exponent must be >= 0");
  CompletelyMultiplicativeFunction out;
  out.limit_ = limit_;
  out.name_ = name_ + "^" + std::to_string(k);
  out.prime_owner_ = prime_owner_;
  out.primes_ = primes_;
  auto table = std::make_shared<std::vector<cplx>>();
  table->reserve(primes_.size());
  for (std::size_t i = 0; i < primes_.size(); ++i) {
    const cplx v = prime_value(i);
    cplx acc(1.0, 0.0);
    for (int j = 0; j < k; ++j) acc *= v;
    table->push_back(acc);
  }
  out.base_ = std::move(table);
  return out;
}

CMF constant_one(std::uint64_t limit) {
  return CMF(limit, [](std::uint32_t) { return cplx(1.0, 0.0); }, "one");
}

CMF n_to_i(double alpha, std::uint64_t limit) {
  return CMF(
      limit, [alpha](std::uint32_t p) { return std::polar(1.0, alpha * std::log(static_cast<double>(p))); },
      "ntoi:" + std::to_string(alpha));
}

CMF from_character(std::uint64_t q, std::uint64_t conrey, std::uint64_t limit) {
  const dirichlet::Character chi = dirichlet::character(q, conrey);
  return CMF(
      limit, [&chi](std::uint32_t p) { return chi(static_cast<std::int64_t>(p)); },
      "char:" + std::to_string(q) + "." + std::to_string(conrey));
}

CMF random_pm(std::uint64_t seed, std::uint64_t limit) {
  std::mt19937_64 gen(seed);
  return CMF(
      limit, [&gen](std::uint32_t) { return cplx((gen() >> 63) != 0 ? 1.0 : -1.0, 0.0); },
      "randpm:" + std::to_string(seed));
}

CMF parse_function(std::string_view spec, std::uint64_t limit) {
  if (spec == "one") return constant_one(limit);
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) throw DomainError("bad function spec '" + std::string(spec) + "'");
  const std::string_view kind = spec.substr(0, colon);
  const std::string_view arg = spec.substr(colon + 1);
  if (kind == "ntoi") return n_to_i(parse_double(arg, spec), limit);
  if (kind == "randpm") return random_pm(parse_u64(arg, spec), limit);
  if (kind == "char") {
    const auto dot = arg.find('.');
    if (dot == std::string_view::npos) throw DomainError("bad function spec '" + std::string(spec) + "'");
    return from_character(parse_u64(arg.substr(0, dot), spec), parse_u64(arg.substr(dot + 1), spec), limit);
  }
  throw DomainError("unknown function kind in spec '" + std::string(spec) + "'");
}

double distance_sq(const CMF& f, const CMF& g, double x) {
  check_x(f, x, "distance_sq");
  check_x(g, x, "distance_sq");
  const auto ps = f.primes();
  const auto end = std::upper_bound(ps.begin(), ps.end(), x);
  std::vector<double> terms(static_cast<std::size_t>(end - ps.begin()));
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const cplx a = f.prime_value(i);
    const cplx b = g.prime_value(i);
    terms[i] = (1.0 - (a.real() * b.real() + a.imag() * b.imag())) / static_cast<double>(ps[i]);
  }
  return numeric::pairwise_sum(terms);
}

Bounded<cplx> truncated_F(const CMF& f, cplx s, std::uint64_t n_max) {
  const double sigma = s.real();
  if (!(sigma > 1.0)) throw DomainError("truncated_F: requires Re s > 1");
  const auto vals = f.values(n_max);
  Bounded<cplx> out;
  out.value = blocked_pairwise_sum<cplx>(n_max, [&](std::size_t i) {
    const cplx v = vals[i + 1];
    if (v == cplx(0.0, 0.0)) return v;
    return v * std::exp(-s * std::log(static_cast<double>(i + 1)));
  });
  out.err_bound = std::pow(static_cast<double>(n_max), 1.0 - sigma) / (sigma - 1.0);
  return out;
}

double log_abs_euler_product(const CMF& f, double x, cplx s) {
  check_x(f, x, "log_abs_euler_product");
  const auto ps = f.primes();
  const auto n = static_cast<std::size_t>(std::upper_bound(ps.begin(), ps.end(), x) - ps.begin());
  std::vector<double> terms(n);
  for (std::size_t i = 0; i < n; ++i) {
    const cplx z = f.prime_value(i) * std::exp(-s * std::log(static_cast<double>(ps[i])));
    terms[i] = -std::log(std::abs(1.0 - z));
  }
  return numeric::pairwise_sum(terms);
}

cplx mean_value(const CMF& f, double y) {
  check_x(f, y, "mean_value");
  if (y < 1.0) return {0.0, 0.0};
  const auto n = static_cast<std::uint64_t>(std::floor(y));
  const auto vals = f.values(n);
  return numeric::pairwise_sum(std::span<const cplx>(vals).subspan(1)) / y;
}

HalaszData find_phi_and_M(const CMF& f, double x) {
  if (!(x > 1.0)) throw DomainError("find_phi_and_M: requires x > 1");
  check_x(f, x, "find_phi_and_M");
  const double log_x = std::log(x);
  const double sigma = 1.0 + 1.0 / log_x;
  const double h = 1.0 / (10.0 * log_x);
  const auto half = static_cast<std::size_t>(std::floor(log_x / h + 1e-9));

  const auto pos = log_abs_F_ray(f, x, sigma, h, 1.0, half + 1);
  const auto neg = log_abs_F_ray(f, x, sigma, h, -1.0, half + 1);

  HalaszData out;
  out.x = x;
  out.grid_trace.reserve(2 * half + 1);
  for (std::size_t j = half; j >= 1; --j) {
    out.grid_trace.emplace_back(-static_cast<double>(j) * h, std::exp(neg[j]));
  }
  for (std::size_t j = 0; j <= half; ++j) out.grid_trace.emplace_back(static_cast<double>(j) * h, std::exp(pos[j]));

  double best_t = 0.0;
  double best_v = -std::numeric_limits<double>::infinity();
  auto consider = [&](double t, double v) {
    const bool better = v > best_v || (v == best_v && (std::abs(t) < std::abs(best_t) ||
                                                       (std::abs(t) == std::abs(best_t) && t < best_t)));
    if (better) {
      best_v = v;
      best_t = t;
    }
  };
  for (std::size_t j = 0; j <= half; ++j) {
    consider(static_cast<double>(j) * h, pos[j]);
    if (j > 0) consider(-static_cast<double>(j) * h, neg[j]);
  }

  auto g = [&](double t) { return log_abs_euler_product(f, x, cplx(sigma, t)); };
  const double lo = std::max(-log_x, best_t - h);
  const double hi = std::min(log_x, best_t + h);
  const double refined = numeric::golden_section_max(g, lo, hi, 1e-6);
  const double at_grid = g(best_t);
  const double at_refined = g(refined);
  double phi = best_t;
  double value = at_grid;
  if (at_refined > at_grid) {
    phi = refined;
    value = at_refined;
  }
  out.phi = phi;
  out.abs_F = std::exp(value);
  out.M = distance_sq(f, n_to_i(phi, static_cast<std::uint64_t>(std::ceil(x))), x);
  return out;
}

HalaszBound halasz_bound(const CMF& f, double x) {
  if (!(x > 1.0)) throw DomainError("halasz_bound: requires x > 1");
  const HalaszData data = find_phi_and_M(f, x);
  HalaszBound out;
  out.phi = data.phi;
  out.M = data.M;
  out.observed = std::abs(mean_value(f, x));
  out.main_term = (data.M + 1.0) * std::exp(-data.M) / (1.0 + std::abs(data.phi));
  out.bound = out.main_term + std::pow(std::log(x), -(2.0 - std::sqrt(3.0)));
  out.ratio = out.observed / out.main_term;
  out.bound_ratio = out.observed / out.bound;
  return out;
}

SlowVariation slow_variation_probe(const CMF& f, double x, double z) {
  if (!(x > 1.0)) throw DomainError("slow_variation_probe: requires x > 1");
  if (!(z >= std::sqrt(x) && z <= x * x)) throw DomainError("slow_variation_probe: z outside [sqrt x, x^2]");
  const HalaszData data = find_phi_and_M(f, x);
  const CMF f_phi = f.twisted(data.phi);
  const cplx mean_f = mean_value(f, x);
  const cplx mean_phi_x = mean_value(f_phi, x);
  const cplx mean_phi_z = z == x ? mean_phi_x : mean_value(f_phi, z);
  const cplx x_iphi = std::polar(1.0, data.phi * std::log(x));
  SlowVariation out;
  out.phi = data.phi;
  out.hal2_residual = std::abs(mean_f - x_iphi / cplx(1.0, data.phi) * mean_phi_x);
  out.hal3_delta = std::abs(mean_phi_x - mean_phi_z);
  out.hal3_reference = std::pow((1.0 + std::abs(std::log(x / z))) / std::log(x), 1.0 - 2.0 / kPi);
  return out;
}

Prop61Witness prop61_witness(const CMF& f, double x, double c, std::size_t max_grid_points) {
  if (!(x > 1.0)) throw DomainError("prop61_witness: requires x > 1");
  const HalaszData data = find_phi_and_M(f, x);
  Prop61Witness out;
  out.phi = data.phi;
  out.M = data.M;
  out.lambda = data.M + std::log(1.0 + std::abs(data.phi)) + c;
  const double lel = out.lambda * std::exp(out.lambda);
  out.y_min = std::pow(x, 1.0 / lel);
  if (!(out.lambda > 0.0) || !(out.y_min < x)) throw DomainError("prop61_witness: empty search range");
  const double points = std::ceil(10.0 * lel);
  if (!(points >= 2.0) || points > static_cast<double>(max_grid_points)) {
    throw RangeError("prop61_witness: search grid of " + std::to_string(points) + " points is out of range");
  }
  out.grid_points = static_cast<std::size_t>(points);

  const auto n_max = static_cast<std::uint64_t>(std::floor(x));
  const auto vals = f.values(n_max);
  std::vector<cplx> prefix(vals.size(), cplx(0.0, 0.0));
  cplx sum(0.0, 0.0);
  cplx comp(0.0, 0.0);
  for (std::size_t n = 1; n < vals.size(); ++n) {
    const cplx y = vals[n] - comp;
    const cplx t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    prefix[n] = sum;
  }

  const double log_lo = std::log(out.y_min);
  const double log_hi = std::log(x);
  double best_abs = -1.0;
  for (std::size_t i = 0; i < out.grid_points; ++i) {
    const double y = i + 1 == out.grid_points
                         ? x
                         : std::exp(log_lo + (log_hi - log_lo) * static_cast<double>(i) /
                                                 static_cast<double>(out.grid_points - 1));
    const auto n = static_cast<std::size_t>(std::floor(y));
    const cplx mean = prefix[std::min(n, prefix.size() - 1)] / y;
    const double a = std::abs(mean);
    if (a >= best_abs) {
      best_abs = a;
      out.y = y;
      out.mean = mean;
    }
  }
  out.guarantee = std::exp(-data.M) / std::abs(cplx(1.0, data.phi));
  return out;
}

}  // namespace charzero::multfn
