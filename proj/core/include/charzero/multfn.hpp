#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "charzero/numeric.hpp"

namespace charzero::primes {
struct PrimeList;
}

namespace charzero::multfn {

/// Completely multiplicative f with |f(p)| <= 1 given on the primes p <= X.
/// A twist f_phi(n) = f(n) n^{-i phi} is a view on the same prime table.
class CompletelyMultiplicativeFunction {
 public:
  using PrimeRule = std::function<cplx(std::uint32_t)>;

  /// Builds the prime table by calling `rule` on each prime p <= limit in ascending order.
  CompletelyMultiplicativeFunction(std::uint64_t limit, const PrimeRule& rule, std::string name = "f");

  std::uint64_t sieve_limit() const { return limit_; }
  const std::string& name() const { return name_; }
  double twist() const { return twist_; }

  /// Primes p <= X, aligned with prime_value(i).
  std::span<const std::uint32_t> primes() const { return primes_; }
  /// Value at the i-th prime, twist included.
  cplx prime_value(std::size_t i) const;
  /// f(p) for a prime p <= X; throws DomainError when p is not prime.
  cplx at_prime(std::uint64_t p) const;
  /// f(n) for 1 <= n <= X.
  cplx operator()(std::uint64_t n) const;
  /// f(0) = 0, f(1), ..., f(n_max) built multiplicatively.
  std::vector<cplx> values(std::uint64_t n_max) const;

  /// f_phi(n) = f(n) n^{-i phi}; shares the prime table.
  CompletelyMultiplicativeFunction twisted(double phi) const;
  /// Pointwise product on primes (a new table).
  CompletelyMultiplicativeFunction times(const CompletelyMultiplicativeFunction& g) const;
  /// f^k on primes (a new table).
  CompletelyMultiplicativeFunction power(int k) const;

 private:
  CompletelyMultiplicativeFunction() = default;

  std::uint64_t limit_ = 0;
  std::string name_;
  std::span<const std::uint32_t> primes_;
  std::shared_ptr<const primes::PrimeList> prime_owner_;
  std::shared_ptr<const std::vector<cplx>> base_;
  double twist_ = 0.0;
};

using CMF = CompletelyMultiplicativeFunction;

/// Parses `one`, `ntoi:<alpha>`, `char:<q>.<conrey>` or `randpm:<seed>`.
CMF parse_function(std::string_view spec, std::uint64_t limit);

CMF constant_one(std::uint64_t limit);
/// f(p) = p^{i alpha}.
CMF n_to_i(double alpha, std::uint64_t limit);
CMF from_character(std::uint64_t q, std::uint64_t conrey, std::uint64_t limit);
/// Independent uniform +-1 on primes, drawn in ascending prime order from mt19937_64(seed).
CMF random_pm(std::uint64_t seed, std::uint64_t limit);

/// sum_{p <= x} (1 - Re f(p) conj g(p)) / p.
double distance_sq(const CMF& f, const CMF& g, double x);

/// sum_{n <= n_max} f(n) n^{-s} with the tail bound n_max^{1-sigma}/(sigma-1).
Bounded<cplx> truncated_F(const CMF& f, cplx s, std::uint64_t n_max);

/// log |prod_{p <= x} (1 - f(p) p^{-s})^{-1}|.
double log_abs_euler_product(const CMF& f, double x, cplx s);

/// (1/y) sum_{n <= y} f(n).
cplx mean_value(const CMF& f, double y);

struct HalaszData {
  double x = 0.0;
  double phi = 0.0;
  double M = 0.0;
  /// |F(1 + 1/log x + it)| on the search grid.
  std::vector<std::pair<double, double>> grid_trace;
  /// |F| at phi.
  double abs_F = 0.0;
};

/// Maximiser of |F(1 + 1/log x + it)| over |t| <= log x: grid of step
/// 1/(10 log x) then golden-section to 1e-6.
HalaszData find_phi_and_M(const CMF& f, double x);

struct HalaszBound {
  double observed = 0.0;
  /// (M + 1) e^{-M} / (1 + |phi|).
  double main_term = 0.0;
  /// main_term + (log x)^{-(2 - sqrt 3)}.
  double bound = 0.0;
  /// observed / main_term.
  double ratio = 0.0;
  /// observed / bound.
  double bound_ratio = 0.0;
  double phi = 0.0;
  double M = 0.0;
};

HalaszBound halasz_bound(const CMF& f, double x);

struct SlowVariation {
  double hal2_residual = 0.0;
  double hal3_delta = 0.0;
  double hal3_reference = 0.0;
  double phi = 0.0;
};

/// Requires sqrt(x) <= z <= x^2.
SlowVariation slow_variation_probe(const CMF& f, double x, double z);

struct Prop61Witness {
  double y = 0.0;
  cplx mean;
  double guarantee = 0.0;
  double lambda = 0.0;
  double y_min = 0.0;
  std::size_t grid_points = 0;
  double phi = 0.0;
  double M = 0.0;
};

/// Geometric search of 10 lambda e^lambda points in [x^{1/(lambda e^lambda)}, x],
/// lambda = M + log(1 + |phi|) + c. Ties go to the largest y.
Prop61Witness prop61_witness(const CMF& f, double x, double c = 3.0,
                             std::size_t max_grid_points = 2'000'000);

}  // namespace charzero::multfn
