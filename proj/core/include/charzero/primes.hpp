#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <utility>
#include <vector>

namespace charzero::primes {

/// Default ceiling for moduli and prime tables.
inline constexpr std::uint64_t kDefaultSieveLimit = 100'000'000;

/// Primes p <= limit by a segmented Eratosthenes sieve (32 KiB segments).
std::vector<std::uint32_t> segmented_sieve(std::uint64_t limit);

/// Immutable, shareable list of all primes up to `limit`.
struct PrimeList {
  std::uint64_t limit = 0;
  std::vector<std::uint32_t> primes;

  /// Primes p <= x (x <= limit).
  std::span<const std::uint32_t> up_to(std::uint64_t x) const;
};

/// Process-wide cache; returns a list covering at least `limit`.
std::shared_ptr<const PrimeList> prime_list(std::uint64_t limit);

/// Smallest prime factor for 0..limit (spf[0] = spf[1] = 0).
std::vector<std::uint32_t> smallest_prime_factors(std::uint32_t limit);

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// Deterministic Miller-Rabin for 64-bit n.
bool is_prime(std::uint64_t n);

/// Prime factorisation in ascending prime order.
std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n);

std::uint64_t euler_phi(std::uint64_t n);

/// Positive divisors in ascending order.
std::vector<std::uint64_t> divisors(std::uint64_t n);

/// Sum_{n<=cutoff} Lambda(n) n^{-sigma} plus the prime-number-theorem tail
/// estimate -psi(N) N^{-sigma} + sigma N^{1-sigma}/(sigma-1) of the remainder.
struct VonMangoldtSeries {
  double sigma = 0.0;
  std::uint64_t cutoff = 0;
  double partial = 0.0;
  double tail_estimate = 0.0;
  double value() const { return partial + tail_estimate; }
};

VonMangoldtSeries von_mangoldt_series(double sigma, std::uint64_t cutoff);

}  // namespace charzero::primes
