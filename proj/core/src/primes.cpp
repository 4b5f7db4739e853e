#include "charzero/primes.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>

#include "charzero/error.hpp"
#include "charzero/numeric.hpp"

namespace charzero::primes {

std::vector<std::uint32_t> segmented_sieve(std::uint64_t limit) {
  std::vector<std::uint32_t> out;
  if (limit < 2) return out;
  if (limit > 0xFFFFFFFFull) throw RangeError("segmented_sieve: limit exceeds 2^32");

  const auto root = static_cast<std::uint32_t>(std::sqrt(static_cast<double>(limit))) + 1;
  std::vector<char> small(root + 1, 1);
  std::vector<std::uint32_t> base;
  for (std::uint32_t i = 2; i <= root; ++i) {
    if (!small[i]) continue;
    base.push_back(i);
    for (std::uint64_t j = std::uint64_t{i} * i; j <= root; j += i) small[j] = 0;
  }

  const double estimate = limit / std::max(1.0, std::log(static_cast<double>(limit)) - 1.1);
  out.reserve(static_cast<std::size_t>(estimate * 1.05) + 16);

  constexpr std::uint64_t kSegment = 1u << 15;
  std::vector<char> mark(kSegment);
  for (std::uint64_t lo = 2; lo <= limit; lo += kSegment) {
    const std::uint64_t hi = std::min(lo + kSegment - 1, limit);
    std::fill(mark.begin(), mark.end(), 1);
    for (std::uint32_t p : base) {
      const std::uint64_t pp = std::uint64_t{p} * p;
      if (pp > hi) break;
      std::uint64_t start = std::max(pp, (lo + p - 1) / p * p);
      for (std::uint64_t j = start; j <= hi; j += p) mark[j - lo] = 0;
    }
    for (std::uint64_t n = lo; n <= hi; ++n) {
      if (mark[n - lo]) out.push_back(static_cast<std::uint32_t>(n));
    }
  }
  return out;
}

std::span<const std::uint32_t> PrimeList::up_to(std::uint64_t x) const {
  if (x > limit) throw RangeError("PrimeList::up_to: x exceeds sieve limit");
  const auto end = std::upper_bound(primes.begin(), primes.end(), x);
  return {primes.data(), static_cast<std::size_t>(end - primes.begin())};
}

std::shared_ptr<const PrimeList> prime_list(std::uint64_t limit) {
  static std::mutex mutex;
  static std::shared_ptr<const PrimeList> cached;
  std::lock_guard lock(mutex);
  if (!cached || cached->limit < limit) {
    // Grow geometrically so repeated small extensions stay cheap.
    std::uint64_t target = std::max<std::uint64_t>(limit, 1u << 16);
    if (cached) target = std::max(target, std::min<std::uint64_t>(2 * cached->limit, kDefaultSieveLimit));
    target = std::max(target, limit);
    auto fresh = std::make_shared<PrimeList>();
    fresh->limit = target;
    fresh->primes = segmented_sieve(target);
    cached = std::move(fresh);
  }
  return cached;
}

std::vector<std::uint32_t> smallest_prime_factors(std::uint32_t limit) {
  std::vector<std::uint32_t> spf(std::size_t{limit} + 1, 0);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (spf[i] != 0) continue;
    for (std::uint64_t j = i; j <= limit; j += i) {
      if (spf[j] == 0) spf[j] = static_cast<std::uint32_t>(i);
    }
  }
  return spf;
}

__extension__ using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<u128>(a) * b) % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  if (m == 1) return 0;
  std::uint64_t result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1u) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1u;
  }
  return result;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int r = 0;
  while ((d & 1u) == 0) {
    d >>= 1u;
    ++r;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, int>> out;
  for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t result = n;
  for (auto [p, e] : factorize(n)) result = result / p * (p - 1);
  return result;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out{1};
  for (auto [p, e] : factorize(n)) {
    const std::size_t count = out.size();
    std::uint64_t pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < count; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

VonMangoldtSeries von_mangoldt_series(double sigma, std::uint64_t cutoff) {
  if (!(sigma > 1.0)) throw DomainError("von_mangoldt_series: requires sigma > 1");
  auto list = prime_list(cutoff);
  const auto ps = list->up_to(cutoff);

  std::vector<double> terms;
  terms.reserve(ps.size() * 2);
  double psi = 0.0;
  std::vector<double> psi_terms;
  psi_terms.reserve(ps.size() * 2);
  for (std::uint32_t p : ps) {
    const double logp = std::log(static_cast<double>(p));
    for (std::uint64_t pk = p; pk <= cutoff; pk *= p) {
      terms.push_back(logp * std::pow(static_cast<double>(pk), -sigma));
      psi_terms.push_back(logp);
      if (pk > cutoff / p) break;
    }
  }
  psi = numeric::pairwise_sum(psi_terms);

  VonMangoldtSeries out;
  out.sigma = sigma;
  out.cutoff = cutoff;
  out.partial = numeric::pairwise_sum(terms);
  const double n = static_cast<double>(cutoff);
  out.tail_estimate = -psi * std::pow(n, -sigma) + sigma * std::pow(n, 1.0 - sigma) / (sigma - 1.0);
  return out;
}

}  // namespace charzero::primes
