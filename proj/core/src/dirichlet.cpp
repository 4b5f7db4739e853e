#include "charzero/dirichlet.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <string>
#include <tuple>

#include "charzero/error.hpp"
#include "charzero/parallel.hpp"

namespace charzero::dirichlet {

namespace detail {

struct UnitGroup {
  UnitGroupBasis basis;
  std::uint64_t exponent = 1;  // lcm of generator orders
  // dlog[j][r] = exponent of generator j in r mod component_moduli[j]; -1 off the units.
  std::vector<std::vector<std::int32_t>> dlog;

  std::uint64_t dlog_of(std::size_t j, std::uint64_t n) const {
    return static_cast<std::uint64_t>(dlog[j][n % basis.component_moduli[j]]);
  }
};

}  // namespace detail

namespace {

std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
  std::int64_t r0 = a % m, r1 = m, s0 = 1, s1 = 0;
  if (r0 < 0) r0 += m;
  while (r1 != 0) {
    const std::int64_t quot = r0 / r1;
    std::tie(r0, r1) = std::pair{r1, r0 - quot * r1};
    std::tie(s0, s1) = std::pair{s1, s0 - quot * s1};
  }
  if (r0 != 1) throw DomainError("mod_inverse: not invertible");
  const std::int64_t inv = s0 % m;
  return inv < 0 ? inv + m : inv;
}

bool is_primitive_root(std::uint64_t g, std::uint64_t m, std::uint64_t phi,
                       const std::vector<std::pair<std::uint64_t, int>>& phi_factors) {
  if (std::gcd(g, m) != 1) return false;
  for (auto [r, e] : phi_factors) {
    if (primes::powmod(g, phi / r, m) == 1) return false;
  }
  return true;
}

std::shared_ptr<const detail::UnitGroup> build_group(std::uint64_t q) {
  auto group = std::make_shared<detail::UnitGroup>();
  group->basis = unit_group_basis(q);
  const UnitGroupBasis& b = group->basis;
  group->dlog.resize(b.generators.size());
  for (std::size_t j = 0; j < b.generators.size(); ++j) {
    const std::uint64_t m = b.component_moduli[j];
    auto& table = group->dlog[j];
    table.assign(m, -1);
    if (m % 2 == 0) {
      // 2-power component: generator -1 or 5.
      if (b.generators[j] == m - 1) {
        for (std::uint64_t r = 1; r < m; r += 2) table[r] = (r % 4 == 3) ? 1 : 0;
      } else {
        std::uint64_t v = 1;
        for (std::uint64_t e = 0; e < b.generator_orders[j]; ++e) {
          table[v] = static_cast<std::int32_t>(e);
          table[m - v] = static_cast<std::int32_t>(e);
          v = v * 5 % m;
        }
      }
    } else {
      std::uint64_t v = 1;
      for (std::uint64_t e = 0; e < b.generator_orders[j]; ++e) {
        table[v] = static_cast<std::int32_t>(e);
        v = primes::mulmod(v, b.generators[j], m);
      }
    }
    group->exponent = std::lcm(group->exponent, b.generator_orders[j]);
  }
  return group;
}

std::shared_ptr<const detail::UnitGroup> group_for(std::uint64_t q) {
  static std::mutex mutex;
  static std::map<std::uint64_t, std::shared_ptr<const detail::UnitGroup>> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(q); it != cache.end()) return it->second;
  }
  auto group = build_group(q);
  std::lock_guard lock(mutex);
  if (cache.size() > 256) cache.clear();
  return cache.emplace(q, std::move(group)).first->second;
}

std::shared_ptr<const std::vector<cplx>> roots_of_unity(std::uint64_t k) {
  auto roots = std::make_shared<std::vector<cplx>>(k);
  auto& r = *roots;
  r[0] = 1.0;
  for (std::uint64_t j = 1; 2 * j <= k; ++j) {
    cplx v;
    if (2 * j == k) {
      v = -1.0;
    } else if (4 * j == k) {
      v = cplx(0.0, 1.0);
    } else {
      const double turn = kTwoPi * static_cast<double>(j) / static_cast<double>(k);
      v = cplx(std::cos(turn), std::sin(turn));
    }
    r[j] = v;
    r[k - j] = std::conj(v);
  }
  return roots;
}

}  // namespace

std::uint64_t UnitGroupBasis::group_order() const {
  std::uint64_t n = 1;
  for (auto o : generator_orders) n *= o;
  return n;
}

UnitGroupBasis unit_group_basis(std::uint64_t q, std::uint64_t sieve_limit) {
  if (q == 0) throw DomainError("unit_group_basis: invalid modulus 0");
  if (q > sieve_limit) throw RangeError("unit_group_basis: modulus exceeds sieve limit");
  UnitGroupBasis b;
  b.modulus = q;
  b.factors = primes::factorize(q);

  auto push = [&](std::uint64_t g, std::uint64_t m, std::uint64_t order) {
    b.generators.push_back(g);
    b.component_moduli.push_back(m);
    b.generator_orders.push_back(order);
    const std::uint64_t rest = q / m;
    std::uint64_t lift = g % q;
    if (rest > 1) {
      const auto inv = static_cast<std::uint64_t>(
          mod_inverse(static_cast<std::int64_t>(rest % m), static_cast<std::int64_t>(m)));
      const std::uint64_t t = primes::mulmod((g + m - 1) % m, inv, m);
      lift = (1 + rest * t) % q;
    }
    b.lifted_generators.push_back(lift);
  };

  for (auto [p, e] : b.factors) {
    std::uint64_t m = 1;
    for (int i = 0; i < e; ++i) m *= p;
    if (p == 2) {
      if (e == 2) push(3, 4, 2);
      if (e >= 3) {
        push(m - 1, m, 2);
        push(5, m, m / 4);
      }
      continue;
    }
    const std::uint64_t phi = m / p * (p - 1);
    const auto phi_factors = primes::factorize(phi);
    std::uint64_t g = 2;
    while (!is_primitive_root(g, m, phi, phi_factors)) ++g;
    push(g, m, phi);
  }
  return b;
}

Character make_character(std::shared_ptr<const detail::UnitGroup> group, std::uint64_t label) {
  const std::uint64_t q = group->basis.modulus;
  if (std::gcd(label % q, q) != 1 && q > 1) {
    throw DomainError("character: Conrey label " + std::to_string(label) +
                      " is not coprime to modulus " + std::to_string(q));
  }
  Character chi;
  chi.group_ = group;
  chi.label_ = q == 1 ? 1 : label % q;
  const auto& b = group->basis;
  const std::size_t ngen = b.generators.size();
  chi.exponents_.resize(ngen);
  std::uint64_t order = 1;
  for (std::size_t j = 0; j < ngen; ++j) {
    chi.exponents_[j] = group->dlog_of(j, chi.label_);
    const std::uint64_t o = b.generator_orders[j];
    order = std::lcm(order, o / std::gcd(chi.exponents_[j], o));
  }
  chi.order_ = order;

  const std::uint64_t E = group->exponent;
  const std::uint64_t scale = E / order;
  auto table = std::make_shared<std::vector<std::int32_t>>(q, -1);
  for (std::uint64_t r = 0; r < q; ++r) {
    if (std::gcd(r, q) != 1) continue;
    std::uint64_t num = 0;
    for (std::size_t j = 0; j < ngen; ++j) {
      const std::uint64_t o = b.generator_orders[j];
      const std::uint64_t prod = (chi.exponents_[j] * group->dlog_of(j, r)) % o;
      num = (num + prod * (E / o)) % E;
    }
    (*table)[r] = static_cast<std::int32_t>(num / scale);
  }
  if (q == 1) (*table)[0] = 0;
  chi.table_ = std::move(table);
  chi.roots_ = roots_of_unity(order);

  const std::int64_t minus_one = chi.angle_numerator((q - 1) % q);
  chi.parity_ = (minus_one == 0) ? 0 : 1;
  chi.conductor_ = brute_force_conductor(chi);
  return chi;
}

std::uint64_t Character::modulus() const { return group_->basis.modulus; }

const UnitGroupBasis& Character::basis() const { return group_->basis; }

std::optional<RationalAngle> Character::angle(std::int64_t n) const {
  const auto q = static_cast<std::int64_t>(modulus());
  std::int64_t r = n % q;
  if (r < 0) r += q;
  const std::int64_t num = (*table_)[static_cast<std::size_t>(r)];
  if (num < 0) return std::nullopt;
  return RationalAngle{static_cast<std::uint64_t>(num), order_};
}

cplx Character::operator()(std::int64_t n) const {
  const auto a = angle(n);
  return a ? root(a->num) : cplx(0.0, 0.0);
}

Character Character::conjugate() const {
  const std::uint64_t q = modulus();
  if (q == 1) return *this;
  const auto inv = static_cast<std::uint64_t>(
      mod_inverse(static_cast<std::int64_t>(label_), static_cast<std::int64_t>(q)));
  return make_character(group_, inv);
}

Character character(std::uint64_t q, std::uint64_t conrey) {
  if (q == 0) throw DomainError("character: invalid modulus 0");
  return make_character(group_for(q), conrey);
}

std::vector<Character> enumerate_characters(std::uint64_t q) {
  if (q == 0) throw DomainError("enumerate_characters: invalid modulus 0");
  auto group = group_for(q);
  std::vector<Character> out;
  for (std::uint64_t m = 1; m <= std::max<std::uint64_t>(q, 1); ++m) {
    if (q == 1 || std::gcd(m, q) == 1) out.push_back(make_character(group, m));
    if (q == 1) break;
  }
  return out;
}

std::vector<Character> primitive_characters(std::uint64_t q) {
  std::vector<Character> out;
  for (auto& chi : enumerate_characters(q)) {
    if (chi.is_primitive()) out.push_back(std::move(chi));
  }
  return out;
}

Character legendre_character(std::uint64_t p) {
  if (p < 3 || !primes::is_prime(p)) {
    throw DomainError("legendre_character: modulus " + std::to_string(p) + " is not an odd prime");
  }
  return character(p, p - 1);
}

CharacterInvariants character_invariants(const Character& chi) {
  return {chi.order(), chi.parity(), chi.conductor(), chi.is_primitive()};
}

std::uint64_t brute_force_conductor(const Character& chi) {
  const std::uint64_t q = chi.modulus();
  for (std::uint64_t d : primes::divisors(q)) {
    bool induced = true;
    for (std::uint64_t n = 1; n < q && induced; n += d) {
      if (std::gcd(n, q) != 1) continue;
      if (chi.angle_numerator(n) != 0) induced = false;
    }
    if (induced) return d;
  }
  return q;
}

CharacterValue evaluate(const Character& chi, std::int64_t n) {
  const auto a = chi.angle(n);
  return {a, a ? chi.root(a->num) : cplx(0.0, 0.0)};
}

PartialSum partial_sum(const Character& chi, double x) {
  PartialSum out;
  out.x = x;
  if (!(x >= 1.0)) return out;
  const std::uint64_t q = chi.modulus();
  const std::uint64_t k = chi.order();
  const auto n_max = static_cast<std::uint64_t>(std::floor(x));
  const std::uint64_t periods = n_max / q;
  const std::uint64_t rem = n_max % q;

  std::vector<std::uint64_t> counts(k, 0);
  if (periods > 0) {
    std::vector<std::uint64_t> full(k, 0);
    for (std::uint64_t r = 1; r <= q; ++r) {
      const std::int64_t a = chi.angle_numerator(r % q);
      if (a >= 0) ++full[static_cast<std::size_t>(a)];
    }
    for (std::uint64_t j = 0; j < k; ++j) counts[j] = periods * full[j];
  }
  for (std::uint64_t r = 1; r <= rem; ++r) {
    const std::int64_t a = chi.angle_numerator(r);
    if (a >= 0) ++counts[static_cast<std::size_t>(a)];
  }
  // sum_j e(j/k) = 0 for k > 1, so a common offset can be removed exactly.
  if (k > 1) {
    const std::uint64_t floor_count = *std::min_element(counts.begin(), counts.end());
    for (auto& c : counts) c -= floor_count;
  }
  std::vector<cplx> terms(k);
  for (std::uint64_t j = 0; j < k; ++j) terms[j] = static_cast<double>(counts[j]) * chi.root(j);
  out.value = numeric::pairwise_sum(terms);
  if (std::abs(out.value) > 0.0) out.N = x / std::abs(out.value);
  return out;
}

PartialSum twisted_partial_sum(const Character& chi, double phi, double x) {
  if (phi == 0.0) return partial_sum(chi, x);
  PartialSum out;
  out.x = x;
  out.phi = phi;
  if (!(x >= 1.0)) return out;
  const auto n_max = static_cast<std::size_t>(std::floor(x));
  out.value = blocked_pairwise_sum<cplx>(n_max, [&](std::size_t i) {
    const auto n = static_cast<std::int64_t>(i + 1);
    const cplx c = chi(n);
    if (c == cplx(0.0, 0.0)) return c;
    return c * std::polar(1.0, -phi * std::log(static_cast<double>(n)));
  });
  return out;
}

}  // namespace charzero::dirichlet
