#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "charzero/numeric.hpp"
#include "charzero/primes.hpp"

namespace charzero::dirichlet {

/// Canonical generators of (Z/qZ)^*: one per odd prime power (its least
/// primitive root), -1 for 4 | q, and (-1, 5) for 8 | q.
struct UnitGroupBasis {
  std::uint64_t modulus = 1;
  std::vector<std::pair<std::uint64_t, int>> factors;
  /// Generator residues, reduced mod their prime-power component.
  std::vector<std::uint64_t> generators;
  /// Prime-power modulus each generator lives in.
  std::vector<std::uint64_t> component_moduli;
  std::vector<std::uint64_t> generator_orders;
  /// CRT lift of each generator to a residue mod q (1 on the other components).
  std::vector<std::uint64_t> lifted_generators;

  std::uint64_t group_order() const;
};

UnitGroupBasis unit_group_basis(std::uint64_t q,
                                std::uint64_t sieve_limit = primes::kDefaultSieveLimit);

/// Character value e(num/den) as an exact fraction of a full turn.
struct RationalAngle {
  std::uint64_t num = 0;
  std::uint64_t den = 1;
  friend bool operator==(const RationalAngle&, const RationalAngle&) = default;
};

struct CharacterInvariants {
  std::uint64_t order = 1;
  int parity = 0;
  std::uint64_t conductor = 1;
  bool is_primitive = false;
};

namespace detail {
struct UnitGroup;
}

/// A Dirichlet character mod q, identified by its Conrey label. Immutable.
class Character {
 public:
  std::uint64_t modulus() const;
  std::uint64_t conrey_label() const { return label_; }
  std::span<const std::uint64_t> exponents() const { return exponents_; }
  std::uint64_t order() const { return order_; }
  /// (1 - chi(-1)) / 2.
  int parity() const { return parity_; }
  std::uint64_t conductor() const { return conductor_; }
  bool is_primitive() const { return conductor_ == modulus(); }
  bool is_principal() const { return order_ == 1; }
  bool is_real() const { return order_ <= 2; }
  const UnitGroupBasis& basis() const;

  /// chi(n) as a rational angle with denominator order(); nullopt iff gcd(n, q) > 1.
  std::optional<RationalAngle> angle(std::int64_t n) const;
  /// chi(n) as a complex number (exact for real characters).
  cplx operator()(std::int64_t n) const;
  /// Angle numerator (mod order) of chi(r) for a residue 0 <= r < q, -1 off the units.
  std::int64_t angle_numerator(std::uint64_t r) const { return (*table_)[r]; }
  /// e(j / order()) for 0 <= j < order(); conjugate-symmetric by construction.
  cplx root(std::uint64_t j) const { return (*roots_)[j]; }

  Character conjugate() const;

 private:
  friend Character make_character(std::shared_ptr<const detail::UnitGroup>, std::uint64_t);
  Character() = default;

  std::shared_ptr<const detail::UnitGroup> group_;
  std::uint64_t label_ = 1;
  std::vector<std::uint64_t> exponents_;
  std::uint64_t order_ = 1;
  int parity_ = 0;
  std::uint64_t conductor_ = 1;
  std::shared_ptr<const std::vector<std::int32_t>> table_;
  std::shared_ptr<const std::vector<cplx>> roots_;
};

/// The character with Conrey label `conrey` mod q (gcd(conrey, q) must be 1).
Character character(std::uint64_t q, std::uint64_t conrey);

/// All phi(q) characters mod q in ascending Conrey label.
std::vector<Character> enumerate_characters(std::uint64_t q);

/// Primitive characters mod q only (same order).
std::vector<Character> primitive_characters(std::uint64_t q);

/// The Legendre symbol (. | p) for an odd prime p.
Character legendre_character(std::uint64_t p);

CharacterInvariants character_invariants(const Character& chi);

/// Smallest d | q such that chi is trivial on {n = 1 mod d, gcd(n, q) = 1}.
std::uint64_t brute_force_conductor(const Character& chi);

/// chi(n) in exact angle form plus its complex rendering.
struct CharacterValue {
  std::optional<RationalAngle> angle;
  cplx value;
};
CharacterValue evaluate(const Character& chi, std::int64_t n);

struct PartialSum {
  double x = 0.0;
  cplx value;
  double phi = 0.0;
  /// x / |value|, present when phi == 0 and value != 0.
  std::optional<double> N;
};

/// S(x, chi) = sum_{n <= x} chi(n), exact class counts combined pairwise.
PartialSum partial_sum(const Character& chi, double x);

/// sum_{n <= x} chi(n) n^{-i phi}; identical to partial_sum when phi == 0.
PartialSum twisted_partial_sum(const Character& chi, double phi, double x);

}  // namespace charzero::dirichlet
