#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "charzero/dirichlet.hpp"
#include "charzero/error.hpp"
#include "charzero/lfunction.hpp"
#include "charzero/multfn.hpp"
#include "oracles.hpp"

using namespace charzero;
using oracle::cplx;

TEST(Multfn, ValuesAreCompletelyMultiplicative) {
  const auto f = multfn::random_pm(11, 5000);
  const auto v = f.values(5000);
  for (std::uint64_t m = 1; m < 70; ++m) {
    for (std::uint64_t n = 1; n < 70; ++n) EXPECT_EQ(v[m * n], v[m] * v[n]);
  }
  for (std::uint64_t n = 1; n <= 5000; n += 37) EXPECT_EQ(f(n), v[n]);
}

TEST(Multfn, CharacterFunctionMatchesCharacter) {
  const auto chi = dirichlet::character(13, 2);
  const auto f = multfn::from_character(13, 2, 2000);
  for (std::int64_t n = 1; n <= 2000; ++n) EXPECT_NEAR(std::abs(f(n) - chi(n)), 0.0, 1e-12);
}

TEST(Multfn, ParseSpecs) {
  EXPECT_EQ(multfn::parse_function("one", 100)(97), cplx(1.0, 0.0));
  EXPECT_NEAR(std::abs(multfn::parse_function("ntoi:0.5", 100)(6) - std::exp(cplx(0.0, 0.5 * std::log(6.0)))), 0.0,
              1e-14);
  EXPECT_THROW(multfn::parse_function("nonsense", 100), DomainError);
}

TEST(Multfn, TwistIsView) {
  const auto f = multfn::constant_one(1000);
  const auto g = f.twisted(0.7);
  EXPECT_NEAR(std::abs(g(10) - std::exp(cplx(0.0, -0.7 * std::log(10.0)))), 0.0, 1e-14);
  EXPECT_EQ(g.primes().data(), f.primes().data());
}

TEST(Multfn, TruncatedFMatchesLFunction) {
  const auto chi = dirichlet::character(5, 4);
  const auto f = multfn::from_character(5, 4, 200000);
  const auto F = multfn::truncated_F(f, {2.0, 0.0}, 200000);
  EXPECT_NEAR(std::abs(F.value - lfunction::L_value(chi, {2.0, 0.0}).value), 0.0, 1e-10);
}

TEST(Distance, HandValue) {
  const auto one = multfn::constant_one(10);
  const auto chi5 = multfn::from_character(5, 4, 10);
  EXPECT_NEAR(multfn::distance_sq(one, chi5, 10), 1.0 + 2.0 / 3.0 + 1.0 / 5.0 + 2.0 / 7.0, 1e-12);
}

TEST(Distance, SymmetryMonotonicityTriangle) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const auto f = multfn::random_pm(rng(), 20000);
    const auto g = multfn::random_pm(rng(), 20000);
    const auto h = multfn::n_to_i(std::uniform_real_distribution<double>(-2, 2)(rng), 20000);
    EXPECT_EQ(multfn::distance_sq(f, g, 20000), multfn::distance_sq(g, f, 20000));
    EXPECT_GE(multfn::distance_sq(f, g, 20000), 0.0);
    EXPECT_LE(multfn::distance_sq(f, h, 1000), multfn::distance_sq(f, h, 20000));
    const double dfg = std::sqrt(multfn::distance_sq(f, g, 20000));
    const double dgh = std::sqrt(multfn::distance_sq(g, h, 20000));
    const double dfh = std::sqrt(multfn::distance_sq(f, h, 20000));
    EXPECT_LE(dfh, dfg + dgh + 1e-12);
  }
}

TEST(Distance, RangeError) {
  const auto f = multfn::constant_one(100);
  EXPECT_THROW(multfn::distance_sq(f, f, 1000), RangeError);
}

TEST(Halasz, TrivialFunctions) {
  const auto one = multfn::constant_one(100000);
  const auto d = multfn::find_phi_and_M(one, 100000);
  EXPECT_EQ(d.phi, 0.0);
  EXPECT_NEAR(d.M, 0.0, 1e-15);
  const auto ntoi = multfn::n_to_i(0.5, 100000);
  const auto e = multfn::find_phi_and_M(ntoi, 100000);
  EXPECT_NEAR(e.phi, 0.5, 1e-6);
  EXPECT_NEAR(e.M, 0.0, 1e-9);
}

TEST(Halasz, ArgmaxDominatesGrid) {
  const auto f = multfn::from_character(5, 2, 10000);
  const auto d = multfn::find_phi_and_M(f, 10000);
  for (const auto& [t, v] : d.grid_trace) EXPECT_LE(v, d.abs_F * (1.0 + 1e-12)) << t;
  EXPECT_NEAR(d.M, multfn::distance_sq(f, multfn::n_to_i(d.phi, 10000), 10000), 1e-12);
}

TEST(Halasz, RealFunctionPhiTieBreak) {
  // For real f, |F| is even in t; the maximiser is reported with the smallest |t|, negative first.
  const auto f = multfn::random_pm(5, 100000);
  const auto d = multfn::find_phi_and_M(f, 100000);
  EXPECT_LE(d.phi, 0.0);
}

TEST(Halasz, NToIRatio) {
  const auto f = multfn::n_to_i(1.0, 1000000);
  const auto b = multfn::halasz_bound(f, 1e6);
  EXPECT_NEAR(b.observed, 1.0 / std::sqrt(2.0), 1e-3);
  EXPECT_NEAR(b.ratio, std::sqrt(2.0), 0.05);
}

TEST(Halasz, RandomCorpusRatioBounded) {
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    worst = std::max(worst, multfn::halasz_bound(multfn::random_pm(seed, 100000), 1e5).ratio);
  }
  EXPECT_LE(worst, 20.0);
}

TEST(Halasz, LogWindow) {
  for (std::uint64_t seed : {1u, 2u}) {
    const auto f = multfn::random_pm(seed, 100000);
    for (double t : {0.0, 1.3, -4.0}) {
      const double lhs = multfn::log_abs_euler_product(f, 1e5, {1.0 + 1.0 / std::log(1e5), t});
      const double rhs = std::log(std::log(1e5)) - multfn::distance_sq(f, multfn::n_to_i(t, 100000), 1e5);
      EXPECT_LE(std::abs(lhs - rhs), 2.0) << seed << " " << t;
    }
  }
}

TEST(SlowVariation, TrivialCases) {
  const auto one = multfn::constant_one(1000000);
  const auto r = multfn::slow_variation_probe(one, 1e4, 1e4);
  EXPECT_NEAR(r.hal3_delta, 0.0, 1e-15);
  EXPECT_THROW(multfn::slow_variation_probe(one, 1e4, 10.0), DomainError);
  const auto chi = multfn::from_character(5, 2, 100000);
  const auto s = multfn::slow_variation_probe(chi, 1e4, 1e5);
  EXPECT_LE(s.hal3_delta, 10.0 * s.hal3_reference);
}

TEST(Prop61, Witnesses) {
  const auto one = multfn::constant_one(10000);
  const auto w = multfn::prop61_witness(one, 1e4);
  EXPECT_EQ(w.y, 1e4);
  EXPECT_NEAR(std::abs(w.mean), 1.0, 1e-12);
  EXPECT_NEAR(w.guarantee, 1.0, 1e-12);
  const auto ntoi = multfn::n_to_i(1.0, 10000);
  const auto v = multfn::prop61_witness(ntoi, 1e4);
  EXPECT_GE(std::abs(v.mean), 0.5 * v.guarantee);
  const auto chi = multfn::from_character(5, 2, 10000);
  const auto c = multfn::prop61_witness(chi, 1e4);
  EXPECT_GE(std::abs(c.mean), c.guarantee / 50.0);
  EXPECT_GE(c.y, c.y_min);
}
