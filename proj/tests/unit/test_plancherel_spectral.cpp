#include <gtest/gtest.h>

#include <cmath>

#include "charzero/dirichlet.hpp"
#include "charzero/error.hpp"
#include "charzero/lfunction.hpp"
#include "charzero/plancherel.hpp"
#include "charzero/spectral.hpp"
#include "oracles.hpp"

using namespace charzero;
using oracle::cplx;

TEST(Plancherel, GaussianTailSingleTerm) {
  const double b = -0.9;
  const double T = 1.0;
  const double closed = plancherel::gaussian_tail_integral(0.0, b, T);
  const double quad = oracle::simpson([&](double y) { return std::exp(b * y - 0.5 * T * y * y); }, 0.0, 40.0, 40000);
  EXPECT_NEAR(closed, quad, 1e-12);
}

TEST(Plancherel, LhsMatchesSegmentQuadrature) {
  for (auto [q, c] : {std::pair<std::uint64_t, std::uint64_t>{5, 2}, {7, 3}, {8, 3}}) {
    const auto chi = dirichlet::character(q, c);
    plancherel::PlancherelCase pc{chi, 0.3, 0.25, 1.0};
    const auto lhs = plancherel::lhs_gaussian_sum(pc);
    EXPECT_NEAR(std::abs(lhs.value - oracle::plancherel_lhs_quadrature(chi, 0.3, 0.25, 1.0)), 0.0, 1e-8);
  }
}

TEST(Plancherel, IdentityHolds) {
  const auto chi = dirichlet::character(11, 2);
  for (double lambda : {0.0, 0.5}) {
    for (double T : {0.25, 4.0}) {
      const auto r = plancherel::plancherel_identity({chi, -1.7, lambda, T});
      EXPECT_LE(r.residual, 1e-6);
    }
  }
}

TEST(Plancherel, Validation) {
  EXPECT_THROW(plancherel::plancherel_identity({dirichlet::character(5, 1), 0.0, 0.1, 1.0}), DomainError);
  EXPECT_THROW(plancherel::plancherel_identity({dirichlet::character(5, 2), 0.0, 0.6, 1.0}), DomainError);
  EXPECT_THROW(plancherel::plancherel_identity({dirichlet::character(5, 2), 0.0, 0.1, 0.0}), DomainError);
}

TEST(Plancherel, GrowthBoundDominates) {
  const auto chi = dirichlet::character(7, 3);
  for (double t : {0.0, 5.0, 40.0}) {
    const cplx s(0.6, t);
    EXPECT_LE(std::abs(lfunction::L_value(chi, s).value), plancherel::l_growth_bound(chi, s));
  }
}

TEST(Spectral, HMatchesSimpson) {
  for (cplx z : {cplx(0.05, 0.02), cplx(-1.0, 8.0), cplx(-3.0, 60.0), cplx(2.0, -1.0)}) {
    EXPECT_NEAR(std::abs(spectral::H_eval(z) - oracle::H_simpson(z)), 0.0, 1e-11) << z;
  }
}

TEST(Spectral, DerivativeMatchesDifference) {
  for (cplx z : {cplx(0.05, 0.0), cplx(-2.0, 20.0)}) {
    const double h = 1e-5;
    const cplx fd = (spectral::H_eval(z + h) - spectral::H_eval(z - h)) / (2.0 * h);
    EXPECT_NEAR(std::abs(spectral::H_derivative(z) - fd), 0.0, 1e-8);
  }
}

TEST(Spectral, FirstZeros) {
  const auto zs = spectral::find_H_zeros(20);
  ASSERT_EQ(zs.size(), 20u);
  for (const auto& z : zs) {
    EXPECT_LE(z.residual, 1e-10);
    EXPECT_LT(z.z.real(), 0.0);
    EXPECT_EQ(z.winding, 1);
  }
  EXPECT_THROW(spectral::find_H_zeros(201), DomainError);
}

TEST(Spectral, DeltaConstants) {
  const auto c = spectral::delta_constants();
  EXPECT_NEAR(c.integral, oracle::delta_integral(), 1e-13);
  EXPECT_NEAR(c.delta0, 0.1715, 1e-4);
  EXPECT_NEAR(c.delta1, -0.656999, 1e-5);
  EXPECT_NEAR(c.delta1, 2.0 * c.delta0 - 1.0, 1e-12);
}

TEST(Spectral, Bounds) {
  const double lo = std::exp(-0.5);
  EXPECT_NEAR(spectral::spectrum_bound(spectral::BoundMode::Cor18, lo), 0.0, 1e-15);
  EXPECT_NEAR(spectral::spectrum_bound(spectral::BoundMode::Cor18, 1.0), spectral::delta_constants().delta0, 1e-15);
  EXPECT_NEAR(spectral::spectrum_bound(spectral::BoundMode::Prop71, lo), 1.0, 1e-15);
  EXPECT_THROW(spectral::spectrum_bound(spectral::BoundMode::Prop71, 0.5), DomainError);
  EXPECT_THROW(spectral::spectrum_bound(spectral::BoundMode::Cor18, 1.1), DomainError);
}
