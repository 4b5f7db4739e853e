#include <gtest/gtest.h>

#include <cmath>

#include "charzero/dirichlet.hpp"
#include "charzero/error.hpp"
#include "charzero/lfunction.hpp"
#include "charzero/zeros.hpp"
#include "oracles.hpp"

using namespace charzero;

TEST(Zeros, FirstZeroOfChi4) {
  const auto chi = dirichlet::character(4, 3);
  const auto zs = zeros::locate_zeros(chi, zeros::Region::rectangle(0.0, 1.0, 0.0, 30.0));
  ASSERT_FALSE(zs.empty());
  EXPECT_NEAR(zs.front().beta, 0.5, 1e-6);
  EXPECT_NEAR(zs.front().gamma, 6.020948904697597, 1e-8);
  EXPECT_EQ(zs.size(), 10u);
  for (const auto& z : zs) EXPECT_LE(z.residual, 1e-10);
}

TEST(Zeros, LocatedCountMatchesWinding) {
  for (std::uint64_t q : {5u, 7u, 11u}) {
    for (const auto& chi : dirichlet::primitive_characters(q)) {
      if (chi.is_principal()) continue;
      const auto rect = zeros::Region::rectangle(0.0, 1.0, -15.0, 15.0);
      const auto zs = zeros::locate_zeros(chi, rect);
      EXPECT_EQ(static_cast<int>(zs.size()), zeros::count_zeros_argument_principle(chi, rect));
      for (const auto& z : zs) {
        EXPECT_NEAR(z.beta, 0.5, 1e-6);
        EXPECT_LE(std::abs(lfunction::L_value(chi, z.rho()).value), 1e-9);
      }
    }
  }
}

TEST(Zeros, SortedCanonically) {
  const auto zs = zeros::locate_zeros(dirichlet::character(13, 2), zeros::Region::rectangle(0.0, 1.0, -20.0, 20.0));
  for (std::size_t i = 1; i < zs.size(); ++i) EXPECT_LE(zs[i - 1].gamma, zs[i].gamma);
}

TEST(Zeros, ZeroFreeRectangle) {
  const auto chi = dirichlet::character(5, 2);
  EXPECT_EQ(zeros::count_zeros_argument_principle(chi, zeros::Region::rectangle(0.75, 1.02, -0.25, 0.25)), 0);
}

TEST(Zeros, DensityBound) {
  for (std::uint64_t q : {3u, 17u, 97u}) {
    for (const auto& chi : dirichlet::primitive_characters(q)) {
      if (chi.is_principal()) continue;
      for (double T : {0.0, 10.0, 19.0}) {
        const int n = zeros::count_zeros_argument_principle(chi, zeros::Region::rectangle(0.0, 1.0, T, T + 1.0));
        EXPECT_LE(n, 3.0 + std::log(q * (2.0 + T)));
      }
      break;
    }
  }
}

TEST(Zeros, Errors) {
  EXPECT_THROW(zeros::locate_zeros(dirichlet::character(5, 1), zeros::Region::rectangle(0, 1, 0, 10)), DomainError);
  EXPECT_THROW(zeros::locate_zeros(dirichlet::character(5, 2), zeros::Region::rectangle(0, 1, 0, 80)), RangeError);
}

TEST(Hadamard, LogGapSmall) {
  const auto chi = dirichlet::character(4, 3);
  const auto zs = zeros::locate_zeros(chi, zeros::Region::rectangle(0.0, 1.0, -50.0, 50.0));
  for (double t : {0.0, 10.0, 30.0}) {
    const auto h = zeros::hadamard_ratio_check(chi, 0.25, t, zs, 50.0);
    EXPECT_TRUE(h.coverage_ok);
    EXPECT_LE(std::abs(h.log_gap), 2.0) << t;
    EXPECT_TRUE(h.lemma_ok) << t;
  }
}

TEST(Prop34, MatchesReversedSummation) {
  const auto chi = dirichlet::character(4, 3);
  const auto zs = zeros::locate_zeros(chi, zeros::Region::rectangle(0.0, 1.0, -50.0, 50.0));
  const auto v = zeros::prop34_functional(4, 0.25, 0.0, 0.0, zs);
  EXPECT_NEAR(v.sum, oracle::prop34_reversed(0.25, 0.0, 0.0, zs), 1e-12);
  EXPECT_EQ(v.tail_bound, 0.0);
}

TEST(Prop34, SingleSyntheticZero) {
  ZeroRecord z;
  z.beta = 0.5;
  z.gamma = 0.0;
  const std::vector<ZeroRecord> one{z};
  const auto v = zeros::prop34_functional(4, 0.2, 1.0, 0.5, one);
  EXPECT_NEAR(v.sum, 0.2 / std::norm(oracle::cplx(0.5 + 0.2, 1.5)), 1e-15);
  EXPECT_EQ(zeros::prop34_functional(4, 0.2, 0.0, 0.0, {}).total, 0.0);
}

TEST(DiskAudit, ThresholdsAndVacuity) {
  EXPECT_EQ(zeros::threshold_360(360), 1);
  EXPECT_EQ(zeros::threshold_400(400), 1);
  EXPECT_EQ(zeros::threshold_360(361), 2);
  const auto chi = dirichlet::character(5, 2);
  const double x = std::sqrt(5.0);
  const auto a = zeros::disk_count_audit(chi, x, std::log(x) / 2.0);
  EXPECT_EQ(a.count, 0);
  EXPECT_TRUE(a.vacuous);
}

TEST(DiskAudit, LargeDiskEqualsRectangleCount) {
  const auto chi = dirichlet::character(5, 2);
  const auto disk = zeros::Region::disk({0.5, 0.0}, 12.0);
  const int in_disk = zeros::count_zeros_in_disk(chi, disk);
  const auto zs = zeros::locate_zeros(chi, zeros::Region::rectangle(0.0, 1.0, -12.0, 12.0));
  int expected = 0;
  for (const auto& z : zs) expected += disk.contains(z.rho()) ? 1 : 0;
  EXPECT_EQ(in_disk, expected);
  EXPECT_THROW(zeros::disk_count_audit(chi, 2.23, 360.0), RangeError);
}
