#include <gtest/gtest.h>

#include <cmath>
#include <json.hpp>
#include <sstream>

#include "charzero/dirichlet.hpp"
#include "charzero/error.hpp"
#include "charzero/harness.hpp"
#include "charzero/report.hpp"
#include "charzero/version.hpp"
#include "charzero/zeros.hpp"

using namespace charzero;

TEST(Config, ParsesKeyValues) {
  std::istringstream in(
      "# comment\n"
      "epsilon = 0.8\n"
      "[audit]\n"
      "q_max = 20   # trailing\n"
      "budget = \"cor3\"\n");
  const auto kv = harness::parse_key_values(in);
  ASSERT_EQ(kv.size(), 3u);
  EXPECT_EQ(kv[1].first, "audit.q_max");
  EXPECT_EQ(kv[1].second, "20");
  EXPECT_EQ(kv[2].second, "cor3");
}

TEST(Config, SetRejectsUnknownKeys) {
  harness::ScenarioConfig c;
  c.set("c_theorem", "2.5");
  EXPECT_EQ(c.c_theorem, 2.5);
  c.set("seed", "0x10");
  EXPECT_EQ(c.seed, 16u);
  EXPECT_THROW(c.set("nope", "1"), DomainError);
  EXPECT_THROW(c.set("epsilon", "abc"), DomainError);
  EXPECT_THROW(c.set("budget", "cor9"), DomainError);
}

TEST(Audit, SmallRangeCor4) {
  harness::ScenarioConfig c;
  c.q_min = 5;
  c.q_max = 5;
  const auto r = harness::corollary_zero_budget_audit(c);
  ASSERT_EQ(r.rows.size(), 3u);
  for (const auto& row : r.rows) {
    EXPECT_EQ(row.q, 5u);
    EXPECT_LT(row.budget, 1.0);
    EXPECT_EQ(row.zero_count, 0);
    EXPECT_TRUE(row.vacuous);
    EXPECT_FALSE(row.conclusion_ok.has_value());
  }
  // Only the quadratic character satisfies the order hypothesis.
  EXPECT_TRUE(r.rows[2].hypothesis_ok);
  EXPECT_FALSE(r.rows[0].hypothesis_ok);
}

TEST(Audit, RegionCountAgreesWithZerosModule) {
  harness::ScenarioConfig c;
  c.q_min = 7;
  c.q_max = 7;
  c.epsilon = 0.9;
  const auto r = harness::corollary_zero_budget_audit(c);
  const auto chars = dirichlet::primitive_characters(7);
  std::size_t i = 0;
  for (const auto& chi : chars) {
    if (chi.is_principal()) continue;
    const auto& row = r.rows[i++];
    const auto rect = zeros::Region::rectangle(row.region_sigma_min, 1.02, -row.region_t_max, row.region_t_max);
    EXPECT_EQ(row.region_zero_count, static_cast<int>(zeros::locate_zeros(chi, rect).size()));
  }
}

TEST(Audit, Cor3Window) {
  harness::ScenarioConfig c;
  c.q_min = 11;
  c.q_max = 11;
  c.budget = harness::BudgetRule::Cor3;
  const auto r = harness::corollary_zero_budget_audit(c);
  for (const auto& row : r.rows) {
    EXPECT_EQ(row.zero_count, 0);
    EXPECT_NEAR(row.predicted_bound, row.x, 1e-12);
  }
}

TEST(Audit, BudgetFormula) {
  harness::ScenarioConfig c;
  c.q_min = c.q_max = 5;
  const auto r = harness::corollary_zero_budget_audit(c);
  EXPECT_NEAR(r.rows[0].budget, 0.81 * std::log(5.0) / 1600.0, 1e-15);
}

TEST(Audit, ReportsAreDeterministicAndEchoConstants) {
  harness::ScenarioConfig c;
  c.q_min = 3;
  c.q_max = 13;
  c.c_theorem = 2.0;
  const auto a = report::audit_json(harness::corollary_zero_budget_audit(c));
  const auto b = report::audit_json(harness::corollary_zero_budget_audit(c));
  EXPECT_EQ(a, b);
  const auto j = nlohmann::ordered_json::parse(a);
  EXPECT_EQ(j["version"], std::string(kVersion));
  EXPECT_EQ(j["config"]["constants"]["c_theorem"], 2.0);
  const auto csv = report::audit_csv(harness::corollary_zero_budget_audit(c));
  EXPECT_NE(csv.find("c_theorem"), std::string::npos);
}

TEST(Census, FullPeriodAndMonotone) {
  for (std::uint64_t q : {3u, 101u, 10007u}) EXPECT_EQ(harness::nonresidue_count(q, q), (q - 1) / 2);
  EXPECT_EQ(harness::nonresidue_count(101, 303.5), 150u);
  std::uint64_t prev = 0;
  for (double u = std::exp(-0.5); u <= 1.0; u += 0.01) {
    const auto r = harness::nonresidue_census(99991, u);
    EXPECT_GE(r.count, prev);
    prev = r.count;
  }
  EXPECT_NEAR(harness::nonresidue_census(101, std::exp(-0.5)).bound, 0.0, 1e-12);
  EXPECT_THROW(harness::nonresidue_census(100, 1.0), DomainError);
  EXPECT_THROW(harness::nonresidue_census(101, 0.5), DomainError);
}

TEST(Census, PrimeSelection) {
  const auto ps = harness::census_primes(10000, 100000, 20);
  ASSERT_EQ(ps.size(), 20u);
  for (auto p : ps) {
    EXPECT_GE(p, 10000u);
    EXPECT_LE(p, 100000u);
  }
}

TEST(ProductSearch, LegendreSquared) {
  const auto f = multfn::from_character(5, 4, 10000);
  const auto r = harness::product_large_sum_search(f, f, 1e4, 1e4, 0.3);
  EXPECT_NEAR(std::abs(multfn::mean_value(f.times(f), 1e4)), 0.8, 1e-3);
  EXPECT_FALSE(r.hypothesis_ok);
  EXPECT_GE(std::abs(r.witness.mean), 0.79);
}

TEST(ProductSearch, ConjugateTwistsGiveOne) {
  const auto f1 = multfn::n_to_i(0.3, 10000);
  const auto f2 = multfn::n_to_i(-0.3, 10000);
  const auto r = harness::product_large_sum_search(f1, f2, 1e4, 1e4, 0.5);
  EXPECT_TRUE(r.hypothesis_ok);
  EXPECT_NEAR(std::abs(r.witness.mean), 1.0, 1e-12);
  EXPECT_TRUE(r.exponent_ok);
  EXPECT_TRUE(r.mean_ok);
}

TEST(PowerSearch, QuarticSquaredIsLegendre) {
  const auto chi = dirichlet::character(13, 2);
  ASSERT_EQ(chi.order(), 12u);
  for (const auto& c : dirichlet::enumerate_characters(13)) {
    if (c.order() != 4) continue;
    const auto f = multfn::from_character(13, c.conrey_label(), 100000);
    const auto r = harness::power_large_sum_search(f, 1e5, 0.01, 2);
    EXPECT_GE(r.witness.y, r.witness.y_min);
    const auto leg = dirichlet::legendre_character(13);
    const auto sq = f.power(2);
    for (std::int64_t n = 1; n < 50; ++n) EXPECT_NEAR(std::abs(sq(n) - leg(n)), 0.0, 1e-12);
    break;
  }
}

TEST(MainTheorem, RangeArithmeticAndRows) {
  const auto r = harness::main_theorem_experiment(101, 100, 10.0, {1.0, 360.0});
  EXPECT_NEAR(r.x_range_lo, std::exp(std::sqrt(std::log(101.0))), 1e-12);
  EXPECT_NEAR(r.x_range_hi, std::sqrt(101.0), 1e-12);
  EXPECT_TRUE(r.x_in_range);
  EXPECT_TRUE(r.vacuous);
  ASSERT_EQ(r.rows.size(), 2u);
  EXPECT_EQ(r.rows[1].threshold_360, 1);
  EXPECT_TRUE(r.rows[0].audit.has_value());
  EXPECT_FALSE(r.rows[1].error.empty());
  const auto j = nlohmann::ordered_json::parse(report::main_theorem_json(r));
  EXPECT_EQ(j["rows"].size(), 2u);
}
