#include <gtest/gtest.h>

#include <charconv>
#include <cmath>
#include <json.hpp>
#include <random>

#include "charzero/dirichlet.hpp"
#include "charzero/error.hpp"
#include "charzero/report.hpp"

using namespace charzero;

TEST(Report, DoublesRoundTrip) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> d(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double v = d(rng) * std::pow(10.0, static_cast<int>(rng() % 40) - 20);
    const std::string s = report::format_double(v);
    double back = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), back);
    EXPECT_EQ(back, v);
  }
  EXPECT_EQ(report::format_double(0.5), "0.5");
}

TEST(Report, CsvQuoting) {
  EXPECT_EQ(report::csv_escape("plain"), "plain");
  EXPECT_EQ(report::csv_escape("a,b"), "\"a,b\"");
  EXPECT_EQ(report::csv_escape("say \"hi\""), "\"say \"\"hi\"\"\"");
  EXPECT_EQ(report::csv_escape("two\nlines"), "\"two\nlines\"");
  report::CsvTable t({"a", "b"});
  t.add_row({"1", "x,y"});
  EXPECT_EQ(t.str(), "a,b\r\n1,\"x,y\"\r\n");
  EXPECT_THROW(t.add_row({"1"}), DomainError);
}

TEST(Report, CharacterJsonKeyOrder) {
  const auto j = report::character_json(dirichlet::character(12, 11));
  EXPECT_EQ(j, "{\n  \"q\": 12,\n  \"conrey\": 11,\n  \"order\": 2,\n  \"parity\": 0,\n  \"conductor\": 12,\n"
               "  \"primitive\": true\n}\n");
}

TEST(Report, ZeroCsvHeader) {
  ZeroRecord z;
  z.q = 4;
  z.conrey = 3;
  z.beta = 0.5;
  z.gamma = 6.0;
  const auto csv = report::zeros_csv({z});
  EXPECT_EQ(csv.substr(0, csv.find("\r\n")), "q,conrey,beta,gamma,residual,method");
  EXPECT_NE(csv.find("4,3,0.5,6,0,grid+newton"), std::string::npos);
}
