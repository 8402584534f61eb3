#include <catch2/catch_amalgamated.hpp>

#include <stdexcept>

#include "toricva/verify.hpp"

using namespace toricva;
using Catch::Matchers::ContainsSubstring;

TEST_CASE("suite report plumbing keeps failure witnesses") {
  SuiteReport rep{"demo", {}};
  rep.add("good", true, "42");
  rep.add("bad", false, "e1 + e2");
  CHECK_FALSE(rep.ok());
  REQUIRE(rep.find("bad") != nullptr);
  CHECK(rep.find("bad")->witness == "e1 + e2");
  CHECK_THAT(rep.describe(), ContainsSubstring("[FAIL] demo/bad: e1 + e2"));
  CHECK_THAT(rep.describe(), ContainsSubstring("[pass] demo/good: 42"));
  CHECK(rep.find("absent") == nullptr);
}

TEST_CASE("q-series helpers") {
  const auto p1 = detail::partition_series(1, 6);
  CHECK(p1 == std::vector<long long>{1, 1, 2, 3, 5, 7, 11});
  const auto p2 = detail::partition_series(2, 6);
  CHECK(p2 == std::vector<long long>{1, 0, 1, 1, 2, 2, 4});
  CHECK(detail::convolve(p1, p2) ==
        std::vector<long long>{1, 1, 3, 5, 10, 16, 29});
  CHECK(detail::boson_series(4, 2) == std::vector<long long>{1, 4, 14});
}

TEST_CASE("rank-one screened quadratic with symbolic exponent") {
  const SuiteReport rep = suite_ff_virasoro();
  INFO(rep.describe());
  REQUIRE(rep.ok());
  // c = 1 - 12 k a^2 at k = -1/(e1 e2), a = (k b^2 - 2)/(2 k b)
  const RatFun k = rf_parse("-1/(e1*e2)");
  const RatFun b = rf_parse("beta");
  const RatFun a = (k * b * b - RatFun(2)) / (RatFun(2) * k * b);
  const RatFun c = RatFun(1) - RatFun(12) * k * a * a;
  REQUIRE(rep.find("vacuum anomaly is half the central term") != nullptr);
  CHECK(rep.find("vacuum anomaly is half the central term")->witness ==
        c.pretty());
}

TEST_CASE("two plane sheets carry a boson times a quadratic tower") {
  const SuiteReport rep = suite_w_gl2();
  INFO(rep.describe());
  REQUIRE(rep.ok());
  REQUIRE(rep.find("central term of the quadratic tower") != nullptr);
  CHECK(rep.find("central term of the quadratic tower")->witness ==
        rf_parse("1 + 6*(e1+e2)^2/(e1*e2)").pretty());
  REQUIRE(rep.find("kernel dimensions match the product character") != nullptr);
  CHECK(rep.find("kernel dimensions match the product character")->witness ==
        "1 1 3 5 10");
}

TEST_CASE("resolved curve sheet carries a weight pair") {
  const SuiteReport rep = suite_beta_gamma();
  INFO(rep.describe());
  REQUIRE(rep.ok());
  // deterministic reporting: a rerun reproduces the same witnesses
  CHECK(rep.describe() == suite_beta_gamma().describe());
}

TEST_CASE("two sheets over the resolved curve close the affine brackets") {
  const SuiteReport rep = suite_wakimoto_sl2();
  INFO(rep.describe());
  REQUIRE(rep.ok());
  REQUIRE(rep.find("level reads off the Cartan pairing") != nullptr);
  CHECK(rep.find("level reads off the Cartan pairing")->witness ==
        rf_parse("2*(-2 - e2/e1)").pretty());
  REQUIRE(rep.find("weight window counts the four-current generation") !=
          nullptr);
  CHECK(rep.find("weight window counts the four-current generation")->witness ==
        "1 4 14; charge split 1|2|1");
}

TEST_CASE("sheet towers match the product of weight-j characters") {
  const SuiteReport r2 = suite_ff_glr(2);
  INFO(r2.describe());
  REQUIRE(r2.ok());
  REQUIRE(r2.find("kernel dimensions match the tower product") != nullptr);
  CHECK(r2.find("kernel dimensions match the tower product")->witness ==
        "1 1 3 5 10 16");

  const SuiteReport r3 = suite_ff_glr(3);
  INFO(r3.describe());
  REQUIRE(r3.ok());
  CHECK(r3.find("kernel dimensions match the tower product")->witness ==
        "1 1 3 6 12 21");

  CHECK_THROWS_AS(suite_ff_glr(1), std::invalid_argument);
  CHECK_THROWS_AS(suite_ff_glr(4), std::invalid_argument);
}
