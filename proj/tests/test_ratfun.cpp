#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "toricva/linalg.hpp"
#include "toricva/ratfun.hpp"

using namespace toricva;

namespace {

Poly E1 = Poly::var(0);
Poly E2 = Poly::var(1);

std::mt19937 rng(987123);

Poly random_poly(bool allow_third = false, bool allow_zero = true) {
  std::uniform_int_distribution<int> nterms(allow_zero ? 0 : 1, 3);
  std::uniform_int_distribution<int> expd(0, 2);
  std::uniform_int_distribution<int> coeff(-4, 4);
  Poly p;
  const int n = nterms(rng);
  for (int i = 0; i < n; ++i) {
    Exp e{expd(rng), expd(rng), allow_third ? expd(rng) % 2 : 0};
    int c = coeff(rng);
    if (c == 0) c = 1;
    p += Poly(e, c);
  }
  return p;
}

RatFun random_ratfun() {
  Poly d = random_poly(false, false);
  while (d.is_zero()) d = random_poly(false, false);
  return RatFun(random_poly(), d);
}

// low-degree entries: exercises the elimination logic without driving the
// non-homogeneous bivariate gcds (which nothing downstream needs) to blowup
RatFun random_matrix_entry() {
  std::uniform_int_distribution<int> expd(0, 1);
  std::uniform_int_distribution<int> coeff(-3, 3);
  Poly n(Exp{expd(rng), expd(rng), 0}, std::max(coeff(rng), 1));
  Poly n2(Exp{expd(rng), expd(rng), 0}, coeff(rng));
  Poly d(Exp{expd(rng), expd(rng), 0}, std::max(coeff(rng), 1));
  return RatFun(n + n2, d);
}

}  // namespace

TEST_CASE("canonical form of rational functions") {
  CHECK(rf_normalize(E1 * E1 - E2 * E2, E1 - E2) == RatFun(E1 + E2));
  CHECK(rf_normalize(E1 * E1 - E2 * E2, E1 - E2).str() == "(e1+e2)/(1)");
  CHECK(rf_normalize(Poly(), E1) == RatFun());
  CHECK(rf_normalize(Poly(), E1).str() == "(0)/(1)");
  CHECK(rf_normalize(2 * E1, 4 * E2).str() == "(e1)/(2*e2)");
  // sign lives in the numerator; denominator leading coefficient positive
  CHECK(rf_normalize(E1, -E2).str() == "(-e1)/(e2)");
  CHECK(rf_normalize(2 * E1 + 2 * E2, Poly(2)).str() == "(e1+e2)/(1)");
  CHECK_THROWS_AS(rf_normalize(E1, Poly()), std::domain_error);
}

TEST_CASE("substituting away the third equivariant weight") {
  const Poly E3 = Poly::var(2);
  CHECK(eliminate_e3(E1 + E2 + E3).is_zero());
  CHECK(eliminate_e3(E3) == RatFun(-(E1 + E2)));
  CHECK(eliminate_e3(E1 * E3) == RatFun(-(E1 * E1) - E1 * E2));
}

TEST_CASE("substitution is a ring homomorphism") {
  for (int i = 0; i < 100; ++i) {
    const Poly p = random_poly(true);
    const Poly q = random_poly(true);
    CHECK(eliminate_e3(p * q) == eliminate_e3(p) * eliminate_e3(q));
    CHECK(eliminate_e3(p + q) == eliminate_e3(p) + eliminate_e3(q));
  }
}

TEST_CASE("field axioms on random samples") {
  for (int i = 0; i < 120; ++i) {
    const RatFun a = random_ratfun();
    const RatFun b = random_ratfun();
    const RatFun c = random_ratfun();
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * (b + c) == a * b + a * c);
    if (!a.is_zero()) CHECK(a * a.inverse() == RatFun(1));
    CHECK(a - a == RatFun());
    CHECK((a * b) * c == a * (b * c));
  }
}

TEST_CASE("polynomial gcd fast paths") {
  const Poly s = E1 + E2;
  CHECK(Poly::gcd(s.pow(3) * (E1 - E2), s.pow(2) * E1) == s.pow(2));
  CHECK(Poly::gcd(Poly(6) * E1 * E2, Poly(4) * E2 * E2) == 2 * E2);
  CHECK(Poly::gcd(Poly(), 3 * E1) == 3 * E1);
  CHECK(Poly::gcd(-s, s) == s);
  const Poly b = Poly::var(2);
  CHECK(Poly::gcd((b * b - 1) * E1, (b - 1) * E2) == b - 1);
  CHECK(poly_lcm(2 * E1, 4 * E1 * E2) == 4 * E1 * E2);
}

TEST_CASE("rendering and parsing round-trip") {
  CHECK(rf_parse("(2*e1)/(4*e2)").str() == "(e1)/(2*e2)");
  CHECK(rf_parse("e1^2 - e2^2").str() == "(e1^2-e2^2)/(1)");
  CHECK(rf_parse("e3") == RatFun(-(E1 + E2)));
  CHECK(rf_parse("beta^2 - 2") == RatFun(Poly::var(2).pow(2) - 2));
  CHECK(rf_parse("(e1+e2)^-1") == RatFun(Poly(1), E1 + E2));
  CHECK(rf_parse("1 - 1/2") == RatFun(Poly(1), Poly(2)));
  for (int i = 0; i < 60; ++i) {
    const RatFun x = random_ratfun();
    CHECK(rf_parse(x.str()) == x);
  }
}

TEST_CASE("parse errors carry positions") {
  try {
    rf_parse("e1 +* e2");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 1);
    CHECK(e.col == 5);
  }
  try {
    rf_parse("(e1\n+ e4)");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
    CHECK(e.col == 3);
  }
  CHECK_THROWS_AS(rf_parse("1/(e1-e1)"), ParseError);
  CHECK_THROWS_AS(rf_parse("e1 e2"), ParseError);
}

TEST_CASE("human-form printing recovers e3") {
  CHECK(rf_parse("1/(e1*e3)").pretty() == "1/(e1*e3)");
  CHECK(rf_parse("-1/(e1*e3)").pretty() == "-1/(e1*e3)");
  CHECK(rf_parse("(e3-e1)/(e3-2*e1)").pretty() == "(e3-e1)/(e3-2*e1)");
  CHECK(rf_parse("e1+e2").pretty() == "-e3");
  CHECK(rf_parse("e1-e2").pretty() == "e1-e2");
  CHECK(rf_parse("-1/2 * e1").pretty() == "-e1/2");
  CHECK(RatFun(5).pretty() == "5");
  CHECK(RatFun().pretty() == "0");
}

TEST_CASE("kernel of exact matrices") {
  SECTION("identity has trivial kernel") {
    Mat m(2, 2);
    m.at(0, 0) = RatFun(1);
    m.at(1, 1) = RatFun(1);
    CHECK(nullspace(m).empty());
    CHECK(rank(m) == 2);
  }
  SECTION("zero map has full kernel") {
    Mat m(2, 2);
    const auto basis = nullspace(m);
    REQUIRE(basis.size() == 2);
    CHECK(basis[0][0] == RatFun(1));
    CHECK(basis[1][1] == RatFun(1));
  }
  SECTION("one-row kernel is primitive and sign-normalized") {
    Mat m(1, 2);
    m.at(0, 0) = RatFun(E1);
    m.at(0, 1) = RatFun(E2);
    const auto basis = nullspace(m);
    REQUIRE(basis.size() == 1);
    CHECK(basis[0][0] == RatFun(E2));
    CHECK(basis[0][1] == RatFun(-E1));
  }
  SECTION("proportional rows collapse to rank one") {
    Mat m(2, 2);
    m.at(0, 0) = RatFun(E1);
    m.at(0, 1) = RatFun(E2);
    m.at(1, 0) = RatFun(2 * E1);
    m.at(1, 1) = RatFun(2 * E2);
    CHECK(rank(m) == 1);
    const auto basis = nullspace(m);
    REQUIRE(basis.size() == 1);
    CHECK(basis[0][0] == RatFun(E2));
  }
}

TEST_CASE("kernel vectors annihilate and rank-nullity holds") {
  std::uniform_int_distribution<int> zero_die(0, 2);
  for (int rep = 0; rep < 12; ++rep) {
    const std::size_t nr = 3 + rep % 2, nc = 4 + rep % 2;
    Mat m(nr, nc);
    for (std::size_t r = 0; r < nr; ++r)
      for (std::size_t c = 0; c < nc; ++c)
        if (zero_die(rng) != 0) m.at(r, c) = random_matrix_entry();
    const auto basis = nullspace(m);
    CHECK(basis.size() == nc - rank(m));
    for (const auto& v : basis) {
      for (const auto& entry : mat_apply(m, v)) CHECK(entry.is_zero());
    }
  }
}
