#include <catch2/catch_amalgamated.hpp>

#include "toricva/divisor.hpp"

using namespace toricva;
using Catch::Matchers::ContainsSubstring;

namespace {

RatFun rf(const char* s) { return rf_parse(s); }

// apply the e2 <-> e3 relabeling to a stored value
RatFun swap23(const RatFun& r) {
  const Poly m = Poly(Exp{1, 0, 0}, -1) + Poly(Exp{0, 1, 0}, -1);  // e2 -> -e1-e2
  return RatFun(r.num().subst(1, m), r.den().subst(1, m));
}

}  // namespace

TEST_CASE("sheet points and levels") {
  const LatticeData L = lattice_data(build_ymn(2, 0), "S(2,1,0,0)");
  CHECK(L.spec.series == std::vector<std::string>{"d1", "d1", "d2"});
  REQUIRE(L.points.size() == 4);
  CHECK(L.points[0].step == 0);
  CHECK(L.points[0].fp == 0);
  CHECK(L.points[1].step == 1);
  CHECK(L.points[1].occ == 1);  // second sheet of d1
  CHECK(L.points[2].step == 2);
  CHECK(L.points[2].fp == 0);
  CHECK(L.points[3].step == 2);
  CHECK(L.points[3].fp == 1);
  CHECK(L.levels[0] == rf("-1/(e1*e2)"));
  CHECK(L.levels[2] == rf("-1/(e1*e3)"));
}

TEST_CASE("screening cocharacters match the worked examples") {
  // two copies of an affine plane inside C3
  const LatticeData c3 = lattice_data(build_c3(), "d1, d1");
  REQUIRE(c3.screenings.size() == 2);
  CHECK(c3.screenings[0].tag() == "s1@1");
  CHECK(c3.cochar_str(c3.screenings[0].values) == "e2*(phi1-phi2)");
  CHECK(c3.screenings[1].tag() == "s2@1");
  CHECK(c3.cochar_str(c3.screenings[1].values) == "e1*(phi1-phi2)");

  const LatticeData L = lattice_data(build_ymn(2, 0), "S(2,1,0,0)");
  REQUIRE(L.screenings.size() == 3);
  CHECK(L.screenings[0].tag() == "s1@1");
  CHECK(L.cochar_str(L.screenings[0].values) == "e2*(phi1-phi2)");
  CHECK(L.screenings[1].tag() == "s2@1");
  CHECK(L.cochar_str(L.screenings[1].values) == "e1*(phi1-phi2)");
  CHECK(L.screenings[2].tag() == "s1@2");
  CHECK(L.cochar_str(L.screenings[2].values) == "e2*phi2-e3*phi3");
}

TEST_CASE("doubled line bundle screenings up to relabeling") {
  const LatticeData M = lattice_data(build_ymn(2, 0), "S(0,2,0,0)");
  REQUIRE(M.points.size() == 4);
  REQUIRE(M.screenings.size() == 2);
  CHECK(M.screenings[0].tag() == "s1@1");
  CHECK(M.cochar_str(M.screenings[0].values) == "e3*(phi1-phi3)");
  CHECK(M.screenings[1].tag() == "s3@1");
  CHECK(M.cochar_str(M.screenings[1].values) == "-e3*(phi2-phi4)");

  // the same data under the e2<->e3 relabeling and fixed-point-major boson
  // numbering, the form in which this example is usually quoted
  const std::array<std::size_t, 4> perm{0, 2, 1, 3};
  auto relabel = [&](const std::vector<RatFun>& v) {
    std::vector<RatFun> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[perm[i]] = swap23(v[i]);
    return out;
  };
  CHECK(M.cochar_str(relabel(M.screenings[0].values)) == "e2*(phi1-phi2)");
  CHECK(M.cochar_str(relabel(M.screenings[1].values)) == "-e2*(phi3-phi4)");
}

TEST_CASE("lattice current exponents") {
  const LatticeData L = lattice_data(build_ymn(2, 0), "d2");
  REQUIRE(L.curves.size() == 1);
  CHECK(L.curve_tag(0) == "i1@1");
  CHECK(L.cochar_str(L.curve_cochars[0]) == "e1*(phi1+phi2)");

  const LatticeData K = lattice_data(build_ymn(2, 0), "d4");
  CHECK(K.cochar_str(K.curve_cochars[0]) == "e2*phi1+(e3-e1)*phi2");
}

TEST_CASE("chi pairing reproduces the intersection numbers") {
  CHECK(lattice_data(build_ymn(2, 0), "d2").chi(0, 0) == 0);
  CHECK(lattice_data(build_ymn(1, 1), "d3").chi(0, 0) == 1);
  CHECK(lattice_data(build_ymn(2, 0), "d4").chi(0, 0) == 2);

  const LatticeData a2 = lattice_data(build_ymn(3, 0), "d5");
  REQUIRE(a2.curves.size() == 2);
  const auto m = a2.chi_matrix();
  CHECK(m[0][0] == 2);
  CHECK(m[0][1] == -1);
  CHECK(m[1][0] == -1);
  CHECK(m[1][1] == 2);

  // different sheets never pair
  const LatticeData two = lattice_data(build_ymn(2, 0), "d4, d4");
  REQUIRE(two.curves.size() == 2);
  CHECK(two.chi(0, 1) == 0);
  CHECK(two.chi(0, 0) == 2);
  CHECK(two.chi_sector({Int(1), Int(-1)}) == 4);
}

TEST_CASE("screenings pair integrally with every lattice direction") {
  struct Case {
    GkmGraph g;
    const char* spec;
  };
  const Case cases[] = {
      {build_c3(), "d1, d1"},
      {build_ymn(2, 0), "S(2,1,0,0)"},
      {build_ymn(2, 0), "S(0,2,0,0)"},
      {build_ymn(3, 0), "d5, d5"},
      {build_ymn(2, 1), "d1, d1, d2"},
  };
  for (const Case& c : cases) {
    const LatticeData L = lattice_data(c.g, c.spec);
    INFO(c.g.name << " " << c.spec);
    CHECK(!L.screenings.empty());
    for (const Screening& s : L.screenings)
      for (std::size_t i = 0; i < L.curves.size(); ++i)
        CHECK(L.pair_values(s.values, L.curve_cochars[i]).is_integer());
  }
}

TEST_CASE("non-adjacent consecutive divisors produce a warning") {
  const LatticeData L = lattice_data(build_ymn(2, 0), "d1, d3");
  CHECK(L.screenings.empty());
  REQUIRE(L.warnings.size() == 1);
  CHECK_THAT(L.warnings[0], ContainsSubstring("empty screening set at step 1"));

  // divisors joined only by a compact curve have no screening either
  const LatticeData K = lattice_data(build_ymn(2, 0), "d2, d4");
  CHECK(K.screenings.empty());
  CHECK(K.warnings.size() == 1);
}

TEST_CASE("non-integral pairing is a hard error") {
  LatticeData L = lattice_data(build_ymn(2, 0), "d4");
  L.levels[0] = L.levels[0] * rf("e1/e2");
  CHECK_THROWS_WITH(L.chi(0, 0), ContainsSubstring("integrality violation"));
}

TEST_CASE("divisor spec parsing") {
  const GkmGraph g = build_ymn(2, 0);
  CHECK(parse_divisor_spec(g, "d1, d1, d2").str() == "2[d1] + 1[d2]");
  CHECK(parse_divisor_spec(g, "S(2,1,0,0)").series ==
        std::vector<std::string>{"d1", "d1", "d2"});
  CHECK(parse_divisor_spec(g, "series: d1, d1, d2").str() == "2[d1] + 1[d2]");

  const DivisorSpec s = parse_divisor_spec(g, "components: 2*d1, 1*d2\nseries: d1, d1, d2");
  const std::vector<std::pair<std::string, int>> want{{"d1", 2}, {"d2", 1}};
  CHECK(s.components == want);

  CHECK_THROWS_WITH(parse_divisor_spec(g, "components: 1*d1\nseries: d1, d1"),
                    ContainsSubstring("do not match"));
  CHECK_THROWS_WITH(parse_divisor_spec(g, "d9"), ContainsSubstring("unknown divisor"));
  CHECK_THROWS_AS(parse_divisor_spec(g, "S(1,1,1,1,1)"), LatticeError);
  CHECK_THROWS_AS(parse_divisor_spec(g, "  "), LatticeError);
}

TEST_CASE("algebra table is deterministic and complete") {
  const GkmGraph g = build_ymn(2, 0);
  const LatticeData L = lattice_data(g, "S(2,1,0,0)");
  const std::string d = L.describe();
  CHECK(d == lattice_data(g, "S(2,1,0,0)").describe());
  CHECK_THAT(d, ContainsSubstring("divisor: 2[d1] + 1[d2]"));
  CHECK_THAT(d, ContainsSubstring("phi3  (d2 sheet 1, y1)  level -1/(e1*e3)"));
  CHECK_THAT(d, ContainsSubstring("Q[s1@2]  exponent e2*phi2-e3*phi3"));
  CHECK_THAT(d, ContainsSubstring("V[i1@3]  exponent e1*(phi3+phi4)"));
}
