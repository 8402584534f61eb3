#include <catch2/catch_amalgamated.hpp>

#include "toricva/gkm.hpp"

using namespace toricva;
using Catch::Matchers::ContainsSubstring;

namespace {

RatFun rf(const char* s) { return rf_parse(s); }

// serialize per the documented raw schema (exercised by the round-trip test)
std::string to_raw(const GkmGraph& g) {
  std::string s = "name: " + g.name + "\n";
  for (const auto& fp : g.points)
    s += "fixed_point " + fp.id + " { tangent: " + fp.tangent[0].str() + ", " +
         fp.tangent[1].str() + ", " + fp.tangent[2].str() + " }\n";
  for (const auto& d : g.divisors) {
    s += "divisor " + d.id + " {\n  label: " + d.label + "\n";
    for (const auto& dp : d.points)
      s += "  at " + g.points[std::size_t(dp.fp)].id + " { tangent: " +
           dp.tangent[0].str() + ", " + dp.tangent[1].str() + " }\n";
    s += "}\n";
  }
  for (const auto& c : g.curves) {
    s += "curve " + c.id + " {\n  endpoints: " + g.points[std::size_t(c.fp0)].id +
         ", " + g.points[std::size_t(c.fp1)].id + "\n  direction: " + c.dir0.str() +
         "\n";
    for (const auto& cd : c.divisors)
      s += "  in " + g.divisors[std::size_t(cd.div)].id + " { normal: " +
           cd.normal0.str() + ", " + cd.normal1.str() + " }\n";
    s += "}\n";
  }
  for (const auto& l : g.legs) {
    s += "leg " + l.id + " {\n";
    if (l.fp >= 0)
      s += "  endpoint: " + g.points[std::size_t(l.fp)].id +
           "\n  direction: " + l.dir.str() + "\n";
    for (const auto& ld : l.divisors)
      s += "  in " + g.divisors[std::size_t(ld.div)].id + " { normal: " +
           ld.normal.str() + " }\n";
    s += "}\n";
  }
  return s;
}

std::vector<GkmGraph> all_builtins() {
  std::vector<GkmGraph> out;
  for (int m = 1; m <= 4; ++m)
    for (int n = 0; m + n <= 4; ++n) out.push_back(build_ymn(m, n));
  return out;
}

}  // namespace

TEST_CASE("built-in geometries have the expected inventory") {
  const GkmGraph c3 = build_c3();
  CHECK(c3.name == "C3");
  CHECK(c3.points.size() == 1);
  CHECK(c3.curves.size() == 0);
  CHECK(c3.divisors.size() == 3);
  CHECK(c3.legs.size() == 3);
  CHECK(c3.points[0].tangent ==
        std::array<Weight, 3>{Weight{1, 0}, Weight{0, 1}, Weight{-1, -1}});

  const GkmGraph y20 = build_ymn(2, 0);
  CHECK(y20.name == "Y(2,0)");
  CHECK(y20.points.size() == 2);
  CHECK(y20.curves.size() == 1);
  CHECK(y20.divisors.size() == 4);
  CHECK(y20.legs.size() == 4);

  const GkmGraph y11 = build_ymn(1, 1);
  CHECK(y11.points.size() == 2);
  CHECK(y11.curves.size() == 1);
  CHECK(y11.divisors.size() == 4);
  CHECK(y11.legs.size() == 4);
}

TEST_CASE("surface tangent products") {
  CHECK(build_c3().surface_euler("d1", "y1") == rf("e1*e2"));
  CHECK(build_ymn(1, 1).surface_euler("d3", "y1") == rf("e2*e3"));
  CHECK(build_ymn(2, 0).surface_euler("d2", "y1") == rf("e1*e3"));

  const GkmGraph y20 = build_ymn(2, 0);
  CHECK_THROWS_WITH(y20.surface_euler("d1", "y2"), ContainsSubstring("not on divisor"));
  CHECK_THROWS_WITH(y20.surface_euler("d9", "y1"), ContainsSubstring("unknown divisor"));
}

TEST_CASE("curve normal weights") {
  const GkmGraph y20 = build_ymn(2, 0);
  CHECK(y20.normal_weight("i1", "y1", "d2") == rf("e1"));
  CHECK(y20.normal_weight("i1", "y1", "d4") == rf("e2"));
  CHECK(y20.normal_weight("i1", "y2", "d4") == rf("e3-e1"));
  CHECK(build_ymn(1, 1).normal_weight("i1", "y1", "d3") == rf("e2"));

  CHECK_THROWS_WITH(y20.normal_weight("i1", "y1", "d1"),
                    ContainsSubstring("does not lie in"));
  CHECK_THROWS_WITH(y20.normal_weight("s1", "y2", "d1"),
                    ContainsSubstring("not an endpoint"));
  CHECK_THROWS_WITH(y20.normal_weight("i7", "y1", "d1"),
                    ContainsSubstring("unknown curve"));
}

TEST_CASE("noncompact curves of C3") {
  const GkmGraph c3 = build_c3();
  REQUIRE(c3.legs.size() == 3);
  CHECK(c3.legs[0].id == "s1");
  CHECK(c3.legs[0].dir == Weight{1, 0});
  CHECK(c3.legs[1].dir == Weight{0, 1});
  CHECK(c3.legs[2].dir == Weight{-1, -1});
  CHECK(c3.normal_weight("s1", "y1", "d1") == rf("e2"));
  CHECK(c3.normal_weight("s1", "y1", "d2") == rf("e3"));
  CHECK(c3.normal_weight("s2", "y1", "d1") == rf("e1"));
  CHECK(c3.normal_weight("s3", "y1", "d2") == rf("e1"));
}

TEST_CASE("divisor classification labels") {
  const GkmGraph c3 = build_c3();
  for (const auto& d : c3.divisors) CHECK(d.label == "C2");

  const GkmGraph y20 = build_ymn(2, 0);
  CHECK(y20.divisors[0].label == "C2");
  CHECK(y20.divisors[1].label == "O(0)");
  CHECK(y20.divisors[2].label == "C2");
  CHECK(y20.divisors[3].label == "O(-2)");

  const GkmGraph y11 = build_ymn(1, 1);
  CHECK(y11.divisors[1].label == "O(-1)");
  CHECK(y11.divisors[2].label == "O(-1)");

  const GkmGraph y30 = build_ymn(3, 0);
  CHECK(y30.divisors[4].label == "A~2");
}

TEST_CASE("weight display") {
  CHECK(Weight{1, 0}.str() == "e1");
  CHECK(Weight{0, 1}.str() == "e2");
  CHECK(Weight{-1, -1}.str() == "e3");
  CHECK(Weight{1, 1}.str() == "-e3");
  CHECK(Weight{-2, -1}.str() == "e3-e1");
  CHECK(Weight{0, -3}.str() == "-3*e2");
  CHECK(Weight{0, 0}.str() == "0");
}

TEST_CASE("orientation relabeling") {
  CHECK(Weight{0, 1}.swapped23() == Weight{-1, -1});
  CHECK(Weight{-1, -1}.swapped23() == Weight{0, 1});
  for (int a = -3; a <= 3; ++a)
    for (int b = -3; b <= 3; ++b)
      CHECK(Weight{a, b}.swapped23().swapped23() == Weight{a, b});

  const GkmGraph c3_alt = build_c3(true);
  CHECK(c3_alt.orientation_label() == "e2<->e3");
  CHECK(c3_alt.points[0].tangent == build_c3().points[0].tangent);

  const GkmGraph y20_alt = build_ymn(2, 0, true);
  CHECK(y20_alt.surface_euler("d2", "y1") == rf("e1*e2"));
  CHECK(build_ymn(2, 0).orientation_label() == "standard");
}

TEST_CASE("geometry invariants hold for every built-in") {
  for (const GkmGraph& g : all_builtins()) {
    INFO(g.name);
    CHECK_NOTHROW(g.validate());

    // inventory grows linearly with the diagram
    std::size_t np = g.points.size();
    CHECK(g.curves.size() == np - 1);
    CHECK(g.divisors.size() == np + 2);
    CHECK(g.legs.size() == np + 2);

    for (const auto& fp : g.points)
      CHECK((fp.tangent[0] + fp.tangent[1] + fp.tangent[2]).is_zero());

    // directions and normals reconstruct the surface tangent pairs
    for (const auto& c : g.curves)
      for (const auto& cd : c.divisors) {
        const Divisor& d = g.divisors[std::size_t(cd.div)];
        CHECK(detail::sorted2({c.dir0, cd.normal0}) == d.at(c.fp0)->tangent);
        CHECK(detail::sorted2({-c.dir0, cd.normal1}) == d.at(c.fp1)->tangent);
      }
    for (const auto& l : g.legs) {
      REQUIRE(l.fp >= 0);
      for (const auto& ld : l.divisors) {
        const Divisor& d = g.divisors[std::size_t(ld.div)];
        CHECK(detail::sorted2({l.dir, ld.normal}) == d.at(l.fp)->tangent);
      }
    }
  }
}

TEST_CASE("construction is deterministic") {
  CHECK(build_ymn(2, 1).describe() == build_ymn(2, 1).describe());
  CHECK(build_geometry("y(3,1)").describe() == build_geometry("Y31").describe());
  const std::string d = build_c3().describe();
  CHECK_THAT(d, ContainsSubstring("geometry: C3"));
  CHECK_THAT(d, ContainsSubstring("orientation: standard"));
  CHECK_THAT(d, ContainsSubstring("d1  [C2]"));
}

TEST_CASE("raw text round-trips every built-in") {
  for (const GkmGraph& g : {build_c3(), build_ymn(2, 0), build_ymn(2, 1)}) {
    const std::string raw = to_raw(g);
    const GkmGraph back = parse_gkm_text(raw);
    CHECK(back.describe() == g.describe());
  }
}

TEST_CASE("raw input validation names the violated condition") {
  CHECK_THROWS_WITH(parse_gkm_text("fixed_point y1 { tangent: e1, e2, e1 }"),
                    ContainsSubstring("Calabi-Yau"));

  CHECK_THROWS_WITH(parse_gkm_text("fixed_point y1 { tangent: e1, e2, e3 }\n"
                                   "divisor d1 {\n  at y1 { tangent: e1, e1 }\n}\n"),
                    ContainsSubstring("sub-multiset"));

  CHECK_THROWS_WITH(parse_gkm_text("fixed_point y1 { tangent: e1, e2, e3 }\n"
                                   "divisor d1 {\n  at y9 { tangent: e1, e2 }\n}\n"),
                    ContainsSubstring("unknown fixed point"));

  CHECK_THROWS_WITH(parse_gkm_text("fixed_point y1 { tangent: e1/2, e2, e3 }"),
                    ContainsSubstring("integral"));

  // tamper with one normal weight: reconstruction must fail
  std::string raw = to_raw(build_ymn(2, 0));
  const std::string needle = "normal: e1, e1";
  const auto at = raw.find(needle);
  REQUIRE(at != std::string::npos);
  raw.replace(at, needle.size(), "normal: e2, e1");
  CHECK_THROWS_WITH(parse_gkm_text(raw), ContainsSubstring("reconstruct"));
}

TEST_CASE("geometry dispatcher") {
  CHECK(build_geometry("c3").name == "C3");
  CHECK(build_geometry("C3").name == "C3");
  CHECK(build_geometry("Y(2,0)").name == "Y(2,0)");
  CHECK(build_geometry("y11").points.size() == 2);
  CHECK(build_geometry(to_raw(build_ymn(1, 1))).curves.size() == 1);
  CHECK_THROWS_WITH(build_geometry("foo"), ContainsSubstring("unknown geometry"));
  CHECK_THROWS_WITH(build_geometry(to_raw(build_c3()), true),
                    ContainsSubstring("built-in"));
  CHECK_THROWS_AS(build_ymn(0, 1), GkmError);
  CHECK_THROWS_AS(build_ymn(5, 0), GkmError);
}
