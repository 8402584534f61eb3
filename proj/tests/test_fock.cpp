#include <catch2/catch_amalgamated.hpp>

#include "toricva/fock.hpp"

using namespace toricva;

namespace {

RatFun rf(const char* s) { return rf_parse(s); }

FockState creations(const LatticeData& L, const Sector& sec,
                    std::vector<std::pair<int, int>> modes) {
  FockState s = FockState::vacuum(sec);
  for (const auto& [n, p] : modes) s = apply_b(L, -n, p, s);
  return s;
}

}  // namespace

TEST_CASE("mode action on the vacuum") {
  const LatticeData L = lattice_data(build_c3(), "d1");
  const Sector vac = Sector::zero(L);

  // b_{+1} b_{-1} |0> = k |0>
  const FockState one = apply_b(L, 1, 0, apply_b(L, -1, 0, FockState::vacuum(vac)));
  CHECK(one == rf("-1/(e1*e2)") * FockState::vacuum(vac));

  // b_{+2} b_{-1} |0> = 0
  CHECK(apply_b(L, 2, 0, apply_b(L, -1, 0, FockState::vacuum(vac))).is_zero());

  // repeated modes act as a derivation
  const FockState two = creations(L, vac, {{1, 0}, {1, 0}});
  const FockState hit = apply_b(L, 1, 0, two);
  CHECK(hit == (rf("-2/(e1*e2)") * creations(L, vac, {{1, 0}})));
}

TEST_CASE("zero mode eigenvalue carries the level") {
  const LatticeData L = lattice_data(build_ymn(2, 0), "d2");
  const Sector sec = Sector::zero(L).plus_curve(0);
  CHECK(b0_eigenvalue(L, sec, 0) == rf("-1/e3"));
  const FockState v = FockState::vacuum(sec);
  CHECK(apply_b(L, 0, 0, v) == rf("-1/e3") * v);
  CHECK(apply_b(L, 0, 0, FockState::vacuum(Sector::zero(L))).is_zero());

  // screening shifts contribute to the eigenvalue as well
  const LatticeData M = lattice_data(build_ymn(2, 0), "S(2,1,0,0)");
  const Sector shifted = Sector::zero(M).plus_screen(0);
  CHECK(b0_eigenvalue(M, shifted, 0) == rf("-1/e1"));
}

TEST_CASE("shift operators") {
  const LatticeData L = lattice_data(build_ymn(2, 0), "S(2,1,0,0)");
  const Sector vac = Sector::zero(L);
  const Sector ei = vac.plus_curve(0);
  const Sector es = vac.plus_screen(1);

  CHECK(shift(ei, FockState::vacuum(vac)) == FockState::vacuum(ei));
  const FockState b1 = creations(L, vac, {{1, 2}});
  CHECK(shift(ei, b1) == creations(L, ei, {{1, 2}}));
  CHECK(shift(es, FockState::vacuum(ei)) == FockState::vacuum(ei + es));

  // invertibility
  const FockState mixed = b1 + rf("e1") * creations(L, ei, {{2, 0}, {1, 1}});
  CHECK(shift(-es, shift(es, mixed)) == mixed);
  CHECK(shift(-ei, shift(ei, mixed)) == mixed);
}

TEST_CASE("degrees") {
  const LatticeData c2 = lattice_data(build_c3(), "d1");
  const Sector vac0 = Sector::zero(c2);
  CHECK(degree2(c2, FockState::vacuum(vac0)) == 0);
  CHECK(degree2(c2, creations(c2, vac0, {{2, 0}, {1, 0}})) == 6);

  // conifold sector offsets are half-integral: d(1) = 1/2 + 1/2 = 1
  const LatticeData con = lattice_data(build_ymn(1, 1), "d3");
  CHECK(sector_degree2(con, Sector::zero(con).plus_curve(0)) == 2);
  CHECK(sector_degree2(con, Sector::zero(con).plus_curve(0, Int(-1))) == 0);
  CHECK(sector_degree2(con, Sector::zero(con).plus_curve(0, Int(2))) == 6);

  // chi = 0 face: d(l) = l
  const LatticeData o0 = lattice_data(build_ymn(2, 0), "d2");
  CHECK(sector_degree2(o0, Sector::zero(o0).plus_curve(0)) == 2);
  CHECK(sector_degree2(o0, Sector::zero(o0).plus_curve(0, Int(-1))) == -2);

  // chi = 2 face: d(l) = l^2, symmetric
  const LatticeData o2 = lattice_data(build_ymn(2, 0), "d4");
  CHECK(sector_degree2(o2, Sector::zero(o2).plus_curve(0)) == 2);
  CHECK(sector_degree2(o2, Sector::zero(o2).plus_curve(0, Int(-1))) == 2);

  // screening-shifted sectors: d(l + lambda_s) = d(l) + 1 + <lambda_s, l>
  const LatticeData L = lattice_data(build_ymn(2, 0), "S(2,1,0,0)");
  CHECK(sector_degree2(L, Sector::zero(L).plus_screen(0)) == 2);
  CHECK(sector_degree2(L, Sector::zero(L).plus_curve(0).plus_screen(0)) == 4);

  // inhomogeneous combinations are flagged
  const FockState mixed =
      FockState::vacuum(Sector::zero(o0)) +
      FockState::vacuum(Sector::zero(o0).plus_curve(0));
  CHECK(!degree2(o0, mixed).has_value());
  CHECK(degree_str(3) == "3/2");
  CHECK(degree_str(4) == "2");
}

TEST_CASE("commutation relations hold on a basis") {
  const LatticeData L = lattice_data(build_ymn(2, 0), "d2");
  const Sector sec = Sector::zero(L).plus_curve(0);
  std::vector<BasisKey> keys;
  for (int lev = 0; lev <= 4; ++lev)
    for (const BasisKey& k : osc_basis(L, sec, lev)) keys.push_back(k);
  REQUIRE(keys.size() == 1 + 2 + 5 + 10 + 20);

  for (const BasisKey& k : keys) {
    const FockState v = FockState::basis(k);
    for (int m = -3; m <= 3; ++m)
      for (int n = -3; n <= 3; ++n)
        for (int p = 0; p < 2; ++p)
          for (int q = 0; q < 2; ++q) {
            const FockState lhs = apply_b(L, m, p, apply_b(L, n, q, v)) -
                                  apply_b(L, n, q, apply_b(L, m, p, v));
            FockState want;
            if (m + n == 0 && p == q && m != 0)
              want = (RatFun(Int(m)) * L.levels[std::size_t(p)]) * v;
            CHECK(lhs == want);
          }
  }
}

TEST_CASE("mode action shifts the degree by -n") {
  const LatticeData L = lattice_data(build_ymn(2, 0), "d4");
  const Sector sec = Sector::zero(L).plus_curve(0);
  for (int lev = 0; lev <= 3; ++lev)
    for (const BasisKey& k : osc_basis(L, sec, lev)) {
      const FockState v = FockState::basis(k);
      const auto d0 = degree2(L, v);
      REQUIRE(d0.has_value());
      for (const int n : {-2, -1, 1, 2}) {
        for (int p = 0; p < 2; ++p) {
          const FockState w = apply_b(L, n, p, v);
          if (w.is_zero()) continue;
          CHECK(degree2(L, w) == *d0 - 2 * n);
        }
      }
    }
}

TEST_CASE("basis enumeration counts partitions") {
  const LatticeData one = lattice_data(build_c3(), "d1");
  const std::vector<std::size_t> p1{1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42};
  for (int lev = 0; lev <= 10; ++lev)
    CHECK(osc_basis(one, Sector::zero(one), lev).size() == p1[std::size_t(lev)]);

  const LatticeData two = lattice_data(build_ymn(2, 0), "d2");
  const std::vector<std::size_t> p2{1, 2, 5, 10, 20, 36, 65};
  for (int lev = 0; lev <= 6; ++lev)
    CHECK(osc_basis(two, Sector::zero(two), lev).size() == p2[std::size_t(lev)]);

  // canonical order and no duplicates
  const auto basis = osc_basis(two, Sector::zero(two), 4);
  for (std::size_t i = 0; i + 1 < basis.size(); ++i) CHECK(basis[i] != basis[i + 1]);
}

TEST_CASE("canonical rendering") {
  const LatticeData L = lattice_data(build_ymn(3, 0), "d5");
  Sector sec = Sector::zero(L);
  REQUIRE(sec.l.size() == 2);
  sec.l[0] = 1;
  const FockState s = creations(L, sec, {{1, 0}, {2, 0}});
  CHECK(render(L, s) == "b(-2,y1) b(-1,y1) |l=(1,0)>");

  const LatticeData M = lattice_data(build_ymn(2, 0), "S(2,1,0,0)");
  CHECK(point_display(M, 0) == "y1@1");
  CHECK(point_display(M, 2) == "y1@3");
  CHECK(point_display(M, 3) == "y2");
  CHECK(render(M, FockState::vacuum(Sector::zero(M))) == "|l=(0)>");
  CHECK(render(M, rf("-1") * FockState::vacuum(Sector::zero(M).plus_screen(0))) ==
        "- |l=(0);s=(1,0,0)>");
  CHECK(render(M, FockState()) == "0");
  CHECK(render(M, rf("e1+e2") * FockState::vacuum(Sector::zero(M))) ==
        "(-e3) |l=(0)>");
}
