// GKM data of a toric Calabi-Yau threefold: fixed points carrying tangent
// weight triples, toric divisor faces carrying tangent pairs, compact and
// noncompact toric curves carrying direction and normal weights. Built-in
// constructors derive all weights from the planar diagram of Y_{m,n} (lattice
// points lifted to height 1; the tangent weight along the curve dual to an
// edge of a triangle is the dual-basis functional of the opposite vertex).
// Arbitrary geometries enter as structured text and are validated against
// the same local axioms the built-ins satisfy by construction.

#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdlib>
#include <string>
#include <tuple>
#include <vector>

#include "toricva/ratfun.hpp"
#include "toricva/textdoc.hpp"

namespace toricva {

struct GkmError : std::runtime_error {
  explicit GkmError(const std::string& msg) : std::runtime_error(msg) {}
};

// integer weight a*e1 + b*e2; e3 stands for (-1,-1)
struct Weight {
  int a = 0, b = 0;

  friend Weight operator+(Weight x, Weight y) { return {x.a + y.a, x.b + y.b}; }
  friend Weight operator-(Weight x, Weight y) { return {x.a - y.a, x.b - y.b}; }
  Weight operator-() const { return {-a, -b}; }
  friend bool operator==(const Weight&, const Weight&) = default;
  friend bool operator<(const Weight& x, const Weight& y) {
    return x.a != y.a ? x.a < y.a : x.b < y.b;
  }
  bool is_zero() const { return a == 0 && b == 0; }

  Poly poly() const { return Poly(Exp{1, 0, 0}, a) + Poly(Exp{0, 1, 0}, b); }
  RatFun rf() const { return RatFun(poly()); }

  // the lattice automorphism exchanging e2 and e3 (fixes e1)
  Weight swapped23() const { return {a - b, -b}; }

  std::string str() const {
    // display with e3 when that is shorter; exact value is preserved
    long best_g = 0;
    auto cost = [&](long g) {
      const long aa = a + g, bb = b + g;
      return std::tuple(std::labs(aa) + std::labs(bb) + std::labs(g),
                        (aa != 0) + (bb != 0) + (g != 0), std::labs(g), g < 0);
    };
    const long lim = std::max(std::labs(a), std::labs(b)) + 1;
    for (long g = -lim; g <= lim; ++g)
      if (cost(g) < cost(best_g)) best_g = g;
    detail::LinForm f{a + best_g, b + best_g, best_g};
    return f.str();
  }
};

struct FixedPoint {
  std::string id;
  std::array<Weight, 3> tangent;  // sorted descending by (a, b)
};

struct DivisorPoint {
  int fp = -1;
  std::array<Weight, 2> tangent;  // sorted descending by (a, b)
};

struct Divisor {
  std::string id;
  std::string label;  // cosmetic classification, filled by the builder
  std::vector<DivisorPoint> points;

  const DivisorPoint* at(int fp) const {
    for (const auto& p : points)
      if (p.fp == fp) return &p;
    return nullptr;
  }
};

struct CurveInDivisor {
  int div = -1;
  Weight normal0, normal1;  // at endpoints fp0, fp1
};

struct CompactCurve {
  std::string id;
  int fp0 = -1, fp1 = -1;
  Weight dir0;  // direction at fp0; the direction at fp1 is -dir0
  std::vector<CurveInDivisor> divisors;

  const CurveInDivisor* in(int d) const {
    for (const auto& c : divisors)
      if (c.div == d) return &c;
    return nullptr;
  }
};

struct LegInDivisor {
  int div = -1;
  Weight normal;  // at the endpoint
};

struct Leg {  // noncompact curve; at most one fixed endpoint
  std::string id;
  int fp = -1;  // -1: no fixed endpoint
  Weight dir;   // direction at the endpoint (meaningless when fp < 0)
  std::vector<LegInDivisor> divisors;

  const LegInDivisor* in(int d) const {
    for (const auto& c : divisors)
      if (c.div == d) return &c;
    return nullptr;
  }
};

struct GkmGraph {
  std::string name;
  bool alt_orientation = false;
  std::vector<FixedPoint> points;
  std::vector<Divisor> divisors;
  std::vector<CompactCurve> curves;
  std::vector<Leg> legs;

  std::string orientation_label() const {
    return alt_orientation ? "e2<->e3" : "standard";
  }

  int fp_index(std::string_view id) const {
    for (std::size_t i = 0; i < points.size(); ++i)
      if (points[i].id == id) return (int)i;
    throw GkmError("unknown fixed point '" + std::string(id) + "'");
  }
  int div_index(std::string_view id) const {
    for (std::size_t i = 0; i < divisors.size(); ++i)
      if (divisors[i].id == id) return (int)i;
    throw GkmError("unknown divisor '" + std::string(id) + "'");
  }

  RatFun surface_euler(std::string_view d_id, std::string_view y_id) const {
    const Divisor& d = divisors[std::size_t(div_index(d_id))];
    const DivisorPoint* p = d.at(fp_index(y_id));
    if (!p)
      throw GkmError("fixed point '" + std::string(y_id) + "' is not on divisor '" +
                     std::string(d_id) + "'");
    return RatFun(p->tangent[0].poly() * p->tangent[1].poly());
  }

  // normal weight of a (compact or noncompact) curve inside a divisor at an
  // endpoint; curve is addressed by id
  RatFun normal_weight(std::string_view curve_id, std::string_view y_id,
                       std::string_view d_id) const {
    const int y = fp_index(y_id);
    const int d = div_index(d_id);
    for (const auto& c : curves) {
      if (c.id != curve_id) continue;
      const CurveInDivisor* cd = c.in(d);
      if (!cd)
        throw GkmError("curve '" + std::string(curve_id) + "' does not lie in divisor '" +
                       std::string(d_id) + "'");
      if (c.fp0 == y) return cd->normal0.rf();
      if (c.fp1 == y) return cd->normal1.rf();
      throw GkmError("'" + std::string(y_id) + "' is not an endpoint of curve '" +
                     std::string(curve_id) + "'");
    }
    for (const auto& l : legs) {
      if (l.id != curve_id) continue;
      const LegInDivisor* ld = l.in(d);
      if (!ld)
        throw GkmError("curve '" + std::string(curve_id) + "' does not lie in divisor '" +
                       std::string(d_id) + "'");
      if (l.fp != y)
        throw GkmError("'" + std::string(y_id) + "' is not an endpoint of curve '" +
                       std::string(curve_id) + "'");
      return ld->normal.rf();
    }
    throw GkmError("unknown curve '" + std::string(curve_id) + "'");
  }

  void validate() const;
  std::string describe() const;
};

namespace detail {

inline std::array<Weight, 3> sorted3(std::array<Weight, 3> w) {
  std::sort(w.begin(), w.end(), [](Weight x, Weight y) { return y < x; });
  return w;
}
inline std::array<Weight, 2> sorted2(std::array<Weight, 2> w) {
  if (w[0] < w[1]) std::swap(w[0], w[1]);
  return w;
}

// ---------------------------------------------------------------------------
// Built-in construction from the planar diagram.

struct P2 {
  long x = 0, y = 0;
  friend bool operator==(const P2&, const P2&) = default;
};

inline long det3(const std::array<std::array<long, 3>, 3>& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

// tangent weight along the curve dual to the edge of `tri` opposite vertex
// `opp`: the dual-basis functional w with w.(lift v_j) = delta_{j,opp},
// projected by (m1, m2, _) -> m2*e1 + m1*e2
inline Weight edge_tangent(const std::array<P2, 3>& tri, int opp) {
  std::array<std::array<long, 3>, 3> M;
  for (int j = 0; j < 3; ++j) M[j] = {tri[std::size_t(j)].x, tri[std::size_t(j)].y, 1};
  const long d = det3(M);
  if (d != 1 && d != -1) throw GkmError("non-unimodular triangle in diagram");
  long sol[3];
  for (int k = 0; k < 3; ++k) {
    auto Mk = M;
    for (int j = 0; j < 3; ++j) Mk[std::size_t(j)][std::size_t(k)] = (j == opp) ? 1 : 0;
    sol[k] = det3(Mk) / d;
  }
  return Weight{int(sol[1]), int(sol[0])};
}

struct DiagramBuilder {
  // lattice points in divisor-id order; triangles as point-index triples in
  // fixed-point order
  std::vector<P2> pts;
  std::vector<std::array<int, 3>> tris;
  std::string name;

  int pt_at(const P2& p) const {
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (pts[i] == p) return (int)i;
    throw GkmError("diagram point not registered");
  }

  GkmGraph build(bool alt_orientation) const;
};

inline GkmGraph DiagramBuilder::build(bool alt) const {
  GkmGraph g;
  g.name = name;
  g.alt_orientation = alt;

  struct EdgeUse {
    int lo, hi;      // point indices, lo < hi
    int tri;         // triangle using it
    int opp;         // opposite vertex slot in that triangle
  };
  std::vector<EdgeUse> uses;
  for (std::size_t t = 0; t < tris.size(); ++t) {
    for (int opp = 0; opp < 3; ++opp) {
      const int u = tris[t][std::size_t((opp + 1) % 3)];
      const int v = tris[t][std::size_t((opp + 2) % 3)];
      uses.push_back({std::min(u, v), std::max(u, v), (int)t, opp});
    }
  }
  auto tri_pts = [&](int t) {
    return std::array<P2, 3>{pts[std::size_t(tris[std::size_t(t)][0])],
                             pts[std::size_t(tris[std::size_t(t)][1])],
                             pts[std::size_t(tris[std::size_t(t)][2])]};
  };
  // the two edges of triangle t at vertex slot s are opposite the other slots
  auto other_edge_tangent = [&](int t, int pt_idx, int not_opp) {
    for (int opp = 0; opp < 3; ++opp) {
      if (opp == not_opp) continue;
      if (tris[std::size_t(t)][std::size_t(opp)] == pt_idx) continue;
      return edge_tangent(tri_pts(t), opp);
    }
    throw GkmError("edge lookup failed");
  };
  auto slot_of = [&](int t, int pt_idx) {
    for (int s = 0; s < 3; ++s)
      if (tris[std::size_t(t)][std::size_t(s)] == pt_idx) return s;
    return -1;
  };

  for (std::size_t t = 0; t < tris.size(); ++t) {
    FixedPoint fp;
    fp.id = "y" + std::to_string(t + 1);
    fp.tangent = sorted3({edge_tangent(tri_pts((int)t), 0),
                          edge_tangent(tri_pts((int)t), 1),
                          edge_tangent(tri_pts((int)t), 2)});
    g.points.push_back(std::move(fp));
  }

  for (std::size_t p = 0; p < pts.size(); ++p) {
    Divisor d;
    d.id = "d" + std::to_string(p + 1);
    for (std::size_t t = 0; t < tris.size(); ++t) {
      const int s = slot_of((int)t, (int)p);
      if (s < 0) continue;
      DivisorPoint dp;
      dp.fp = (int)t;
      int found = 0;
      Weight w[2];
      for (int opp = 0; opp < 3; ++opp)
        if (opp != s) w[found++] = edge_tangent(tri_pts((int)t), opp);
      dp.tangent = sorted2({w[0], w[1]});
      d.points.push_back(dp);
    }
    g.divisors.push_back(std::move(d));
  }

  // pair up edge uses: shared edge -> compact curve, single use -> leg
  std::vector<bool> consumed(uses.size(), false);
  int n_curve = 0;
  for (std::size_t i = 0; i < uses.size(); ++i) {
    if (consumed[i]) continue;
    int partner = -1;
    for (std::size_t j = i + 1; j < uses.size(); ++j)
      if (!consumed[j] && uses[j].lo == uses[i].lo && uses[j].hi == uses[i].hi) {
        partner = (int)j;
        break;
      }
    if (partner < 0) continue;  // legs handled below
    consumed[i] = consumed[std::size_t(partner)] = true;
    const EdgeUse& a = uses[i];
    const EdgeUse& b = uses[std::size_t(partner)];
    CompactCurve c;
    c.id = "i" + std::to_string(++n_curve);
    c.fp0 = a.tri;
    c.fp1 = b.tri;
    c.dir0 = edge_tangent(tri_pts(a.tri), a.opp);
    const Weight dir1 = edge_tangent(tri_pts(b.tri), b.opp);
    if (!(dir1 == -c.dir0))
      throw GkmError("GKM edge condition failed in diagram construction");
    for (const int p : {a.lo, a.hi}) {
      CurveInDivisor cd;
      cd.div = p;
      cd.normal0 = other_edge_tangent(a.tri, p, a.opp);
      cd.normal1 = other_edge_tangent(b.tri, p, b.opp);
      c.divisors.push_back(cd);
    }
    g.curves.push_back(std::move(c));
  }

  std::vector<std::size_t> leg_uses;
  for (std::size_t i = 0; i < uses.size(); ++i)
    if (!consumed[i]) leg_uses.push_back(i);
  std::sort(leg_uses.begin(), leg_uses.end(), [&](std::size_t x, std::size_t y) {
    if (uses[x].lo != uses[y].lo) return uses[x].lo < uses[y].lo;
    return uses[x].hi < uses[y].hi;
  });
  for (std::size_t k = 0; k < leg_uses.size(); ++k) {
    const EdgeUse& u = uses[leg_uses[k]];
    Leg l;
    l.id = "s" + std::to_string(k + 1);
    l.fp = u.tri;
    l.dir = edge_tangent(tri_pts(u.tri), u.opp);
    for (const int p : {u.lo, u.hi}) {
      LegInDivisor ld;
      ld.div = p;
      ld.normal = other_edge_tangent(u.tri, p, u.opp);
      l.divisors.push_back(ld);
    }
    g.legs.push_back(std::move(l));
  }

  if (alt) {
    for (auto& fp : g.points) fp.tangent = sorted3({fp.tangent[0].swapped23(),
                                                    fp.tangent[1].swapped23(),
                                                    fp.tangent[2].swapped23()});
    for (auto& d : g.divisors)
      for (auto& dp : d.points)
        dp.tangent = sorted2({dp.tangent[0].swapped23(), dp.tangent[1].swapped23()});
    for (auto& c : g.curves) {
      c.dir0 = c.dir0.swapped23();
      for (auto& cd : c.divisors) {
        cd.normal0 = cd.normal0.swapped23();
        cd.normal1 = cd.normal1.swapped23();
      }
    }
    for (auto& l : g.legs) {
      l.dir = l.dir.swapped23();
      for (auto& ld : l.divisors) ld.normal = ld.normal.swapped23();
    }
  }
  return g;
}

// classification label for a divisor face, from the curves it contains:
// no compact curve -> affine plane cap; otherwise from the self-pairings
inline void attach_labels(GkmGraph& g) {
  for (std::size_t di = 0; di < g.divisors.size(); ++di) {
    Divisor& d = g.divisors[di];
    if (!d.label.empty()) continue;  // keep a caller-provided label
    std::vector<Int> self;
    for (const auto& c : g.curves) {
      const CurveInDivisor* cd = c.in((int)di);
      if (!cd) continue;
      RatFun chi;
      const DivisorPoint* p0 = d.at(c.fp0);
      const DivisorPoint* p1 = d.at(c.fp1);
      if (!p0 || !p1) continue;  // validate() reports this
      const RatFun k0 = -RatFun(p0->tangent[0].poly() * p0->tangent[1].poly()).inverse();
      const RatFun k1 = -RatFun(p1->tangent[0].poly() * p1->tangent[1].poly()).inverse();
      chi = cd->normal0.rf() * cd->normal0.rf() * k0 +
            cd->normal1.rf() * cd->normal1.rf() * k1;
      self.push_back(chi.is_integer() ? chi.as_int() : Int(99));
    }
    if (self.empty()) {
      d.label = "C2";
    } else if (self.size() == 1) {
      d.label = "O(" + Int(-self[0]).str() + ")";
    } else {
      bool all2 = true;
      for (const auto& s : self) all2 = all2 && s == 2;
      if (all2) {
        d.label = "A~" + std::to_string(self.size());
      } else {
        d.label = "S(";
        for (std::size_t k = 0; k < self.size(); ++k)
          d.label += (k ? "," : "") + Int(-self[k]).str();
        d.label += ")";
      }
    }
  }
}

}  // namespace detail

// built-in family: C3 and Y_{m,n} with m >= 1, n >= 0, m + n <= 4
inline GkmGraph build_ymn(int m, int n, bool alt_orientation = false) {
  if (m < 1 || n < 0 || m + n > 4)
    throw GkmError("built-in geometry Y(m,n) requires m >= 1, n >= 0, m+n <= 4");
  detail::DiagramBuilder b;
  b.name = (m == 1 && n == 0) ? "C3" : ("Y(" + std::to_string(m) + "," + std::to_string(n) + ")");
  for (int i = 0; i <= m; ++i) b.pts.push_back({i, 0});
  for (int j = 0; j <= n; ++j) b.pts.push_back({j, 1});
  for (int k = 1; k <= m; ++k) b.tris.push_back({k - 1, k, m + 1});
  for (int j = 1; j <= n; ++j) b.tris.push_back({m, m + j, m + j + 1});
  GkmGraph g = b.build(alt_orientation);
  detail::attach_labels(g);
  g.validate();
  return g;
}

inline GkmGraph build_c3(bool alt_orientation = false) {
  return build_ymn(1, 0, alt_orientation);
}

// ---------------------------------------------------------------------------
// Raw structured-text input.
//
//   fixed_point y1 { tangent: e1, e2, e3 }
//   divisor d1 { label: C2
//                at y1 { tangent: e1, e2 } }
//   curve i1 { endpoints: y1, y2
//              direction: e3              # at the first endpoint
//              in d2 { normal: e1, e1 } } # at the endpoints, in order
//   leg s1 { endpoint: y1
//            direction: e1
//            in d1 { normal: e2 } }

namespace detail {

inline Weight weight_from(const std::string& text, int line, int col) {
  RatFun r;
  try {
    r = rf_parse(text);
  } catch (const ParseError& e) {
    throw ParseError(line, col, std::string("bad weight: ") + e.what());
  }
  if (!r.den().is_one())
    throw ParseError(line, col, "weight '" + text + "' is not an integral form");
  Weight w;
  for (const auto& [e, c] : r.num().terms()) {
    if (e == Exp{1, 0, 0}) {
      w.a = static_cast<int>(static_cast<long>(c));
    } else if (e == Exp{0, 1, 0}) {
      w.b = static_cast<int>(static_cast<long>(c));
    } else {
      throw ParseError(line, col,
                       "weight '" + text + "' is not linear in e1, e2, e3");
    }
  }
  return w;
}

inline std::vector<Weight> weights_from(const DocAttr& a, std::size_t count) {
  const auto parts = split_csv(a.value);
  if (parts.size() != count)
    throw ParseError(a.line, a.col,
                     "expected " + std::to_string(count) + " weights in '" + a.key + "'");
  std::vector<Weight> out;
  for (const auto& p : parts) out.push_back(weight_from(p, a.line, a.col));
  return out;
}

}  // namespace detail

inline GkmGraph parse_gkm_text(std::string_view text) {
  const DocNode root = doc_parse(text);
  GkmGraph g;
  g.name = "raw";
  if (const DocAttr* nm = root.attr("name")) g.name = nm->value;

  for (const DocNode* fp : root.children_of("fixed_point")) {
    const DocAttr* t = fp->attr("tangent");
    if (!t) throw ParseError(fp->line, fp->col, "fixed_point needs 'tangent'");
    const auto w = detail::weights_from(*t, 3);
    g.points.push_back({fp->name, detail::sorted3({w[0], w[1], w[2]})});
  }
  for (const DocNode* dv : root.children_of("divisor")) {
    Divisor d;
    d.id = dv->name;
    if (const DocAttr* l = dv->attr("label")) d.label = l->value;
    for (const DocNode* at : dv->children_of("at")) {
      const DocAttr* t = at->attr("tangent");
      if (!t) throw ParseError(at->line, at->col, "divisor point needs 'tangent'");
      const auto w = detail::weights_from(*t, 2);
      d.points.push_back({g.fp_index(at->name), detail::sorted2({w[0], w[1]})});
    }
    g.divisors.push_back(std::move(d));
  }
  for (const DocNode* cv : root.children_of("curve")) {
    CompactCurve c;
    c.id = cv->name;
    const DocAttr* ends = cv->attr("endpoints");
    if (!ends) throw ParseError(cv->line, cv->col, "curve needs 'endpoints'");
    const auto parts = split_csv(ends->value);
    if (parts.size() != 2)
      throw ParseError(ends->line, ends->col, "curve needs exactly two endpoints");
    c.fp0 = g.fp_index(parts[0]);
    c.fp1 = g.fp_index(parts[1]);
    const DocAttr* dir = cv->attr("direction");
    if (!dir) throw ParseError(cv->line, cv->col, "curve needs 'direction'");
    c.dir0 = detail::weight_from(dir->value, dir->line, dir->col);
    for (const DocNode* in : cv->children_of("in")) {
      const DocAttr* nrm = in->attr("normal");
      if (!nrm) throw ParseError(in->line, in->col, "curve 'in' block needs 'normal'");
      const auto w = detail::weights_from(*nrm, 2);
      c.divisors.push_back({g.div_index(in->name), w[0], w[1]});
    }
    g.curves.push_back(std::move(c));
  }
  for (const DocNode* lg : root.children_of("leg")) {
    Leg l;
    l.id = lg->name;
    if (const DocAttr* ep = lg->attr("endpoint")) {
      l.fp = g.fp_index(ep->value);
      const DocAttr* dir = lg->attr("direction");
      if (!dir) throw ParseError(lg->line, lg->col, "leg needs 'direction'");
      l.dir = detail::weight_from(dir->value, dir->line, dir->col);
    }
    for (const DocNode* in : lg->children_of("in")) {
      LegInDivisor ld;
      ld.div = g.div_index(in->name);
      if (const DocAttr* nrm = in->attr("normal"))
        ld.normal = detail::weight_from(nrm->value, nrm->line, nrm->col);
      l.divisors.push_back(ld);
    }
    g.legs.push_back(std::move(l));
  }
  detail::attach_labels(g);
  g.validate();
  return g;
}

inline void GkmGraph::validate() const {
  auto contains2 = [](const std::array<Weight, 3>& triple, const std::array<Weight, 2>& pair) {
    // sub-multiset test
    for (int skip = 0; skip < 3; ++skip) {
      std::vector<Weight> rest;
      for (int i = 0; i < 3; ++i)
        if (i != skip) rest.push_back(triple[std::size_t(i)]);
      if ((rest[0] == pair[0] && rest[1] == pair[1]) ||
          (rest[0] == pair[1] && rest[1] == pair[0]))
        return true;
    }
    return false;
  };

  for (const auto& fp : points) {
    Weight s = fp.tangent[0] + fp.tangent[1] + fp.tangent[2];
    if (!s.is_zero())
      throw GkmError("invalid geometry: tangent triple at '" + fp.id +
                     "' does not sum to zero (Calabi-Yau condition)");
  }
  for (const auto& d : divisors) {
    for (const auto& dp : d.points) {
      if (dp.fp < 0 || dp.fp >= (int)points.size())
        throw GkmError("invalid geometry: divisor '" + d.id + "' references a missing fixed point");
      if (!contains2(points[std::size_t(dp.fp)].tangent, dp.tangent))
        throw GkmError("invalid geometry: surface tangent pair of '" + d.id + "' at '" +
                       points[std::size_t(dp.fp)].id +
                       "' is not a sub-multiset of the tangent triple");
    }
  }
  for (const auto& c : curves) {
    if (c.fp0 == c.fp1 || c.fp0 < 0 || c.fp1 < 0)
      throw GkmError("invalid geometry: curve '" + c.id +
                     "' must have two distinct endpoints");
    for (const auto& cd : c.divisors) {
      const Divisor& d = divisors[std::size_t(cd.div)];
      const DivisorPoint* p0 = d.at(c.fp0);
      const DivisorPoint* p1 = d.at(c.fp1);
      if (!p0 || !p1)
        throw GkmError("invalid geometry: divisor '" + d.id + "' contains curve '" + c.id +
                       "' but not both endpoints");
      // direction + normal must reconstruct the surface tangent pair
      const auto pair0 = detail::sorted2({c.dir0, cd.normal0});
      const auto pair1 = detail::sorted2({-c.dir0, cd.normal1});
      if (!(pair0 == p0->tangent))
        throw GkmError("invalid geometry: direction and normal of curve '" + c.id +
                       "' in '" + d.id + "' at '" + points[std::size_t(c.fp0)].id +
                       "' do not reconstruct the surface tangent pair");
      if (!(pair1 == p1->tangent))
        throw GkmError("invalid geometry: direction and normal of curve '" + c.id +
                       "' in '" + d.id + "' at '" + points[std::size_t(c.fp1)].id +
                       "' do not reconstruct the surface tangent pair");
    }
  }
  for (const auto& l : legs) {
    if (l.fp < 0) continue;
    for (const auto& ld : l.divisors) {
      const Divisor& d = divisors[std::size_t(ld.div)];
      const DivisorPoint* p = d.at(l.fp);
      if (!p)
        throw GkmError("invalid geometry: divisor '" + d.id + "' contains curve '" + l.id +
                       "' but not its endpoint");
      const auto pair = detail::sorted2({l.dir, ld.normal});
      if (!(pair == p->tangent))
        throw GkmError("invalid geometry: direction and normal of curve '" + l.id +
                       "' in '" + d.id + "' do not reconstruct the surface tangent pair");
    }
  }
}

inline std::string GkmGraph::describe() const {
  std::string s;
  s += "geometry: " + name + "\n";
  s += "orientation: " + orientation_label() + "\n";
  s += "fixed_points: " + std::to_string(points.size()) + "\n";
  for (const auto& fp : points) {
    s += "  " + fp.id + "  tangent {" + fp.tangent[0].str() + ", " +
         fp.tangent[1].str() + ", " + fp.tangent[2].str() + "}\n";
  }
  s += "divisors: " + std::to_string(divisors.size()) + "\n";
  for (const auto& d : divisors) {
    s += "  " + d.id + (d.label.empty() ? "" : "  [" + d.label + "]");
    for (const auto& dp : d.points)
      s += "  " + points[std::size_t(dp.fp)].id + " {" + dp.tangent[0].str() + ", " +
           dp.tangent[1].str() + "}";
    s += "\n";
  }
  s += "compact_curves: " + std::to_string(curves.size()) + "\n";
  for (const auto& c : curves) {
    s += "  " + c.id + "  " + points[std::size_t(c.fp0)].id + " -- " +
         points[std::size_t(c.fp1)].id + "  direction " + c.dir0.str() + " at " +
         points[std::size_t(c.fp0)].id + "\n";
    for (const auto& cd : c.divisors)
      s += "      in " + divisors[std::size_t(cd.div)].id + ": normal " +
           cd.normal0.str() + " at " + points[std::size_t(c.fp0)].id + ", " +
           cd.normal1.str() + " at " + points[std::size_t(c.fp1)].id + "\n";
  }
  s += "noncompact_curves: " + std::to_string(legs.size()) + "\n";
  for (const auto& l : legs) {
    s += "  " + l.id;
    if (l.fp >= 0)
      s += "  at " + points[std::size_t(l.fp)].id + "  direction " + l.dir.str();
    for (const auto& ld : l.divisors)
      s += "  in " + divisors[std::size_t(ld.div)].id + ": normal " + ld.normal.str();
    s += "\n";
  }
  return s;
}

// dispatcher: "c3", "C3", "y(2,0)", "y20", "Y(1,1)" or raw structured text
inline GkmGraph build_geometry(std::string_view spec, bool alt_orientation = false) {
  if (spec.find('{') != std::string_view::npos) {
    GkmGraph g = parse_gkm_text(spec);
    if (alt_orientation)
      throw GkmError("orientation flag applies to built-in geometries only");
    return g;
  }
  std::string t;
  for (const char c : spec)
    if (!std::isspace((unsigned char)c)) t += (char)std::tolower((unsigned char)c);
  if (t == "c3") return build_c3(alt_orientation);
  std::vector<int> digits;
  if (!t.empty() && t[0] == 'y') {
    for (const char c : t)
      if (std::isdigit((unsigned char)c)) digits.push_back(c - '0');
  }
  if (digits.size() == 2) return build_ymn(digits[0], digits[1], alt_orientation);
  throw GkmError("unknown geometry '" + std::string(spec) +
                 "' (expected c3, y(m,n), or raw GKM text)");
}

}  // namespace toricva
