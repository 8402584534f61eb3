// Lattice data of the free-field algebra attached to a divisor with
// multiplicities: one free boson per (series step, fixed point of the step's
// face), levels -1/e_T, lattice cocharacters from the compact curves of each
// sheet, and screening cocharacters between consecutive series steps. The
// integer pairing chi computed from this data is the (negated) intersection
// pairing of the surface, and the construction refuses data for which it
// fails to be integral.

#pragma once

#include <map>
#include <string>
#include <vector>

#include "toricva/gkm.hpp"
#include "toricva/textdoc.hpp"

namespace toricva {

struct LatticeError : std::runtime_error {
  explicit LatticeError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DivisorSpec {
  std::vector<std::pair<std::string, int>> components;  // (divisor id, r_d >= 1)
  std::vector<std::string> series;                      // each id appears r_d times

  void validate(const GkmGraph& g) const {
    if (series.empty()) throw LatticeError("empty composition series");
    std::map<std::string, int> counts;
    for (const auto& id : series) {
      g.div_index(id);  // throws on unknown divisor
      ++counts[id];
    }
    std::map<std::string, int> declared;
    for (const auto& [id, r] : components) {
      if (r < 1) throw LatticeError("multiplicity of '" + id + "' must be >= 1");
      if (!declared.emplace(id, r).second)
        throw LatticeError("divisor '" + id + "' listed twice in components");
    }
    if (declared != counts)
      throw LatticeError("components do not match the composition series");
  }

  std::string str() const {
    std::string s;
    for (const auto& [id, r] : components)
      s += (s.empty() ? "" : " + ") + std::to_string(r) + "[" + id + "]";
    return s;
  }
};

inline DivisorSpec divisor_spec_from_series(std::vector<std::string> series) {
  DivisorSpec s;
  s.series = std::move(series);
  for (const auto& id : s.series) {
    bool found = false;
    for (auto& [cid, r] : s.components)
      if (cid == id) {
        ++r;
        found = true;
      }
    if (!found) s.components.emplace_back(id, 1);
  }
  return s;
}

// Accepted forms:
//   "d1, d1, d2"                      the series itself
//   "S(2,1,0,0)"                      multiplicities in divisor-id order
//   "series: d1, d1, d2"              structured text, optionally with
//   "components: 2*d1, 1*d2"          explicit multiplicities
inline DivisorSpec parse_divisor_spec(const GkmGraph& g, std::string_view text) {
  const auto strip = [](std::string_view v) {
    while (!v.empty() && std::isspace((unsigned char)v.front())) v.remove_prefix(1);
    while (!v.empty() && std::isspace((unsigned char)v.back())) v.remove_suffix(1);
    return v;
  };
  const std::string_view t = strip(text);
  if (t.empty()) throw LatticeError("empty composition series");
  DivisorSpec spec;
  if (t.find(':') != std::string_view::npos || t.find('{') != std::string_view::npos) {
    const DocNode root = doc_parse(t);
    const DocAttr* ser = root.attr("series");
    if (!ser) throw LatticeError("divisor spec needs a 'series' attribute");
    spec = divisor_spec_from_series(split_csv(ser->value));
    if (const DocAttr* comp = root.attr("components")) {
      std::vector<std::pair<std::string, int>> declared;
      for (const std::string& item : split_csv(comp->value)) {
        const auto star = item.find('*');
        if (star == std::string::npos) {
          declared.emplace_back(item, 1);
        } else {
          const std::string head = std::string(strip(item.substr(0, star)));
          const std::string tail = std::string(strip(item.substr(star + 1)));
          try {
            declared.emplace_back(tail, std::stoi(head));
          } catch (const std::exception&) {
            throw LatticeError("bad component '" + item + "' (expected r*d)");
          }
        }
      }
      spec.components = std::move(declared);
    }
  } else if ((t.front() == 'S' || t.front() == 's') && t.find('(') != std::string_view::npos) {
    const auto open = t.find('(');
    const auto close = t.rfind(')');
    if (close == std::string_view::npos || close < open)
      throw LatticeError("bad multiplicity list '" + std::string(t) + "'");
    std::vector<std::string> series;
    const auto parts = split_csv(t.substr(open + 1, close - open - 1));
    if (parts.size() > g.divisors.size())
      throw LatticeError("more multiplicities than divisors");
    for (std::size_t i = 0; i < parts.size(); ++i) {
      int r = 0;
      try {
        r = std::stoi(parts[i]);
      } catch (const std::exception&) {
        throw LatticeError("bad multiplicity '" + parts[i] + "'");
      }
      for (int c = 0; c < r; ++c) series.push_back(g.divisors[i].id);
    }
    spec = divisor_spec_from_series(std::move(series));
  } else {
    spec = divisor_spec_from_series(split_csv(t));
  }
  spec.validate(g);
  return spec;
}

struct SheetPoint {
  int step = 0;  // 0-based index into the series
  int occ = 0;   // 0-based occurrence of this divisor within the series
  int fp = 0;    // fixed-point index in the geometry
};

struct SheetCurve {
  int step = 0;
  int curve = 0;  // compact-curve index in the geometry
};

struct Screening {
  int step = 0;     // 0-based: acts between series steps step and step+1
  std::string leg;  // noncompact-curve id
  std::vector<RatFun> values;  // cocharacter over the sheet points

  std::string tag() const { return leg + "@" + std::to_string(step + 1); }
};

struct LatticeData {
  GkmGraph geom;
  DivisorSpec spec;
  std::vector<int> series_div;  // divisor index per series step
  std::vector<SheetPoint> points;
  std::vector<SheetCurve> curves;
  std::vector<RatFun> levels;                       // k_y per sheet point
  std::vector<std::vector<RatFun>> curve_cochars;   // per sheet curve
  std::vector<Screening> screenings;
  std::vector<std::string> warnings;
  // pairings among sector-lattice generators (sheet curves first, then
  // screenings), cached once so cocycle signs need no repeated pairing work
  std::vector<std::vector<RatFun>> gen_pair;

  std::size_t n_points() const { return points.size(); }
  std::size_t n_curves() const { return curves.size(); }
  std::size_t n_gens() const { return curves.size() + screenings.size(); }

  const std::vector<RatFun>& gen_cochar(std::size_t g) const {
    return g < curves.size() ? curve_cochars[g] : screenings[g - curves.size()].values;
  }

  std::string gen_tag(std::size_t g) const {
    return g < curves.size() ? curve_tag(g) : screenings[g - curves.size()].tag();
  }

  void build_gen_pair() {
    gen_pair.assign(n_gens(), std::vector<RatFun>(n_gens()));
    for (std::size_t i = 0; i < n_gens(); ++i)
      for (std::size_t j = 0; j < n_gens(); ++j)
        gen_pair[i][j] = pair_values(gen_cochar(i), gen_cochar(j));
  }

  int point_index(int step, int fp) const {
    for (std::size_t i = 0; i < points.size(); ++i)
      if (points[i].step == step && points[i].fp == fp) return (int)i;
    return -1;
  }

  std::string point_name(std::size_t i) const { return "phi" + std::to_string(i + 1); }

  std::string point_label(std::size_t i) const {
    const SheetPoint& p = points[i];
    return "(" + geom.divisors[std::size_t(series_div[std::size_t(p.step)])].id +
           " sheet " + std::to_string(p.occ + 1) + ", " +
           geom.points[std::size_t(p.fp)].id + ")";
  }

  std::string curve_tag(std::size_t i) const {
    return geom.curves[std::size_t(curves[i].curve)].id + "@" +
           std::to_string(curves[i].step + 1);
  }

  // <a, b> = sum over sheet points of a(1_y) b(1_y) k_y
  RatFun pair_values(const std::vector<RatFun>& a, const std::vector<RatFun>& b) const {
    RatFun out;
    for (std::size_t i = 0; i < points.size(); ++i)
      if (!a[i].is_zero() && !b[i].is_zero()) out += a[i] * b[i] * levels[i];
    return out;
  }

  Int require_integer(const RatFun& r, const std::string& what) const {
    if (!r.is_integer())
      throw LatticeError("integrality violation: " + what + " = " + r.str());
    return r.as_int();
  }

  Int chi(std::size_t i, std::size_t j) const {
    return require_integer(pair_values(curve_cochars[i], curve_cochars[j]),
                           "chi(" + curve_tag(i) + ", " + curve_tag(j) + ")");
  }

  std::vector<std::vector<Int>> chi_matrix() const {
    std::vector<std::vector<Int>> m(curves.size(), std::vector<Int>(curves.size()));
    for (std::size_t i = 0; i < curves.size(); ++i)
      for (std::size_t j = 0; j < curves.size(); ++j) m[i][j] = chi(i, j);
    return m;
  }

  // cocharacter of the lattice vector l (integer combination of sheet curves)
  std::vector<RatFun> sector_cochar(const std::vector<Int>& l) const {
    std::vector<RatFun> v(points.size());
    for (std::size_t i = 0; i < curves.size(); ++i) {
      if (l[i] == 0) continue;
      const RatFun c{Int(l[i])};
      for (std::size_t p = 0; p < points.size(); ++p)
        if (!curve_cochars[i][p].is_zero()) v[p] += c * curve_cochars[i][p];
    }
    return v;
  }

  Int chi_sector(const std::vector<Int>& l) const {
    const auto v = sector_cochar(l);
    return require_integer(pair_values(v, v), "chi(l, l)");
  }

  std::string cochar_str(const std::vector<RatFun>& v) const {
    std::vector<std::pair<std::size_t, RatFun>> nz;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (!v[i].is_zero()) nz.emplace_back(i, v[i]);
    if (nz.empty()) return "0";
    const auto needs_paren = [](const std::string& s) {
      for (std::size_t i = 1; i < s.size(); ++i)
        if (s[i] == '+' || s[i] == '-') return true;
      return false;
    };
    const auto coeff = [&](const RatFun& r) {
      const std::string p = r.pretty();
      return needs_paren(p) ? "(" + p + ")" : p;
    };
    if (nz.size() == 2 && nz[0].second == nz[1].second)
      return coeff(nz[0].second) + "*(" + point_name(nz[0].first) + "+" +
             point_name(nz[1].first) + ")";
    if (nz.size() == 2 && nz[0].second == -nz[1].second)
      return coeff(nz[0].second) + "*(" + point_name(nz[0].first) + "-" +
             point_name(nz[1].first) + ")";
    std::string s;
    for (const auto& [i, val] : nz) {
      std::string c;
      if (val.is_one()) {
        c = s.empty() ? "" : "+";
      } else if ((-val).is_one()) {
        c = "-";
      } else {
        c = coeff(val);
        if (!s.empty() && c[0] != '-') c = "+" + c;
        c += "*";
      }
      s += c + point_name(i);
    }
    return s;
  }

  std::string describe() const;
};

inline LatticeData lattice_data(const GkmGraph& g, const DivisorSpec& spec) {
  spec.validate(g);
  LatticeData L;
  L.geom = g;
  L.spec = spec;

  std::map<int, int> seen;  // divisor index -> occurrences so far
  for (const std::string& id : spec.series) {
    const int d = g.div_index(id);
    const int step = (int)L.series_div.size();
    L.series_div.push_back(d);
    const int occ = seen[d]++;
    for (const DivisorPoint& dp : g.divisors[std::size_t(d)].points) {
      L.points.push_back({step, occ, dp.fp});
      L.levels.push_back(-RatFun(dp.tangent[0].poly() * dp.tangent[1].poly()).inverse());
    }
    for (std::size_t c = 0; c < g.curves.size(); ++c)
      if (g.curves[c].in(d)) L.curves.push_back({step, (int)c});
  }

  for (const SheetCurve& sc : L.curves) {
    const CompactCurve& c = g.curves[std::size_t(sc.curve)];
    const CurveInDivisor* cd = c.in(L.series_div[std::size_t(sc.step)]);
    std::vector<RatFun> v(L.points.size());
    v[std::size_t(L.point_index(sc.step, c.fp0))] = cd->normal0.rf();
    v[std::size_t(L.point_index(sc.step, c.fp1))] = cd->normal1.rf();
    L.curve_cochars.push_back(std::move(v));
  }

  const int N = (int)spec.series.size();
  for (int k = 0; k + 1 < N; ++k) {
    const int da = L.series_div[std::size_t(k)];
    const int db = L.series_div[std::size_t(k + 1)];
    bool any = false;
    for (const Leg& leg : g.legs) {
      const LegInDivisor* la = leg.in(da);
      const LegInDivisor* lb = leg.in(db);
      if (!la || !lb || leg.fp < 0) continue;
      Screening s;
      s.step = k;
      s.leg = leg.id;
      s.values.assign(L.points.size(), RatFun());
      s.values[std::size_t(L.point_index(k, leg.fp))] = la->normal.rf();
      s.values[std::size_t(L.point_index(k + 1, leg.fp))] = -lb->normal.rf();
      L.screenings.push_back(std::move(s));
      any = true;
    }
    if (!any)
      L.warnings.push_back("empty screening set at step " + std::to_string(k + 1));
  }

  // integrality of the pairing is a consistency requirement on the input
  L.chi_matrix();
  for (const Screening& s : L.screenings)
    for (std::size_t i = 0; i < L.curves.size(); ++i)
      L.require_integer(L.pair_values(s.values, L.curve_cochars[i]),
                        "<" + s.tag() + ", " + L.curve_tag(i) + ">");
  L.build_gen_pair();
  return L;
}

inline LatticeData lattice_data(const GkmGraph& g, std::string_view spec_text) {
  return lattice_data(g, parse_divisor_spec(g, spec_text));
}

// Hand-built lattice data with prescribed boson levels, lattice directions,
// and screening exponents.  Used for rank-r free-field setups that are not
// tied to a toric diagram (the geometry slot is a placeholder).
inline LatticeData free_lattice(std::vector<RatFun> levels,
                                std::vector<std::vector<RatFun>> currents = {},
                                std::vector<std::vector<RatFun>> screens = {}) {
  LatticeData L;
  L.geom.name = "free";
  Divisor d;
  d.id = "d1";
  for (std::size_t i = 0; i < levels.size(); ++i) {
    FixedPoint fp;
    fp.id = "y" + std::to_string(i + 1);
    fp.tangent = detail::sorted3({Weight{1, 0}, Weight{0, 1}, Weight{-1, -1}});
    L.geom.points.push_back(fp);
    d.points.push_back({(int)i, detail::sorted2({Weight{1, 0}, Weight{0, 1}})});
    L.points.push_back({0, 0, (int)i});
  }
  L.geom.divisors.push_back(std::move(d));
  L.spec.components.push_back({"d1", 1});
  L.spec.series.push_back("d1");
  L.series_div.push_back(0);
  L.levels = std::move(levels);
  for (std::size_t i = 0; i < currents.size(); ++i) {
    if (currents[i].size() != L.points.size())
      throw LatticeError("lattice direction has the wrong number of entries");
    CompactCurve c;
    c.id = "i" + std::to_string(i + 1);
    L.geom.curves.push_back(std::move(c));
    L.curves.push_back({0, (int)i});
    L.curve_cochars.push_back(std::move(currents[i]));
  }
  for (std::size_t i = 0; i < screens.size(); ++i) {
    if (screens[i].size() != L.points.size())
      throw LatticeError("screening exponent has the wrong number of entries");
    Screening s;
    s.step = 0;
    s.leg = "q" + std::to_string(i + 1);
    s.values = std::move(screens[i]);
    L.screenings.push_back(std::move(s));
  }
  L.build_gen_pair();
  return L;
}

inline std::string LatticeData::describe() const {
  std::string s;
  s += "geometry: " + geom.name + "\n";
  s += "orientation: " + geom.orientation_label() + "\n";
  s += "divisor: " + spec.str() + "\n";
  s += "series:";
  for (std::size_t k = 0; k < spec.series.size(); ++k)
    s += (k ? ", " : " ") + spec.series[k];
  s += "\n";
  s += "free_bosons: " + std::to_string(points.size()) + "\n";
  for (std::size_t i = 0; i < points.size(); ++i)
    s += "  " + point_name(i) + "  " + point_label(i) + "  level " +
         levels[i].pretty() + "\n";
  s += "lattice_currents: " + std::to_string(curves.size()) + "\n";
  for (std::size_t i = 0; i < curves.size(); ++i)
    s += "  V[" + curve_tag(i) + "]  exponent " + cochar_str(curve_cochars[i]) + "\n";
  s += "screenings: " + std::to_string(screenings.size()) + "\n";
  for (const Screening& sc : screenings)
    s += "  Q[" + sc.tag() + "]  exponent " + cochar_str(sc.values) + "\n";
  if (!curves.empty()) {
    const auto m = chi_matrix();
    s += "chi_matrix:\n";
    for (std::size_t i = 0; i < m.size(); ++i) {
      s += "  [";
      for (std::size_t j = 0; j < m[i].size(); ++j)
        s += (j ? " " : "") + m[i][j].str();
      s += "]\n";
    }
  }
  for (const std::string& w : warnings) s += "warning: " + w + "\n";
  return s;
}

}  // namespace toricva
