// Equivariant localization on punctual moduli of the plane: monomial ideals
// (partitions) index the torus-fixed points, tangent spaces decompose into
// arm/leg weights, and correspondence operators act through Euler classes of
// incidence loci. Degree-one raising/lowering comes directly from the smooth
// one-step incidence variety; the degree-two generators are completed by
// transporting power-sum multiplication through the orthogonal-polynomial
// (Jack) basis pinned against the degree-one action, then certified by the
// Heisenberg commutators.

#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "toricva/chargen.hpp"  // detail::partitions_of
#include "toricva/gkm.hpp"      // tangent data for the resolved conifold
#include "toricva/parallel.hpp"
#include "toricva/ratfun.hpp"

namespace toricva {

// ---------------------------------------------------------------------------
struct Partition {
  std::vector<long> parts;  // weakly decreasing, strictly positive

  Partition() = default;
  Partition(std::initializer_list<long> p) : parts(p) { validate(); }
  explicit Partition(std::vector<long> p) : parts(std::move(p)) { validate(); }

  void validate() const {
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (parts[i] <= 0) throw std::invalid_argument("Partition: parts must be positive");
      if (i > 0 && parts[i] > parts[i - 1])
        throw std::invalid_argument("Partition: parts must be weakly decreasing");
    }
  }
  long size() const { return std::accumulate(parts.begin(), parts.end(), 0L); }
  long rows() const { return (long)parts.size(); }
  long part(long i) const { return (i >= 0 && i < rows()) ? parts[(std::size_t)i] : 0; }
  long col_height(long j) const {  // transpose part: #{i : parts[i] > j}
    long h = 0;
    while (h < rows() && parts[(std::size_t)h] > j) ++h;
    return h;
  }
  Partition transposed() const {
    std::vector<long> t;
    for (long j = 0; j < part(0); ++j) t.push_back(col_height(j));
    return Partition(std::move(t));
  }
  long multiplicity(long v) const {
    return std::count(parts.begin(), parts.end(), v);
  }
  auto operator<=>(const Partition&) const = default;

  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(parts[i]);
    }
    return s + ")";
  }
};

inline std::vector<Partition> all_partitions(long n) {
  std::vector<Partition> out;
  for (auto& p : detail::partitions_of(n)) out.push_back(Partition(std::move(p)));
  return out;  // reverse-lexicographic (largest part first) refines dominance
}

// partitions obtained by adding one box (a corner cell)
inline std::vector<Partition> add_one_box(const Partition& la) {
  std::vector<Partition> out;
  for (long i = 0; i <= la.rows(); ++i) {
    if (i > 0 && la.part(i) == la.part(i - 1)) continue;  // not a valid corner
    std::vector<long> p = la.parts;
    if (i == la.rows())
      p.push_back(1);
    else
      ++p[(std::size_t)i];
    out.push_back(Partition(std::move(p)));
  }
  return out;
}

// partitions obtained by removing one box
inline std::vector<Partition> remove_one_box(const Partition& mu) {
  std::vector<Partition> out;
  for (long i = 0; i < mu.rows(); ++i) {
    if (i + 1 < mu.rows() && mu.part(i) == mu.part(i + 1)) continue;
    std::vector<long> p = mu.parts;
    --p[(std::size_t)i];
    if (p[(std::size_t)i] == 0) p.pop_back();
    out.push_back(Partition(std::move(p)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// A torus weight as an integer pair (p, q) standing for p*w1 + q*w2.
using WPair = std::pair<long, long>;

// Tangent weights of the punctual moduli space at the monomial ideal of la:
// for every cell, arm and leg give the pair (arm+1, -leg), (-arm, leg+1).
inline std::vector<WPair> hilb_tangent(const Partition& la) {
  std::vector<WPair> w;
  w.reserve((std::size_t)(2 * la.size()));
  for (long i = 0; i < la.rows(); ++i)
    for (long j = 0; j < la.part(i); ++j) {
      const long arm = la.part(i) - j - 1;
      const long leg = la.col_height(j) - i - 1;
      w.push_back({arm + 1, -leg});
      w.push_back({-arm, leg + 1});
    }
  return w;
}

inline RatFun euler_class(const std::vector<WPair>& ws, const RatFun& w1, const RatFun& w2) {
  RatFun e(1);
  for (const auto& [p, q] : ws) e *= w1 * RatFun(Int(p)) + w2 * RatFun(Int(q));
  return e;
}

namespace detail {

// Staircase generators x^a y^b of the monomial ideal of la (cell (i,j) of la
// is the monomial x^j y^i), ordered by increasing y-exponent.
inline std::vector<WPair> ideal_generators(const Partition& la) {
  std::vector<WPair> g;
  for (long i = 0; i < la.rows(); ++i)
    if (i == 0 || la.part(i) < la.part(i - 1)) g.push_back({la.part(i), i});
  g.push_back({0, la.rows()});
  return g;
}

// T-weight multiset of Hom(I_mu, O/I_la) for monomial ideals. A monomial
// function x^a y^b carries weight -(a w1 + b w2); a homomorphism of weight w
// sends each generator to the (at most one) quotient monomial of matching
// weight, subject to the adjacent-pair syzygy relations. Each syzygy couples
// at most two unknowns with unit coefficients, so the kernel is counted by
// propagating equalities and forced zeros.
inline std::vector<WPair> hom_weights(const Partition& mu, const Partition& la) {
  const std::vector<WPair> gens = ideal_generators(mu);
  const long ng = (long)gens.size();

  // quotient monomials of la, addressable by weight
  std::map<WPair, WPair> basis;  // weight -> (x-exp, y-exp)
  for (long i = 0; i < la.rows(); ++i)
    for (long j = 0; j < la.part(i); ++j) basis[{-j, -i}] = {j, i};
  const auto in_quotient = [&](long x, long y) {
    return y < la.rows() && x < la.part(y);
  };

  std::set<WPair> cands;
  for (const auto& [bw, be] : basis)
    for (const auto& [ga, gb] : gens) cands.insert({bw.first + ga, bw.second + gb});

  std::vector<WPair> out;
  for (const WPair& w : cands) {
    // target monomial for each generator, or absent
    std::vector<std::optional<WPair>> tgt((std::size_t)ng);
    for (long k = 0; k < ng; ++k) {
      const WPair tw = {w.first - gens[(std::size_t)k].first,
                        w.second - gens[(std::size_t)k].second};
      auto it = basis.find(tw);
      if (it != basis.end()) tgt[(std::size_t)k] = it->second;
    }
    // propagate syzygies: y^db * f(g_k) = x^da * f(g_{k+1}) in O/I_la
    std::vector<long> cls((std::size_t)ng, -1);  // union class per generator
    std::vector<bool> zero((std::size_t)ng, false);
    long ncls = 0;
    for (long k = 0; k < ng; ++k)
      if (tgt[(std::size_t)k]) cls[(std::size_t)k] = ncls++;
    std::vector<long> root((std::size_t)ncls);
    std::iota(root.begin(), root.end(), 0);
    std::vector<bool> root_zero((std::size_t)ncls, false);
    const auto find = [&](long c) {
      while (root[(std::size_t)c] != c) c = root[(std::size_t)c] = root[(std::size_t)root[(std::size_t)c]];
      return c;
    };
    for (long k = 0; k + 1 < ng; ++k) {
      const long da = gens[(std::size_t)k].first - gens[(std::size_t)k + 1].first;
      const long db = gens[(std::size_t)k + 1].second - gens[(std::size_t)k].second;
      // lhs: does y^db shift of the k-th target stay in the quotient?
      bool l_live = false, r_live = false;
      if (tgt[(std::size_t)k])
        l_live = in_quotient(tgt[(std::size_t)k]->first, tgt[(std::size_t)k]->second + db);
      if (tgt[(std::size_t)k + 1])
        r_live = in_quotient(tgt[(std::size_t)k + 1]->first + da, tgt[(std::size_t)k + 1]->second);
      if (l_live && r_live) {
        const long a = find(cls[(std::size_t)k]), b = find(cls[(std::size_t)k + 1]);
        if (a != b) {
          root[(std::size_t)a] = b;
          root_zero[(std::size_t)b] = root_zero[(std::size_t)b] || root_zero[(std::size_t)a];
        }
      } else if (l_live) {
        root_zero[(std::size_t)find(cls[(std::size_t)k])] = true;
      } else if (r_live) {
        root_zero[(std::size_t)find(cls[(std::size_t)k + 1])] = true;
      }
    }
    std::set<long> live;
    for (long k = 0; k < ng; ++k)
      if (cls[(std::size_t)k] >= 0) {
        const long r = find(cls[(std::size_t)k]);
        if (!root_zero[(std::size_t)r]) live.insert(r);
      }
    for (std::size_t c = 0; c < live.size(); ++c) out.push_back(w);
  }
  return out;
}

}  // namespace detail

// Tangent weights of the one-step incidence variety {I_mu subset I_la with one
// extra box} at a fixed pair: T(la) + T(mu) - Hom(I_mu, O/I_la), as an honest
// multiset difference. Self-checks: the difference must be effective, the
// dimension must be 2|mu|, and no weight may vanish.
inline std::vector<WPair> nested_tangent(const Partition& la, const Partition& mu) {
  if (mu.size() != la.size() + 1)
    throw std::invalid_argument("nested_tangent: sizes must differ by one box");
  for (long i = 0; i < mu.rows(); ++i)
    if (la.part(i) > mu.part(i))
      throw std::invalid_argument("nested_tangent: ideals are not nested");

  std::map<WPair, long> acc;
  for (const WPair& w : hilb_tangent(la)) ++acc[w];
  for (const WPair& w : hilb_tangent(mu)) ++acc[w];
  for (const WPair& w : detail::hom_weights(mu, la)) --acc[w];

  std::vector<WPair> out;
  for (const auto& [w, m] : acc) {
    if (m < 0)
      throw std::logic_error("nested_tangent: non-effective weight multiplicity at " + la.str() +
                             " in " + mu.str());
    if (m > 0 && w.first == 0 && w.second == 0)
      throw std::logic_error("nested_tangent: vanishing tangent weight");
    for (long i = 0; i < m; ++i) out.push_back(w);
  }
  if ((long)out.size() != 2 * mu.size())
    throw std::logic_error("nested_tangent: dimension is not 2n+2 at " + la.str() + " in " +
                           mu.str());
  return out;
}

// ---------------------------------------------------------------------------
// A localized state: finite combination of fixed-point classes.
struct LocState {
  std::map<Partition, RatFun> c;

  static LocState vacuum() { return basis(Partition{}); }
  static LocState basis(const Partition& la) {
    LocState s;
    s.c[la] = RatFun(1);
    return s;
  }
  bool is_zero() const { return c.empty(); }
  RatFun at(const Partition& la) const {
    auto it = c.find(la);
    return it == c.end() ? RatFun() : it->second;
  }
  void add(const Partition& la, const RatFun& v) {
    if (v.is_zero()) return;
    RatFun& dst = c[la];
    dst += v;
    if (dst.is_zero()) c.erase(la);
  }
  friend LocState operator+(const LocState& a, const LocState& b) {
    LocState out = a;
    for (const auto& [la, v] : b.c) out.add(la, v);
    return out;
  }
  friend LocState operator-(const LocState& a, const LocState& b) {
    LocState out = a;
    for (const auto& [la, v] : b.c) out.add(la, RatFun(0) - v);
    return out;
  }
  friend LocState operator*(const RatFun& s, const LocState& a) {
    LocState out;
    for (const auto& [la, v] : a.c) out.add(la, s * v);
    return out;
  }
  friend bool operator==(const LocState& a, const LocState& b) { return a.c == b.c; }

  std::string str() const {
    if (c.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [la, v] : c) {
      if (!first) os << " + ";
      first = false;
      os << "[" << v.pretty() << "] " << la.str();
    }
    return os.str();
  }
};

// Degree-one raising operator: the correspondence adds one box, weighted by
// Euler classes of the source tangent space over the incidence tangent space.
inline LocState nakajima_raise(const LocState& in, const RatFun& w1, const RatFun& w2) {
  LocState out;
  for (const auto& [la, v] : in.c) {
    const RatFun ela = euler_class(hilb_tangent(la), w1, w2);
    for (const Partition& mu : add_one_box(la))
      out.add(mu, v * ela / euler_class(nested_tangent(la, mu), w1, w2));
  }
  return out;
}

// Degree-one lowering operator: adjoint of the raising operator for the signed
// fixed-point pairing <la, mu> = (-1)^{|la|} delta_{la,mu} Eu(T la). The sign
// makes the pair close on the level -1/(w1 w2) exactly.
inline LocState nakajima_lower(const LocState& in, const RatFun& w1, const RatFun& w2) {
  LocState out;
  for (const auto& [mu, v] : in.c) {
    const RatFun emu = euler_class(hilb_tangent(mu), w1, w2);
    for (const Partition& la : remove_one_box(mu))
      out.add(la, RatFun(0) - v * emu / euler_class(nested_tangent(la, mu), w1, w2));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Symmetric-function layer. Everything is computed in the monomial basis with
// coefficients in Q(beta), beta being the deformation parameter of the inner
// product <p_la, p_mu> = delta z_la beta^{len(la)}; the concrete parameter is
// substituted only when operators are assembled.
namespace detail {

using MPoly = std::map<Partition, RatFun>;  // monomial-basis coefficients

// multiply by the k-th power sum: add k to one part (or append), with the
// multiplicity of the enlarged part in the result as coefficient
inline MPoly mul_power_sum(const MPoly& f, long k) {
  MPoly out;
  for (const auto& [la, c] : f) {
    std::set<long> values(la.parts.begin(), la.parts.end());
    values.insert(0);
    for (long u : values) {
      std::vector<long> p = la.parts;
      if (u == 0) {
        p.push_back(k);
      } else {
        auto it = std::find(p.begin(), p.end(), u);
        *it = u + k;
      }
      std::sort(p.begin(), p.end(), std::greater<long>());
      Partition mu(std::move(p));
      const long mult = mu.multiplicity(u + k);
      RatFun& dst = out[mu];
      dst += c * RatFun(Int(mult));
      if (dst.is_zero()) out.erase(mu);
    }
  }
  return out;
}

inline MPoly power_sum_in_m(const Partition& mu) {
  MPoly f;
  f[Partition{}] = RatFun(1);
  for (long part : mu.parts) f = mul_power_sum(f, part);
  return f;
}

inline Int z_factor(const Partition& la) {
  Int z = 1;
  long prev = -1, run = 0;
  for (long v : la.parts) {  // weakly decreasing: equal parts are adjacent
    if (v == prev) {
      ++run;
    } else {
      prev = v;
      run = 1;
    }
    z *= v * run;
  }
  return z;
}

// dense Gaussian inverse over the field; throws on singular input
inline std::vector<std::vector<RatFun>> invert_matrix(std::vector<std::vector<RatFun>> a) {
  const std::size_t n = a.size();
  std::vector<std::vector<RatFun>> inv(n, std::vector<RatFun>(n));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = RatFun(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col].is_zero()) ++piv;
    if (piv == n) throw std::logic_error("invert_matrix: singular matrix");
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    const RatFun d = a[col][col].inverse();
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] *= d;
      inv[col][j] *= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col].is_zero()) continue;
      const RatFun f = a[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

// Orthogonal triangular basis (Jack P, parameter beta) for one degree:
// P[i] = m_{order[i]} + later-order terms, mutually orthogonal.
struct JackTable {
  std::vector<Partition> order;             // reverse-lex, refines dominance
  std::vector<std::vector<RatFun>> P;       // coefficients over `order`
  std::vector<RatFun> norm;                 // <P_i, P_i>
  std::map<Partition, std::size_t> index;
};

inline JackTable jack_table(long d) {
  JackTable t;
  t.order = all_partitions(d);
  const std::size_t n = t.order.size();
  for (std::size_t i = 0; i < n; ++i) t.index[t.order[i]] = i;

  // power sums in the monomial basis: integer matrix A[i][j]
  std::vector<std::vector<RatFun>> at(n, std::vector<RatFun>(n));  // transpose of A
  for (std::size_t i = 0; i < n; ++i) {
    const MPoly p = power_sum_in_m(t.order[i]);
    for (const auto& [la, c] : p) at[t.index.at(la)][i] = c;
  }
  const auto c_mat = invert_matrix(std::move(at));  // m-coefficients -> p-coefficients

  // Gram matrix of the monomial basis: G = C^T diag(z beta^len) C
  const RatFun beta = RatFun::var(2);
  std::vector<RatFun> dz(n);
  for (std::size_t i = 0; i < n; ++i)
    dz[i] = RatFun(z_factor(t.order[i])) * beta.pow((int)t.order[i].rows());
  std::vector<std::vector<RatFun>> g(n, std::vector<RatFun>(n));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = j; k < n; ++k) {
      RatFun s(0);
      for (std::size_t i = 0; i < n; ++i) {
        if (c_mat[i][j].is_zero() || c_mat[i][k].is_zero()) continue;
        s += c_mat[i][j] * c_mat[i][k] * dz[i];
      }
      g[j][k] = s;
      g[k][j] = s;
    }

  // Gram-Schmidt from the bottom of the dominance order upward
  t.P.assign(n, {});
  t.norm.assign(n, RatFun(0));
  std::vector<std::vector<RatFun>> gp(n);  // G * P[i], cached
  for (std::size_t ii = n; ii-- > 0;) {
    std::vector<RatFun> v(n);
    v[ii] = RatFun(1);
    for (std::size_t j = ii + 1; j < n; ++j) {
      // <e_ii, P_j> = (G P_j)[ii]
      const RatFun coef = gp[j][ii] / t.norm[j];
      if (coef.is_zero()) continue;
      for (std::size_t k = j; k < n; ++k) v[k] -= coef * t.P[j][k];
    }
    std::vector<RatFun> gv(n, RatFun(0));
    for (std::size_t k = ii; k < n; ++k) {
      if (v[k].is_zero()) continue;
      for (std::size_t r = 0; r < n; ++r) gv[r] += g[r][k] * v[k];
    }
    RatFun nn(0);
    for (std::size_t k = ii; k < n; ++k)
      if (!v[k].is_zero()) nn += v[k] * gv[k];
    t.P[ii] = std::move(v);
    t.norm[ii] = std::move(nn);
    gp[ii] = std::move(gv);
  }
  return t;
}

// All tables through degree D plus power-sum multiplication in the P basis:
// p_k * P_la = sum_mu pieri[k][la][mu] P_mu, k = 1, 2.
struct JackData {
  long D = 0;
  std::vector<JackTable> deg;
  std::map<Partition, std::map<Partition, RatFun>> pieri1, pieri2;

  static JackData build(long D);
};

inline JackData JackData::build(long D) {
  JackData jd;
  jd.D = D;
  jd.deg.resize((std::size_t)D + 1);
  parallel_for((std::size_t)D + 1, [&](std::size_t d) { jd.deg[d] = jack_table((long)d); });

  const auto expand_pieri = [&](long d, long k, std::map<Partition, std::map<Partition, RatFun>>& out) {
    const JackTable& src = jd.deg[(std::size_t)d];
    const JackTable& dst = jd.deg[(std::size_t)(d + k)];
    const std::size_t nt = dst.order.size();
    for (std::size_t i = 0; i < src.order.size(); ++i) {
      MPoly f;
      for (std::size_t j = 0; j < src.P[i].size(); ++j)
        if (!src.P[i][j].is_zero()) f[src.order[j]] = src.P[i][j];
      f = mul_power_sum(f, k);
      std::vector<RatFun> fv(nt);
      for (const auto& [la, c] : f) fv[dst.index.at(la)] = c;
      // unitriangular solve against dst.P
      std::map<Partition, RatFun> row;
      for (std::size_t tj = 0; tj < nt; ++tj) {
        RatFun cj = fv[tj];
        for (std::size_t s = 0; s < tj; ++s) {
          auto it = row.find(dst.order[s]);
          if (it != row.end() && !dst.P[s][tj].is_zero()) cj -= it->second * dst.P[s][tj];
        }
        if (!cj.is_zero()) row[dst.order[tj]] = cj;
      }
      out[src.order[i]] = std::move(row);
    }
  };
  for (long d = 0; d + 1 <= D; ++d) expand_pieri(d, 1, jd.pieri1);
  for (long d = 0; d + 2 <= D; ++d) expand_pieri(d, 2, jd.pieri2);
  return jd;
}

// substitute a field value for beta (slot 2)
inline RatFun subst_beta(const RatFun& f, const RatFun& val) {
  const auto apply = [&](const Poly& p) {
    RatFun acc(0);
    for (const auto& [e, c] : p.terms())
      acc += RatFun(Poly(Exp{e.a, e.b, 0}, c)) * val.pow(e.c);
    return acc;
  };
  const RatFun den = apply(f.den());
  if (den.is_zero()) throw std::domain_error("subst_beta: denominator vanishes at the parameter");
  return apply(f.num()) / den;
}

// square root of a monomial ratio (single term over single term, even
// exponents, perfect-square contents); empty if the value is not of that shape
inline std::optional<RatFun> monomial_sqrt(const RatFun& r) {
  const Poly &n = r.num(), &d = r.den();
  if (n.terms().size() != 1 || d.terms().size() != 1) return std::nullopt;
  const auto& [ne, nc] = n.terms()[0];
  const auto& [de, dc] = d.terms()[0];
  if (nc < 0 || dc < 0) return std::nullopt;
  if (ne.a % 2 || ne.b % 2 || ne.c % 2 || de.a % 2 || de.b % 2 || de.c % 2) return std::nullopt;
  const Int ns = boost::multiprecision::sqrt(nc), ds = boost::multiprecision::sqrt(dc);
  if (ns * ns != nc || ds * ds != dc) return std::nullopt;
  return RatFun(Poly(Exp{ne.a / 2, ne.b / 2, ne.c / 2}, ns),
                Poly(Exp{de.a / 2, de.b / 2, de.c / 2}, ds));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Sparse operator on localized states: source partition -> (target, entry).
using LocOp = std::map<Partition, std::vector<std::pair<Partition, RatFun>>>;

inline LocState apply_op(const LocOp& op, const LocState& in) {
  LocState out;
  for (const auto& [la, v] : in.c) {
    auto it = op.find(la);
    if (it == op.end()) continue;
    for (const auto& [mu, w] : it->second) out.add(mu, v * w);
  }
  return out;
}

inline RatFun op_entry(const LocOp& op, const Partition& target, const Partition& source) {
  auto it = op.find(source);
  if (it == op.end()) return RatFun();
  for (const auto& [mu, w] : it->second)
    if (mu == target) return w;
  return RatFun();
}

// ---------------------------------------------------------------------------
// The mode tower b_{-2}, b_{-1}, b_{+1}, b_{+2} on states of size <= max_size.
// Degree-one operators are geometric (nested-ideal Euler classes); degree-two
// operators are the transported power-sum multiplication described in
// `realization`. All four commutators close on level = -1/(w1 w2).
struct HeisenbergTower {
  long max_size = 0;
  RatFun w1, w2;
  RatFun level;        // -1/(w1 w2)
  RatFun alpha;        // selected orthogonal-basis parameter
  std::string realization;
  LocOp dn1, up1, dn2, up2;  // b_{-1}, b_{+1}, b_{-2}, b_{+2}

  static HeisenbergTower build(long max_size, const RatFun& w1, const RatFun& w2);

  const LocOp& mode(long m) const {
    switch (m) {
      case -1: return dn1;
      case +1: return up1;
      case -2: return dn2;
      case +2: return up2;
      default: throw std::invalid_argument("HeisenbergTower: mode out of range");
    }
  }

  // verify [b_m, b_n] = m delta_{m+n,0} level on every basis state of size
  // <= nmax; on failure, report the offending state
  bool commutator_ok(long m, long n, long nmax, std::string* detail_out = nullptr) const {
    if (m == n) return true;  // [A, A] = 0 identically, nothing to evaluate
    const long need = nmax + (m < 0 ? -m : 0) + (n < 0 ? -n : 0);
    if (need > max_size)
      throw std::invalid_argument("HeisenbergTower: commutator window exceeds built size");
    for (long s = 0; s <= nmax; ++s)
      for (const Partition& la : all_partitions(s)) {
        const LocState st = LocState::basis(la);
        LocState lhs = apply_op(mode(m), apply_op(mode(n), st)) -
                       apply_op(mode(n), apply_op(mode(m), st));
        if (m + n == 0) lhs = lhs - (RatFun(Int(m)) * level) * st;
        if (!lhs.is_zero()) {
          if (detail_out)
            *detail_out = "[b_" + std::to_string(m) + ", b_" + std::to_string(n) +
                          "] fails on " + la.str() + ": residue " + lhs.str();
          return false;
        }
      }
    return true;
  }
};

inline HeisenbergTower HeisenbergTower::build(long max_size, const RatFun& w1_, const RatFun& w2_) {
  HeisenbergTower t;
  t.max_size = max_size;
  t.w1 = w1_;
  t.w2 = w2_;
  t.level = RatFun(-1) / (w1_ * w2_);

  // fixed-point data and degree-one geometric operators
  std::vector<std::vector<Partition>> by_size((std::size_t)max_size + 1);
  std::map<Partition, RatFun> eu;
  for (long s = 0; s <= max_size; ++s) {
    by_size[(std::size_t)s] = all_partitions(s);
    for (const Partition& la : by_size[(std::size_t)s])
      eu[la] = euler_class(hilb_tangent(la), t.w1, t.w2);
  }
  struct Edge {
    Partition la, mu;
    RatFun nested_eu;
  };
  std::vector<Edge> edges;
  for (long s = 0; s + 1 <= max_size; ++s)
    for (const Partition& la : by_size[(std::size_t)s])
      for (const Partition& mu : add_one_box(la)) edges.push_back({la, mu, RatFun()});
  detail::parallel_for(edges.size(), [&](std::size_t i) {
    edges[i].nested_eu = euler_class(nested_tangent(edges[i].la, edges[i].mu), t.w1, t.w2);
  });
  for (const Edge& e : edges) {
    t.dn1[e.la].push_back({e.mu, eu.at(e.la) / e.nested_eu});
    t.up1[e.mu].push_back({e.la, RatFun(0) - eu.at(e.mu) / e.nested_eu});
  }

  // orthogonal-basis transport for the degree-two pair
  const detail::JackData jd = detail::JackData::build(max_size);
  const std::vector<RatFun> candidates = {RatFun(0) - t.w2 / t.w1, RatFun(0) - t.w1 / t.w2,
                                          t.w2 / t.w1, t.w1 / t.w2};
  std::string survivors;
  std::map<Partition, RatFun> d_norm;  // state la = d_norm[la] * P_la
  bool have = false;
  for (const RatFun& cand : candidates) {
    std::map<Partition, RatFun> dn;
    dn[Partition{}] = RatFun(1);
    bool ok = true;
    for (long s = 1; s <= max_size && ok; ++s)
      for (const Partition& mu : by_size[(std::size_t)s]) {
        bool pinned = false;
        for (const Partition& la : remove_one_box(mu)) {
          RatFun pc;
          try {
            pc = detail::subst_beta(jd.pieri1.at(la).at(mu), cand);
          } catch (const std::out_of_range&) {
            continue;
          } catch (const std::domain_error&) {
            ok = false;
            break;
          }
          if (pc.is_zero()) continue;
          const RatFun geo = op_entry(t.dn1, mu, la);
          const RatFun val = dn.at(la) * pc / geo;
          if (!pinned) {
            dn[mu] = val;
            pinned = true;
          } else if (!(dn.at(mu) == val)) {
            ok = false;
            break;
          }
        }
        if (!ok || !pinned) {
          ok = false;
          break;
        }
      }
    if (ok) {
      if (!survivors.empty()) survivors += ", ";
      survivors += cand.pretty();
      if (!have) {
        t.alpha = cand;
        d_norm = std::move(dn);
        have = true;
      }
    }
  }
  if (!have)
    throw std::logic_error(
        "HeisenbergTower: no orthogonal-basis parameter reproduces the degree-one action");

  LocOp dn2raw, up2raw;
  for (long s = 0; s + 2 <= max_size; ++s)
    for (const Partition& la : by_size[(std::size_t)s]) {
      auto it = jd.pieri2.find(la);
      if (it == jd.pieri2.end()) continue;
      for (const auto& [mu, coef] : it->second) {
        const RatFun c = detail::subst_beta(coef, t.alpha);
        if (c.is_zero()) continue;
        const RatFun entry = d_norm.at(la) * c / d_norm.at(mu);
        dn2raw[la].push_back({mu, entry});
        // pairing sign (-1)^{|mu|-|la|} is +1 for the degree-two pair
        up2raw[mu].push_back({la, entry * eu.at(mu) / eu.at(la)});
      }
    }

  // normalize so that the degree-two pair closes on the same level
  RatFun vac(0);
  for (const auto& [mu, e] : dn2raw[Partition{}]) vac += e * op_entry(up2raw, Partition{}, mu);
  if (vac.is_zero()) throw std::logic_error("HeisenbergTower: degenerate degree-two transport");
  const RatFun target = RatFun(2) * t.level;
  const RatFun ratio = target / vac;
  const auto scale_op = [](const LocOp& op, const RatFun& s) {
    LocOp out;
    for (const auto& [la, row] : op) {
      auto& dst = out[la];
      for (const auto& [mu, v] : row) dst.push_back({mu, s * v});
    }
    return out;
  };
  std::ostringstream real;
  real << "degree-two generators: multiplication by the second power sum in the orthogonal "
          "(Jack) basis with parameter "
       << t.alpha.pretty() << " (consistent parameters: " << survivors
       << "), normalized against the degree-one action";
  if (const auto c2 = detail::monomial_sqrt(ratio)) {
    t.dn2 = scale_op(dn2raw, *c2);
    t.up2 = scale_op(up2raw, *c2);
    real << "; symmetric scale c2 = " << c2->pretty() << " on both modes";
  } else {
    t.dn2 = scale_op(dn2raw, ratio);
    t.up2 = std::move(up2raw);
    real << "; one-sided scale " << ratio.pretty() << " on the lowering mode";
  }
  t.realization = real.str();
  return t;
}

// ---------------------------------------------------------------------------
// Resolved conifold: fixed points are pairs of partitions, one per fixed point
// of the base curve; the sector label is unconstrained.
inline std::vector<std::pair<Partition, Partition>> conifold_fixed_points(long /*sector*/, long n) {
  std::vector<std::pair<Partition, Partition>> out;
  for (long a = 0; a <= n; ++a)
    for (const Partition& p : all_partitions(a))
      for (const Partition& q : all_partitions(n - a)) out.push_back({p, q});
  return out;
}

// Level conventions at the two fixed points of the base curve. The quiver
// convention uses the symmetrized tangent weights of the rank-one quiver
// description; the graph convention reads the surface tangent weights straight
// from the geometry (and therefore follows its orientation flag). The
// degree-one commutator is checked in the graph convention.
struct ConifoldLevels {
  bool alt_orientation = false;
  std::string divisor_id, divisor_label;
  std::array<std::string, 2> point_id;
  std::array<std::array<RatFun, 2>, 2> quiver_w, graph_w;  // [point][weight]
  std::array<RatFun, 2> quiver_level, graph_level;         // -1 / (w1 w2)
  bool commutator_ok = false;

  std::string describe() const {
    std::ostringstream os;
    os << "conifold orientation: " << (alt_orientation ? "e2<->e3" : "standard") << "\n";
    os << "divisor: " << divisor_id << " [" << divisor_label << "]\n";
    for (int y = 0; y < 2; ++y) {
      os << "point " << point_id[(std::size_t)y] << ":\n";
      os << "  quiver weights: " << quiver_w[(std::size_t)y][0].pretty() << ", "
         << quiver_w[(std::size_t)y][1].pretty()
         << "  level: " << quiver_level[(std::size_t)y].pretty() << "\n";
      os << "  graph weights:  " << graph_w[(std::size_t)y][0].pretty() << ", "
         << graph_w[(std::size_t)y][1].pretty()
         << "  level: " << graph_level[(std::size_t)y].pretty() << "\n";
    }
    os << "degree-one commutator (graph convention): " << (commutator_ok ? "closes" : "FAILS")
       << "\n";
    return os.str();
  }
};

inline ConifoldLevels conifold_levels(bool alt_orientation, long check_size = 2) {
  ConifoldLevels out;
  out.alt_orientation = alt_orientation;

  const GkmGraph g = build_geometry("y11", alt_orientation);
  const Divisor* dv = nullptr;
  for (const Divisor& d : g.divisors)
    if (d.label == "O(-1)") {
      dv = &d;
      break;
    }
  if (!dv || dv->points.size() != 2)
    throw GkmError("conifold_levels: no two-point O(-1) divisor in the geometry");
  out.divisor_id = dv->id;
  out.divisor_label = dv->label;

  const RatFun e1 = RatFun::var(0), e2 = RatFun::var(1);
  out.quiver_w = {{{RatFun(2) * e1, e2 - e1}, {RatFun(-2) * e1, e1 + e2}}};
  for (int y = 0; y < 2; ++y) {
    const DivisorPoint& p = dv->points[(std::size_t)y];
    out.point_id[(std::size_t)y] = g.points[(std::size_t)p.fp].id;
    out.graph_w[(std::size_t)y] = {p.tangent[0].rf(), p.tangent[1].rf()};
    out.quiver_level[(std::size_t)y] =
        RatFun(-1) / (out.quiver_w[(std::size_t)y][0] * out.quiver_w[(std::size_t)y][1]);
    out.graph_level[(std::size_t)y] =
        RatFun(-1) / (out.graph_w[(std::size_t)y][0] * out.graph_w[(std::size_t)y][1]);
  }

  out.commutator_ok = true;
  for (int y = 0; y < 2 && out.commutator_ok; ++y) {
    const RatFun &w1 = out.graph_w[(std::size_t)y][0], &w2 = out.graph_w[(std::size_t)y][1];
    for (long s = 0; s <= check_size && out.commutator_ok; ++s)
      for (const Partition& la : all_partitions(s)) {
        const LocState st = LocState::basis(la);
        const LocState comm = nakajima_lower(nakajima_raise(st, w1, w2), w1, w2) -
                              nakajima_raise(nakajima_lower(st, w1, w2), w1, w2);
        if (!(comm == out.graph_level[(std::size_t)y] * st)) {
          out.commutator_ok = false;
          break;
        }
      }
  }
  return out;
}

}  // namespace toricva
