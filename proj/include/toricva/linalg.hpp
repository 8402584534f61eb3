// Exact dense linear algebra over F. Kernels are computed fraction-free:
// rows are cleared to integer polynomials, then eliminated Bareiss-style
// (two-step minors with exact division by the previous pivot), so no
// intermediate division by an untested pivot occurs. Pivot choice is the
// first nonzero entry in row order — deterministic by construction.

#pragma once

#include <vector>

#include "toricva/ratfun.hpp"

namespace toricva {

struct Mat {
  std::size_t nr = 0, nc = 0;
  std::vector<RatFun> e;  // row-major

  Mat() = default;
  Mat(std::size_t r, std::size_t c) : nr(r), nc(c), e(r * c) {}
  RatFun& at(std::size_t r, std::size_t c) { return e[r * nc + c]; }
  const RatFun& at(std::size_t r, std::size_t c) const { return e[r * nc + c]; }
};

using Vec = std::vector<RatFun>;

inline Vec mat_apply(const Mat& m, const Vec& v) {
  Vec out(m.nr);
  for (std::size_t r = 0; r < m.nr; ++r) {
    RatFun s;
    for (std::size_t c = 0; c < m.nc; ++c) {
      if (m.at(r, c).is_zero() || v[c].is_zero()) continue;
      s += m.at(r, c) * v[c];
    }
    out[r] = s;
  }
  return out;
}

namespace detail {

struct Echelon {
  std::vector<std::vector<Poly>> p;  // row echelon, integer polynomials
  std::vector<std::size_t> pivot_col;
};

inline Echelon bareiss(const Mat& m) {
  Echelon ech;
  ech.p.assign(m.nr, std::vector<Poly>(m.nc));
  for (std::size_t r = 0; r < m.nr; ++r) {
    // clear denominators: multiply the row by the lcm of its denominators
    Poly l(1);
    for (std::size_t c = 0; c < m.nc; ++c)
      if (!m.at(r, c).is_zero()) l = poly_lcm(l, m.at(r, c).den());
    for (std::size_t c = 0; c < m.nc; ++c) {
      const RatFun& x = m.at(r, c);
      if (!x.is_zero()) ech.p[r][c] = x.num() * l.divexact(x.den());
    }
  }

  Poly prev(1);
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.nc && rank < m.nr; ++c) {
    std::size_t pr = rank;
    while (pr < m.nr && ech.p[pr][c].is_zero()) ++pr;
    if (pr == m.nr) continue;
    std::swap(ech.p[pr], ech.p[rank]);
    const Poly& piv = ech.p[rank][c];
    for (std::size_t r = rank + 1; r < m.nr; ++r) {
      if (!ech.p[r][c].is_zero() || !prev.is_one()) {
        const Poly head = ech.p[r][c];
        for (std::size_t j = c + 1; j < m.nc; ++j) {
          Poly t = piv * ech.p[r][j] - head * ech.p[rank][j];
          ech.p[r][j] = prev.is_one() ? std::move(t) : t.divexact(prev);
        }
        ech.p[r][c] = Poly();
      } else {
        // head entry is already zero and prev == 1: row times piv only
        for (std::size_t j = c + 1; j < m.nc; ++j)
          ech.p[r][j] = piv * ech.p[r][j];
      }
    }
    prev = piv;
    ech.pivot_col.push_back(c);
    ++rank;
  }
  return ech;
}

// Entries that are fractions of equal-degree (e1,e2)-forms lie in a subfield
// isomorphic to univariate rationals under e1 -> 1.  Eliminating in the
// image keeps every Bareiss minor one-variable (multivariate minors grow
// degree with elimination depth and dominate the runtime), and the kernel
// transports back through the isomorphism by re-homogenizing.
inline bool grade_zero_entries(const Mat& m) {
  for (const RatFun& x : m.e) {
    if (x.is_zero()) continue;
    const Poly& n = x.num();
    const Poly& d = x.den();
    if (n.uses(2) || d.uses(2)) return false;
    if (!n.homogeneous() || !d.homogeneous()) return false;
    if (n.total_degree() != d.total_degree()) return false;
  }
  return true;
}

inline Poly drop_e1(const Poly& p) {
  Poly r;
  for (const auto& [e, c] : p.terms()) {
    Exp q = e;
    q.a = 0;
    r = r + Poly(q, c);
  }
  return r;
}

inline Poly fill_e1(const Poly& p) {
  int top = 0;
  for (const auto& [e, c] : p.terms()) top = std::max(top, e.b + e.c);
  Poly r;
  for (const auto& [e, c] : p.terms()) {
    Exp q = e;
    q.a = top - e.b - e.c;
    r = r + Poly(q, c);
  }
  return r;
}

inline RatFun lift_e1(const RatFun& x) {
  if (x.is_zero()) return x;
  Poly n = fill_e1(x.num());
  Poly d = fill_e1(x.den());
  const int dn = n.total_degree(), dd = d.total_degree();
  if (dn < dd)
    n = n * Poly::var(0, dd - dn);
  else if (dd < dn)
    d = d * Poly::var(0, dn - dd);
  return RatFun(std::move(n), std::move(d));
}

inline Mat drop_e1_mat(const Mat& m) {
  Mat r(m.nr, m.nc);
  for (std::size_t i = 0; i < m.e.size(); ++i)
    if (!m.e[i].is_zero())
      r.e[i] = RatFun(drop_e1(m.e[i].num()), drop_e1(m.e[i].den()));
  return r;
}

}  // namespace detail

inline std::size_t rank(const Mat& m) {
  if (detail::grade_zero_entries(m))
    return detail::bareiss(detail::drop_e1_mat(m)).pivot_col.size();
  return detail::bareiss(m).pivot_col.size();
}

namespace detail {

// Basis of { v : M v = 0 }. One vector per free column, in column order;
// each vector is cleared to a primitive integer-polynomial vector whose
// first nonzero entry has positive leading coefficient.
inline std::vector<Vec> nullspace_direct(const Mat& m) {
  const detail::Echelon ech = detail::bareiss(m);
  const std::size_t rank = ech.pivot_col.size();
  std::vector<bool> is_pivot(m.nc, false);
  for (const std::size_t c : ech.pivot_col) is_pivot[c] = true;

  std::vector<Vec> basis;
  for (std::size_t f = 0; f < m.nc; ++f) {
    if (is_pivot[f]) continue;
    Vec v(m.nc);
    v[f] = RatFun(1);
    for (std::size_t i = rank; i-- > 0;) {
      const std::size_t c = ech.pivot_col[i];
      RatFun s;
      for (std::size_t j = c + 1; j < m.nc; ++j) {
        if (ech.p[i][j].is_zero() || v[j].is_zero()) continue;
        s += RatFun(ech.p[i][j]) * v[j];
      }
      v[c] = -s / RatFun(ech.p[i][c]);
    }
    // clear and normalize
    Poly l(1);
    for (const RatFun& x : v)
      if (!x.is_zero()) l = poly_lcm(l, x.den());
    std::vector<Poly> w(m.nc);
    Poly g;
    for (std::size_t j = 0; j < m.nc; ++j) {
      if (v[j].is_zero()) continue;
      w[j] = v[j].num() * l.divexact(v[j].den());
      g = Poly::gcd(g, w[j]);
    }
    if (!g.is_one()) {
      for (auto& x : w)
        if (!x.is_zero()) x = x.divexact(g);
    }
    for (const auto& x : w) {
      if (x.is_zero()) continue;
      if (x.leading().second < 0)
        for (auto& y : w) y = -y;
      break;
    }
    Vec out(m.nc);
    for (std::size_t j = 0; j < m.nc; ++j) out[j] = RatFun(w[j]);
    basis.push_back(std::move(out));
  }
  return basis;
}

}  // namespace detail

inline std::vector<Vec> nullspace(const Mat& m) {
  if (detail::grade_zero_entries(m)) {
    std::vector<Vec> basis = detail::nullspace_direct(detail::drop_e1_mat(m));
    for (Vec& v : basis)
      for (RatFun& x : v)
        if (!x.is_zero()) x = detail::lift_e1(x);
    return basis;
  }
  return detail::nullspace_direct(m);
}

}  // namespace toricva
