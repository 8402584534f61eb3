// States of the free-field modules attached to lattice data: PBW monomials
// b_{-n_1} ... b_{-n_j} |sector>, the Heisenberg mode action with
// [b_m^p, b_n^q] = m delta_{m+n,0} delta_{p,q} k_p, shift operators between
// sectors, and the combinatorial grading that makes lattice currents degree 1
// and screening charges degree 0.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "toricva/divisor.hpp"

namespace toricva {

struct Sector {
  std::vector<Int> l;   // over the sheet curves
  std::vector<Int> mu;  // over the screening tags; zero on the base module

  bool is_base() const {
    for (const Int& v : mu)
      if (v != 0) return false;
    return true;
  }

  static Sector zero(const LatticeData& L) {
    Sector s;
    s.l.assign(L.curves.size(), Int(0));
    s.mu.assign(L.screenings.size(), Int(0));
    return s;
  }

  Sector plus_curve(std::size_t i, const Int& k = Int(1)) const {
    Sector s = *this;
    s.l[i] += k;
    return s;
  }
  Sector plus_screen(std::size_t s_idx, const Int& k = Int(1)) const {
    Sector s = *this;
    s.mu[s_idx] += k;
    return s;
  }
  friend Sector operator+(const Sector& a, const Sector& b) {
    Sector s = a;
    for (std::size_t i = 0; i < s.l.size(); ++i) s.l[i] += b.l[i];
    for (std::size_t i = 0; i < s.mu.size(); ++i) s.mu[i] += b.mu[i];
    return s;
  }
  Sector operator-() const {
    Sector s = *this;
    for (Int& v : s.l) v = -v;
    for (Int& v : s.mu) v = -v;
    return s;
  }

  friend bool operator==(const Sector&, const Sector&) = default;
  friend bool operator<(const Sector& a, const Sector& b) {
    if (a.l != b.l) return a.l < b.l;
    return a.mu < b.mu;
  }

  std::string str() const {
    std::string s = "l=(";
    for (std::size_t i = 0; i < l.size(); ++i) s += (i ? "," : "") + l[i].str();
    s += ")";
    if (!is_base()) {
      s += ";s=(";
      for (std::size_t i = 0; i < mu.size(); ++i) s += (i ? "," : "") + mu[i].str();
      s += ")";
    }
    return s;
  }
};

struct BasisKey {
  Sector sec;
  // creation content (n >= 1, sheet point), sorted by n descending then point
  std::vector<std::pair<int, int>> modes;

  int level() const {
    int s = 0;
    for (const auto& [n, p] : modes) s += n;
    return s;
  }

  friend bool operator==(const BasisKey&, const BasisKey&) = default;
  friend bool operator<(const BasisKey& a, const BasisKey& b) {
    if (a.sec != b.sec) return a.sec < b.sec;
    return a.modes < b.modes;
  }
};

inline void canonicalize_modes(std::vector<std::pair<int, int>>& m) {
  std::sort(m.begin(), m.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
}

class FockState {
 public:
  FockState() = default;

  static FockState basis(BasisKey k) {
    FockState s;
    s.t_.emplace(std::move(k), RatFun(1));
    return s;
  }
  static FockState vacuum(Sector sec) {
    return basis(BasisKey{std::move(sec), {}});
  }

  bool is_zero() const { return t_.empty(); }
  std::size_t size() const { return t_.size(); }
  const std::map<BasisKey, RatFun>& terms() const { return t_; }

  void add(const BasisKey& k, const RatFun& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = t_.emplace(k, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) t_.erase(it);
    }
  }

  friend FockState operator+(const FockState& a, const FockState& b) {
    FockState out = a;
    for (const auto& [k, c] : b.t_) out.add(k, c);
    return out;
  }
  friend FockState operator-(const FockState& a, const FockState& b) {
    FockState out = a;
    for (const auto& [k, c] : b.t_) out.add(k, -c);
    return out;
  }
  friend FockState operator*(const RatFun& c, const FockState& s) {
    FockState out;
    if (c.is_zero()) return out;
    for (const auto& [k, v] : s.t_) out.t_.emplace(k, c * v);
    return out;
  }
  friend bool operator==(const FockState&, const FockState&) = default;

 private:
  std::map<BasisKey, RatFun> t_;
};

// cocharacter of a sector, screening shifts included
inline std::vector<RatFun> total_cochar(const LatticeData& L, const Sector& sec) {
  std::vector<RatFun> v = L.sector_cochar(sec.l);
  for (std::size_t s = 0; s < L.screenings.size(); ++s) {
    if (sec.mu[s] == 0) continue;
    const RatFun c{sec.mu[s]};
    for (std::size_t p = 0; p < v.size(); ++p)
      if (!L.screenings[s].values[p].is_zero())
        v[p] += c * L.screenings[s].values[p];
  }
  return v;
}

inline RatFun b0_eigenvalue(const LatticeData& L, const Sector& sec, int point) {
  return total_cochar(L, sec)[std::size_t(point)] * L.levels[std::size_t(point)];
}

// n < 0: creation; n > 0: annihilation derivation; n = 0: cocharacter eigenvalue
inline FockState apply_b(const LatticeData& L, int n, int point,
                         const FockState& s) {
  FockState out;
  if (n < 0) {
    for (const auto& [k, c] : s.terms()) {
      BasisKey nk = k;
      nk.modes.emplace_back(-n, point);
      canonicalize_modes(nk.modes);
      out.add(nk, c);
    }
    return out;
  }
  if (n == 0) {
    std::map<Sector, RatFun> eig;
    for (const auto& [k, c] : s.terms()) {
      auto it = eig.find(k.sec);
      if (it == eig.end())
        it = eig.emplace(k.sec, b0_eigenvalue(L, k.sec, point)).first;
      out.add(k, c * it->second);
    }
    return out;
  }
  for (const auto& [k, c] : s.terms()) {
    for (std::size_t i = 0; i < k.modes.size(); ++i) {
      if (k.modes[i] != std::make_pair(n, point)) continue;
      // derivation: one term per occurrence
      BasisKey nk = k;
      nk.modes.erase(nk.modes.begin() + (long)i);
      out.add(nk, c * RatFun(Int(n)) * L.levels[std::size_t(point)]);
    }
  }
  return out;
}

// sector translation; oscillator content untouched
inline FockState shift(const Sector& delta, const FockState& s) {
  FockState out;
  for (const auto& [k, c] : s.terms()) {
    BasisKey nk = k;
    nk.sec = nk.sec + delta;
    out.add(nk, c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Grading. d(v) = chi(v,v)/2 + f(v) with f linear, f(gen) = 1 - chi(gen,gen)/2
// over both curve and screening generators; the screening self-pairings cancel
// whenever each screening shift appears at most once, leaving an exact
// half-integer. Degrees are handled doubled (deg2 = 2 * degree).

inline RatFun sector_degree_rf(const LatticeData& L, const Sector& sec) {
  const std::vector<RatFun> v = total_cochar(L, sec);
  RatFun d = L.pair_values(v, v) * RatFun(Poly(1), Poly(2));
  const RatFun half(Poly(1), Poly(2));
  for (std::size_t i = 0; i < L.curves.size(); ++i) {
    if (sec.l[i] == 0) continue;
    const RatFun self{Int(L.chi(i, i))};
    d += RatFun(sec.l[i]) * (RatFun(1) - half * self);
  }
  for (std::size_t s = 0; s < L.screenings.size(); ++s) {
    if (sec.mu[s] == 0) continue;
    const RatFun self =
        L.pair_values(L.screenings[s].values, L.screenings[s].values);
    d += RatFun(sec.mu[s]) * (RatFun(1) - half * self);
  }
  return d;
}

inline long sector_degree2(const LatticeData& L, const Sector& sec) {
  const RatFun two = sector_degree_rf(L, sec) * RatFun(2);
  if (!two.is_integer())
    throw LatticeError("sector degree is not half-integral: " + sec.str());
  return static_cast<long>(two.as_int());
}

// doubled degree of a homogeneous state; nullopt when mixed (or zero)
inline std::optional<long> degree2(const LatticeData& L, const FockState& s) {
  std::optional<long> deg;
  std::map<Sector, long> sec_cache;
  for (const auto& [k, c] : s.terms()) {
    auto it = sec_cache.find(k.sec);
    if (it == sec_cache.end())
      it = sec_cache.emplace(k.sec, sector_degree2(L, k.sec)).first;
    const long d = 2 * k.level() + it->second;
    if (deg && *deg != d) return std::nullopt;
    deg = d;
  }
  return deg;
}

inline std::string degree_str(long deg2) {
  if (deg2 % 2 == 0) return std::to_string(deg2 / 2);
  return std::to_string(deg2) + "/2";
}

// ---------------------------------------------------------------------------
// Basis enumeration: all PBW monomials at a given oscillator level.

inline std::vector<BasisKey> osc_basis(const LatticeData& L, const Sector& sec,
                                       int level) {
  std::vector<BasisKey> out;
  std::vector<std::pair<int, int>> cur;
  const int npts = (int)L.n_points();
  // parts in canonical order: n descending, point ascending
  auto rec = [&](auto&& self, int rem, int max_n, int min_p) -> void {
    if (rem == 0) {
      out.push_back(BasisKey{sec, cur});
      return;
    }
    for (int n = std::min(max_n, rem); n >= 1; --n)
      for (int p = (n == max_n ? min_p : 0); p < npts; ++p) {
        cur.emplace_back(n, p);
        self(self, rem - n, n, p);
        cur.pop_back();
      }
  };
  rec(rec, level, level, 0);
  return out;
}

// ---------------------------------------------------------------------------
// Canonical rendering: "b(-2,y1) b(-1,y1) |l=(1,0)>", modes sorted, sheet
// points named by their fixed point (step-qualified when ambiguous).

inline std::string point_display(const LatticeData& L, int point) {
  const SheetPoint& p = L.points[std::size_t(point)];
  int same_fp = 0;
  for (const SheetPoint& q : L.points) same_fp += (q.fp == p.fp);
  std::string s = L.geom.points[std::size_t(p.fp)].id;
  if (same_fp > 1) s += "@" + std::to_string(p.step + 1);
  return s;
}

inline std::string render(const LatticeData& L, const BasisKey& k) {
  std::string s;
  for (const auto& [n, p] : k.modes)
    s += "b(-" + std::to_string(n) + "," + point_display(L, p) + ") ";
  s += "|" + k.sec.str() + ">";
  return s;
}

inline std::string render(const LatticeData& L, const FockState& st) {
  if (st.is_zero()) return "0";
  std::string s;
  for (const auto& [k, c] : st.terms()) {
    if (!s.empty()) s += " + ";
    if (c.is_one()) {
    } else if ((-c).is_one()) {
      s += "- ";
    } else {
      s += "(" + c.pretty() + ") ";
    }
    s += render(L, k);
  }
  return s;
}

}  // namespace toricva
