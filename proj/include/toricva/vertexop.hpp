// Vertex operators on the Fock modules: normally ordered products of current
// derivatives with one exponential factor attached to a sector translation.
// A field is a finite sum of such monomials. Modes are indexed relative to
// the sector pairing: on a state of sector mu, the mode F_m of a field with
// exponent lambda is the coefficient of z^{-m-1+<lambda,mu>}, and <lambda,mu>
// has to reduce to an exact integer. All coefficients stay in the rational
// function field; nothing here is numeric.

#pragma once

#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "toricva/fock.hpp"

namespace toricva {

inline bool sector_is_zero(const Sector& s) {
  for (const Int& v : s.l)
    if (v != 0) return false;
  for (const Int& v : s.mu)
    if (v != 0) return false;
  return true;
}

// Exponent data of a vertex operator: a cocharacter over the sheet points
// plus the sector translation the operator performs. The two agree for
// lattice momenta; keeping them separate admits formal exponents (symbolic
// multiples) that still translate an integer sector axis.
struct Momentum {
  std::vector<RatFun> values;  // empty means zero
  Sector delta;

  bool has_values() const {
    for (const RatFun& v : values)
      if (!v.is_zero()) return true;
    return false;
  }
  bool has_shift() const {
    return !(delta.l.empty() && delta.mu.empty()) && !sector_is_zero(delta);
  }
  bool trivial() const { return !has_values() && !has_shift(); }

  friend bool operator==(const Momentum&, const Momentum&) = default;
  friend bool operator<(const Momentum& a, const Momentum& b) {
    if (!(a.delta == b.delta)) return a.delta < b.delta;
    return a.values < b.values;
  }
};

inline Momentum momentum_of_sector(const LatticeData& L, const Sector& sec) {
  return {total_cochar(L, sec), sec};
}

inline Momentum momentum_of_curve(const LatticeData& L, std::size_t i) {
  return momentum_of_sector(L, Sector::zero(L).plus_curve(i));
}

inline Momentum momentum_of_screening(const LatticeData& L, std::size_t s) {
  Sector d = Sector::zero(L).plus_screen(s);
  return {L.screenings[s].values, d};
}

// Sign of the bimultiplicative two-cocycle on the sector lattice, with the
// generators totally ordered as sheet curves then screening tags:
// eps(g_i, g_j) = (-1)^{<g_i, g_j>} for i > j and +1 otherwise.
inline int cocycle_sign(const LatticeData& L, const Sector& a, const Sector& b) {
  if (a.l.empty() && a.mu.empty()) return 1;
  const std::size_t C = L.curves.size();
  auto coord = [&](const Sector& s, std::size_t g) -> const Int& {
    return g < C ? s.l[g] : s.mu[g - C];
  };
  Int total{0};
  for (std::size_t i = 0; i < L.n_gens(); ++i) {
    if (coord(a, i) == 0) continue;
    for (std::size_t j = 0; j < i; ++j) {
      if (coord(b, j) == 0) continue;
      const RatFun& x = L.gen_pair[i][j];
      if (!x.is_integer())
        throw LatticeError("integrality violation: <" + L.gen_tag(i) + ", " +
                           L.gen_tag(j) + "> = " + x.str());
      total += coord(a, i) * coord(b, j) * x.as_int();
    }
  }
  return (total % 2) == 0 ? 1 : -1;
}

// d^k J factor inside a normally ordered monomial
struct VFactor {
  int k = 0;      // derivative order
  int point = 0;  // sheet point

  friend bool operator==(const VFactor&, const VFactor&) = default;
  friend bool operator<(const VFactor& a, const VFactor& b) {
    return std::pair(a.k, a.point) < std::pair(b.k, b.point);
  }
};

struct VMonomial {
  RatFun coeff{1};
  std::vector<VFactor> factors;  // kept sorted
  Momentum mom;

  friend bool operator==(const VMonomial&, const VMonomial&) = default;
};

class FieldExpr {
 public:
  FieldExpr() = default;

  static FieldExpr identity() {
    FieldExpr f;
    f.terms_.push_back(VMonomial{});
    return f;
  }
  // d^k J at a sheet point
  static FieldExpr heis(int k, int point) {
    FieldExpr f;
    VMonomial t;
    t.factors.push_back({k, point});
    f.terms_.push_back(std::move(t));
    return f;
  }
  static FieldExpr exponential(Momentum mom) {
    FieldExpr f;
    VMonomial t;
    t.mom = std::move(mom);
    f.add_term(std::move(t));
    return f;
  }

  bool is_zero() const { return terms_.empty(); }
  const std::vector<VMonomial>& terms() const { return terms_; }

  void add_term(VMonomial t) {
    if (t.coeff.is_zero()) return;
    std::sort(t.factors.begin(), t.factors.end());
    if (!t.mom.has_values()) t.mom.values.clear();
    if (!t.mom.has_shift()) t.mom.delta = Sector{};
    for (VMonomial& u : terms_) {
      if (u.factors == t.factors && u.mom == t.mom) {
        u.coeff += t.coeff;
        if (u.coeff.is_zero())
          terms_.erase(terms_.begin() + (&u - terms_.data()));
        return;
      }
    }
    auto at = terms_.begin();
    while (at != terms_.end() &&
           (at->factors < t.factors ||
            (at->factors == t.factors && at->mom < t.mom)))
      ++at;
    terms_.insert(at, std::move(t));
  }

  friend FieldExpr operator+(const FieldExpr& a, const FieldExpr& b) {
    FieldExpr f = a;
    for (const VMonomial& t : b.terms_) f.add_term(t);
    return f;
  }
  friend FieldExpr operator-(const FieldExpr& a, const FieldExpr& b) {
    return a + RatFun(-1) * b;
  }
  friend FieldExpr operator*(const RatFun& c, const FieldExpr& f) {
    FieldExpr out;
    for (VMonomial t : f.terms_) {
      t.coeff *= c;
      out.add_term(std::move(t));
    }
    return out;
  }
  // normally ordered juxtaposition; exponents add
  friend FieldExpr nprod(const FieldExpr& a, const FieldExpr& b) {
    FieldExpr out;
    for (const VMonomial& x : a.terms_)
      for (const VMonomial& y : b.terms_) {
        VMonomial t;
        t.coeff = x.coeff * y.coeff;
        t.factors = x.factors;
        t.factors.insert(t.factors.end(), y.factors.begin(), y.factors.end());
        t.mom = x.mom;
        if (t.mom.values.size() < y.mom.values.size())
          t.mom.values.resize(y.mom.values.size());
        for (std::size_t p = 0; p < y.mom.values.size(); ++p)
          t.mom.values[p] += y.mom.values[p];
        if (t.mom.delta.l.empty() && t.mom.delta.mu.empty())
          t.mom.delta = y.mom.delta;
        else if (!(y.mom.delta.l.empty() && y.mom.delta.mu.empty()))
          t.mom.delta = t.mom.delta + y.mom.delta;
        out.add_term(std::move(t));
      }
    return out;
  }

  friend bool operator==(const FieldExpr&, const FieldExpr&) = default;

 private:
  std::vector<VMonomial> terms_;
};

// field derivative: Leibniz over the current factors plus the exponent term
inline FieldExpr derivative(const FieldExpr& F) {
  FieldExpr out;
  for (const VMonomial& t : F.terms()) {
    for (std::size_t i = 0; i < t.factors.size(); ++i) {
      VMonomial u = t;
      u.factors[i].k += 1;
      out.add_term(std::move(u));
    }
    for (std::size_t p = 0; p < t.mom.values.size(); ++p) {
      if (t.mom.values[p].is_zero()) continue;
      VMonomial u = t;
      u.coeff *= t.mom.values[p];
      u.factors.push_back({0, (int)p});
      out.add_term(std::move(u));
    }
  }
  return out;
}

namespace detail {

inline long to_long(const Int& v) { return static_cast<long>(v); }

// coefficient of b_n z^{-n-k-1} in d^k J: (-1)^k (n+1)(n+2)...(n+k)
inline Int vfactor_coeff(int k, long n) {
  Int c{1};
  for (int t = 1; t <= k; ++t) c *= Int(n + t);
  return (k % 2) ? Int(-c) : c;
}

// binomial coefficient with integer (possibly negative) upper argument
inline Int int_binom(long m, long j) {
  Int num{1};
  for (long t = 0; t < j; ++t) num *= Int(m - t);
  for (long t = 2; t <= j; ++t) num /= Int(t);
  return num;
}

// removes one copy of (n, point) from a mode multiset; returns the number of
// copies present before removal (0 = absent)
inline int take_one(std::vector<std::pair<int, int>>& modes, int n, int p) {
  int count = 0;
  std::size_t pos = modes.size();
  for (std::size_t i = 0; i < modes.size(); ++i)
    if (modes[i].first == n && modes[i].second == p) {
      ++count;
      pos = i;
    }
  if (count) modes.erase(modes.begin() + (long)pos);
  return count;
}

// Evaluates one monomial mode on one basis term. The normally ordered
// monomial splits every current factor into a single mode b_n (annihilation
// half n >= 0 applied before the exponential machinery, creation half
// afterwards); the exponential contributes the annihilation series, the
// sector translation with its cocycle sign, and the creation series whose
// total weight is fixed by the z-power bookkeeping
//   sum_i(-n_i - k_i - 1) - L_plus + L_minus = -m - 1.
struct ModeRun {
  const LatticeData& L;
  const VMonomial& mono;
  const long m;
  FockState& out;

  const std::vector<RatFun>* lam = nullptr;  // exponent values, if any
  std::vector<int> sup;                      // exponent support points

  const BasisKey* src = nullptr;
  const std::vector<RatFun>* b0src = nullptr;  // b_0 values at the source
  RatFun base;
  long lev0 = 0;
  std::vector<long> fmode;
  std::vector<long> suffix_min;  // minimal remaining factor z-weight
  std::vector<std::pair<int, int>> plus_cand;
  Sector target;
  int sign = 1;

  ModeRun(const LatticeData& l, const VMonomial& mo, long mm, FockState& o)
      : L(l), mono(mo), m(mm), out(o) {
    if (mo.mom.has_values()) {
      lam = &mo.mom.values;
      for (std::size_t p = 0; p < lam->size(); ++p)
        if (!(*lam)[p].is_zero()) sup.push_back((int)p);
    }
  }

  void run(const BasisKey& key, const RatFun& c, const std::vector<RatFun>& b0) {
    src = &key;
    b0src = &b0;
    base = c * mono.coeff;
    lev0 = key.level();
    fmode.assign(mono.factors.size(), 0);
    suffix_min.assign(mono.factors.size() + 1, 0);
    for (std::size_t i = mono.factors.size(); i-- > 0;)
      suffix_min[i] = suffix_min[i + 1] - lev0 - mono.factors[i].k - 1;
    plus_cand.clear();
    if (lam)
      for (const auto& mp : key.modes) {
        bool fresh = true;
        for (const auto& q : plus_cand)
          if (q == mp) fresh = false;
        if (fresh && !(*lam)[std::size_t(mp.second)].is_zero())
          plus_cand.push_back(mp);
      }
    target = key.sec;
    sign = 1;
    if (mono.mom.has_shift()) {
      sign = cocycle_sign(L, mono.mom.delta, key.sec);
      target = key.sec + mono.mom.delta;
    }
    factor_rec(0, 0, RatFun(1));
  }

  void factor_rec(std::size_t i, long wsum, const RatFun& coeff) {
    if (i == mono.factors.size()) {
      annihilate(wsum, coeff);
      return;
    }
    const VFactor& f = mono.factors[i];
    // the final creation weight -m-1-wsum+L_plus must be >= 0 and L_plus
    // stays below the oscillator level, which bounds the mode from below
    const long wmax = -m - 1 + lev0 - wsum - suffix_min[i + 1];
    const long nlow = -wmax - f.k - 1;
    for (long n = nlow; n <= lev0; ++n) {
      const Int d = vfactor_coeff(f.k, n);
      if (d == 0) continue;
      fmode[i] = n;
      factor_rec(i + 1, wsum - n - f.k - 1, coeff * RatFun(d));
    }
  }

  void annihilate(long wsum, RatFun coeff) {
    std::vector<std::pair<int, int>> modes = src->modes;
    for (std::size_t i = 0; i < fmode.size(); ++i) {
      const long n = fmode[i];
      if (n < 0) continue;
      const int p = mono.factors[i].point;
      if (n == 0) {
        coeff *= (*b0src)[std::size_t(p)];
      } else {
        const int count = take_one(modes, (int)n, p);
        if (!count) return;
        coeff *= RatFun(Int(count) * Int(n)) * L.levels[std::size_t(p)];
      }
      if (coeff.is_zero()) return;
    }
    plus_rec(0, std::move(modes), wsum, 0, std::move(coeff));
  }

  void plus_rec(std::size_t ci, std::vector<std::pair<int, int>> modes,
                long wsum, long lplus, RatFun coeff) {
    if (ci == plus_cand.size()) {
      shift_stage(std::move(modes), wsum, lplus, std::move(coeff));
      return;
    }
    const auto [n, p] = plus_cand[ci];
    plus_rec(ci + 1, modes, wsum, lplus, coeff);
    for (long j = 1;; ++j) {
      const int count = take_one(modes, n, p);
      if (!count) return;
      coeff *= RatFun(Int(-count)) * (*lam)[std::size_t(p)] *
               L.levels[std::size_t(p)] / RatFun(Int(j));
      lplus += n;
      if (coeff.is_zero()) return;
      plus_rec(ci + 1, modes, wsum, lplus, coeff);
    }
  }

  void shift_stage(std::vector<std::pair<int, int>> modes, long wsum,
                   long lplus, RatFun coeff) {
    const long lminus = -m - 1 - wsum + lplus;
    if (lminus < 0) return;
    if (sign < 0) coeff = -coeff;
    minus_rec(0, 1, lminus, std::move(modes), std::move(coeff));
  }

  void minus_rec(std::size_t pi, int nmin, long remaining,
                 std::vector<std::pair<int, int>> modes, RatFun coeff) {
    if (remaining == 0) {
      emit(std::move(modes), std::move(coeff));
      return;
    }
    if (pi == sup.size()) {
      if (nmin > remaining) return;
      minus_rec(0, nmin + 1, remaining, std::move(modes), std::move(coeff));
      return;
    }
    minus_rec(pi + 1, nmin, remaining, modes, coeff);
    const int p = sup[pi];
    for (long j = 1; nmin * j <= remaining; ++j) {
      coeff *= (*lam)[std::size_t(p)] / RatFun(Int(nmin) * Int(j));
      modes.emplace_back(nmin, p);
      minus_rec(pi + 1, nmin, remaining - nmin * j, modes, coeff);
    }
  }

  void emit(std::vector<std::pair<int, int>> modes, RatFun coeff) {
    for (std::size_t i = 0; i < fmode.size(); ++i)
      if (fmode[i] < 0)
        modes.emplace_back((int)-fmode[i], mono.factors[i].point);
    canonicalize_modes(modes);
    out.add(BasisKey{target, std::move(modes)}, base * coeff);
  }
};

}  // namespace detail

// mode F_m of a field on a state; the coefficient of z^{-m-1+<lambda,mu>}
// termwise over monomials and basis vectors
inline FockState field_mode(const LatticeData& L, const FieldExpr& F, long m,
                            const FockState& s) {
  FockState out;
  std::map<Sector, std::pair<std::vector<RatFun>, std::vector<RatFun>>> cache;
  for (const auto& [key, c] : s.terms()) {
    auto it = cache.find(key.sec);
    if (it == cache.end()) {
      std::vector<RatFun> cochar = total_cochar(L, key.sec);
      std::vector<RatFun> b0(cochar.size());
      for (std::size_t p = 0; p < cochar.size(); ++p)
        b0[p] = cochar[p] * L.levels[p];
      it = cache.emplace(key.sec, std::pair(std::move(cochar), std::move(b0)))
               .first;
    }
    for (const VMonomial& mono : F.terms()) {
      if (mono.mom.has_values()) {
        RatFun pr;
        for (std::size_t p = 0; p < mono.mom.values.size(); ++p)
          if (!mono.mom.values[p].is_zero())
            pr += mono.mom.values[p] * it->second.first[p] *
                  L.levels[p];
        if (!pr.is_integer())
          throw LatticeError("non-integral pairing: <exponent, " +
                             key.sec.str() + "> = " + pr.str());
      }
      detail::ModeRun run(L, mono, m, out);
      run.run(key, c, it->second.second);
    }
  }
  return out;
}

// pure exponential operator mode
inline FockState vertex_mode(const LatticeData& L, const Momentum& mom, long m,
                             const FockState& s) {
  return field_mode(L, FieldExpr::exponential(mom), m, s);
}

// coefficient of z^{-1}: the mode at the sector pairing, taken sector by
// sector so mixed states integrate termwise
inline FockState vertex_residue(const LatticeData& L, const Momentum& mom,
                                const FockState& s) {
  FockState out;
  std::map<Sector, long> offset;
  for (const auto& [key, c] : s.terms()) {
    auto it = offset.find(key.sec);
    if (it == offset.end()) {
      RatFun pr = L.pair_values(mom.values, total_cochar(L, key.sec));
      if (!pr.is_integer())
        throw LatticeError("non-integral pairing: <exponent, " +
                           key.sec.str() + "> = " + pr.str());
      it = offset.emplace(key.sec, detail::to_long(pr.as_int())).first;
    }
    FockState part;
    part.add(key, c);
    const FockState res = vertex_mode(L, mom, it->second, part);
    for (const auto& [k2, c2] : res.terms()) out.add(k2, c2);
  }
  return out;
}

// state of a field: its leading mode on the vacuum
inline FockState state_of_field(const LatticeData& L, const FieldExpr& F) {
  return field_mode(L, F, -1, FockState::vacuum(Sector::zero(L)));
}

// inverse dictionary: b_{-n} becomes d^{n-1} J / (n-1)! and the sector
// becomes the exponential factor
inline FieldExpr state_to_field(const LatticeData& L, const FockState& s) {
  FieldExpr F;
  for (const auto& [key, c] : s.terms()) {
    VMonomial t;
    t.coeff = c;
    for (const auto& [n, p] : key.modes) {
      t.factors.push_back({n - 1, p});
      Int f{1};
      for (int u = 2; u < n; ++u) f *= Int(u);
      t.coeff = t.coeff / RatFun(f);
    }
    if (!sector_is_zero(key.sec)) t.mom = momentum_of_sector(L, key.sec);
    F.add_term(std::move(t));
  }
  return F;
}

// n-th product of fields through the state dictionary
inline FieldExpr nth_product(const LatticeData& L, const FieldExpr& A,
                             const FieldExpr& B, long j) {
  return state_to_field(L, field_mode(L, A, j, state_of_field(L, B)));
}

struct OpeResult {
  std::map<long, FieldExpr> poles;  // pole order >= 1 -> coefficient field
  std::optional<Int> exponent;      // overall (z-w) power for exponential pairs
  FieldExpr leading;                // first field of the regular expansion
};

inline OpeResult ope_singular(const LatticeData& L, const FieldExpr& A,
                              const FieldExpr& B) {
  OpeResult res;
  const FockState bs = state_of_field(L, B);
  // The mode offsets absorb the sector pairing, so for a pair of exponentials
  // with <lambda, nu> = chi the offset-j product sits at the absolute power
  // (z-w)^{-j-1+chi}; the rendered expansion carries (z-w)^chi in front and
  // the normally ordered leading field is the offset j = -1 product.
  long shift = 0;
  const bool expexp = A.terms().size() == 1 && B.terms().size() == 1 &&
                      A.terms()[0].factors.empty() &&
                      B.terms()[0].factors.empty() &&
                      A.terms()[0].mom.has_values() &&
                      B.terms()[0].mom.has_values();
  if (expexp) {
    const RatFun chi =
        L.pair_values(A.terms()[0].mom.values, B.terms()[0].mom.values);
    if (!chi.is_integer())
      throw LatticeError("non-integral pairing: <exponent, exponent> = " +
                         chi.str());
    res.exponent = chi.as_int();
    shift = detail::to_long(chi.as_int());
  }
  if (!bs.is_zero()) {
    long levb = 0;
    for (const auto& [k, c] : bs.terms())
      levb = std::max(levb, (long)k.level());
    long depth = 0;
    for (const VMonomial& t : A.terms()) {
      long d = 0;
      for (const VFactor& f : t.factors) d += f.k + 1;
      depth = std::max(depth, d);
    }
    long slack = 0;
    for (const VMonomial& t : A.terms()) {
      if (!t.mom.has_values()) continue;
      for (const auto& [k, c] : bs.terms()) {
        const RatFun pr =
            L.pair_values(t.mom.values, total_cochar(L, k.sec));
        if (pr.is_integer())
          slack = std::max(slack, -detail::to_long(pr.as_int()));
      }
    }
    const long jmax = levb + depth + slack + std::labs(shift) + 2;
    for (long j = shift; j <= jmax; ++j) {
      FockState st = field_mode(L, A, j, bs);
      if (!st.is_zero()) res.poles.emplace(j + 1 - shift, state_to_field(L, st));
    }
    res.leading = state_to_field(L, field_mode(L, A, -1, bs));
  }
  return res;
}

// defect of the mode commutator against the products extracted from the OPE:
//   [A_m, B_n] - sum_j C(m, j) (A_(j) B)_{m+n-j}
// identically zero when A carries no exponential factor (the mode offsets of
// both sides then agree sector by sector)
inline FockState mode_commutator_defect(const LatticeData& L,
                                        const FieldExpr& A,
                                        const FieldExpr& B, long m, long n,
                                        const FockState& s) {
  FockState lhs = field_mode(L, A, m, field_mode(L, B, n, s)) -
                  field_mode(L, B, n, field_mode(L, A, m, s));
  const OpeResult ope = ope_singular(L, A, B);
  for (const auto& [pole, F] : ope.poles) {
    const long j = pole - 1;
    lhs = lhs - RatFun(detail::int_binom(m, j)) *
                    field_mode(L, F, m + n - j, s);
  }
  return lhs;
}

inline std::string field_str(const LatticeData& L, const FieldExpr& F) {
  if (F.terms().empty()) return "0";
  std::string s;
  for (const VMonomial& t : F.terms()) {
    std::vector<std::string> pieces;
    for (const VFactor& f : t.factors) {
      std::string j = "J^" + std::to_string(f.point + 1);
      if (f.k == 1) j = "d" + j;
      else if (f.k >= 2) j = "d^" + std::to_string(f.k) + j;
      pieces.push_back(std::move(j));
    }
    if (t.mom.has_values())
      pieces.push_back("exp(" + L.cochar_str(t.mom.values) + ")");
    std::string body;
    if (pieces.size() >= 2) {
      body = ":";
      for (std::size_t i = 0; i < pieces.size(); ++i)
        body += (i ? " " : "") + pieces[i];
      body += ":";
    } else if (pieces.size() == 1) {
      body = pieces[0];
    }
    std::string term;
    if (body.empty() || !(t.coeff == RatFun(1)))
      term = "(" + t.coeff.pretty() + ")";
    if (!body.empty()) term += (term.empty() ? "" : " ") + body;
    s += (s.empty() ? "" : " + ") + term;
  }
  return s;
}

inline std::string ope_report(const LatticeData& L, const std::string& a,
                              const std::string& b, const OpeResult& r) {
  std::string s = a + "(z) " + b + "(w) ~ ";
  if (r.exponent) {
    std::string e = r.exponent->str();
    if (*r.exponent < 0) e = "(" + e + ")";
    return s + "(z-w)^" + e + " " + field_str(L, r.leading);
  }
  if (r.poles.empty()) return s + "0";
  bool first = true;
  for (auto it = r.poles.rbegin(); it != r.poles.rend(); ++it) {
    if (!first) s += " + ";
    s += field_str(L, it->second) + " (z-w)^-" + std::to_string(it->first);
    first = false;
  }
  return s;
}

}  // namespace toricva
