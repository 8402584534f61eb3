// Graded characters and enumerative generating functions: integer/Laurent
// coefficients in t, q-exponents in (1/2)Z>=0 (stored doubled so all keys are
// integers). Every series that has both a product formula and a counting
// description is computed both ways and cross-checked.

#pragma once

#include <array>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "toricva/poly.hpp"  // Int

namespace toricva {

// ---------------------------------------------------------------------------
// Laurent polynomial in a single grading variable t over Int.
class TPoly {
 public:
  TPoly() = default;
  TPoly(long n) {  // NOLINT: implicit by design, mirrors Int literals
    if (n != 0) c_[0] = n;
  }
  explicit TPoly(Int n) {
    if (n != 0) c_[0] = std::move(n);
  }
  static TPoly term(Int coeff, long exp) {
    TPoly p;
    if (coeff != 0) p.c_[exp] = std::move(coeff);
    return p;
  }

  bool is_zero() const { return c_.empty(); }
  const std::map<long, Int>& terms() const { return c_; }
  Int at(long exp) const {
    auto it = c_.find(exp);
    return it == c_.end() ? Int(0) : it->second;
  }

  TPoly& operator+=(const TPoly& o) {
    for (const auto& [e, v] : o.c_) {
      Int& dst = c_[e];
      dst += v;
      if (dst == 0) c_.erase(e);
    }
    return *this;
  }
  friend TPoly operator+(TPoly a, const TPoly& b) { return a += b; }
  TPoly& operator-=(const TPoly& o) {
    for (const auto& [e, v] : o.c_) {
      Int& dst = c_[e];
      dst -= v;
      if (dst == 0) c_.erase(e);
    }
    return *this;
  }
  friend TPoly operator-(TPoly a, const TPoly& b) { return a -= b; }
  friend TPoly operator*(const TPoly& a, const TPoly& b) {
    TPoly out;
    for (const auto& [ea, va] : a.c_)
      for (const auto& [eb, vb] : b.c_) {
        Int& dst = out.c_[ea + eb];
        dst += va * vb;
        if (dst == 0) out.c_.erase(ea + eb);
      }
    return out;
  }
  TPoly& operator*=(const TPoly& o) { return *this = *this * o; }
  friend bool operator==(const TPoly& a, const TPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const TPoly& a, const TPoly& b) { return !(a == b); }

  // Substitute an integer value for t (used for t = 1 and t = -1 slices).
  Int eval(long t) const {
    Int acc = 0;
    for (const auto& [e, v] : c_) {
      if (e < 0 && t == 0) throw std::domain_error("TPoly::eval: t=0 with negative exponent");
      Int p = 1;
      long n = e < 0 ? -e : e;
      for (long i = 0; i < n; ++i) p *= t;
      if (e < 0) {
        if (p == 0) throw std::domain_error("TPoly::eval: pole");
        // exact division only when p divides 1, i.e. t = +-1
        if (p != 1 && p != -1) throw std::domain_error("TPoly::eval: non-unit t with negative exponent");
      }
      acc += (e >= 0) ? v * p : v * p;  // p is +-1 in the negative case
    }
    return acc;
  }

  // If the polynomial is a constant, return it; otherwise throw.
  Int constant() const {
    if (c_.empty()) return 0;
    if (c_.size() == 1 && c_.begin()->first == 0) return c_.begin()->second;
    throw std::domain_error("TPoly::constant: t-dependent coefficient");
  }

  std::string str() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, v] : c_) {
      Int av = v < 0 ? Int(-v) : v;
      if (first) {
        if (v < 0) os << "-";
        first = false;
      } else {
        os << (v < 0 ? " - " : " + ");
      }
      const bool unit = (av == 1);
      if (e == 0 || !unit) os << av.str();
      if (e != 0) {
        if (!unit) os << "*";
        os << "t";
        if (e != 1) os << "^" << e;
      }
    }
    return os.str();
  }

 private:
  std::map<long, Int> c_;
};

// ---------------------------------------------------------------------------
// Truncated q-series with TPoly coefficients. Exponents live in (1/2)Z>=0 and
// are stored doubled: key e2 represents q^{e2/2}. cutoff2() is the doubled
// truncation order; terms with key > cutoff2 are discarded.
class QSeries {
 public:
  explicit QSeries(long cutoff2) : cutoff2_(cutoff2) {
    if (cutoff2 < 0) throw std::invalid_argument("QSeries: negative cutoff");
  }
  static QSeries one(long cutoff2) {
    QSeries s(cutoff2);
    s.add2(0, TPoly(1));
    return s;
  }

  long cutoff2() const { return cutoff2_; }
  const std::map<long, TPoly>& terms() const { return c_; }

  void add2(long e2, TPoly v) {
    if (e2 < 0) throw std::invalid_argument("QSeries: negative exponent");
    if (e2 > cutoff2_ || v.is_zero()) return;
    TPoly& dst = c_[e2];
    dst += v;
    if (dst.is_zero()) c_.erase(e2);
  }
  TPoly at2(long e2) const {
    auto it = c_.find(e2);
    return it == c_.end() ? TPoly() : it->second;
  }
  // Integer-exponent accessors for series supported on Z>=0.
  TPoly at(long e) const { return at2(2 * e); }
  Int int_at(long e) const { return at(e).constant(); }

  QSeries& operator*=(const QSeries& o) {
    QSeries out(std::min(cutoff2_, o.cutoff2_));
    for (const auto& [ea, va] : c_) {
      if (ea > out.cutoff2_) break;
      for (const auto& [eb, vb] : o.c_) {
        if (ea + eb > out.cutoff2_) break;
        out.add2(ea + eb, va * vb);
      }
    }
    return *this = std::move(out);
  }
  friend QSeries operator*(QSeries a, const QSeries& b) { return a *= b; }
  QSeries& operator+=(const QSeries& o) {
    for (const auto& [e, v] : o.c_)
      if (e <= cutoff2_) add2(e, v);
    return *this;
  }
  friend bool operator==(const QSeries& a, const QSeries& b) {
    return a.cutoff2_ == b.cutoff2_ && a.c_ == b.c_;
  }

  // Substitute t -> tval in every coefficient.
  QSeries eval_t(long tval) const {
    QSeries out(cutoff2_);
    for (const auto& [e, v] : c_) out.add2(e, TPoly(v.eval(tval)));
    return out;
  }

  // Coefficients at integer exponents 0..N (throws if any t-dependence or
  // half-integer support remains).
  std::vector<Int> int_coeffs(long N) const {
    std::vector<Int> out;
    out.reserve(static_cast<std::size_t>(N) + 1);
    for (long n = 0; n <= N; ++n) out.push_back(int_at(n));
    for (const auto& [e, v] : c_)
      if (e % 2 != 0 && !v.is_zero())
        throw std::domain_error("QSeries::int_coeffs: half-integer exponent present");
    return out;
  }

  std::string exponent_str(long e2) const {
    return e2 % 2 == 0 ? std::to_string(e2 / 2) : std::to_string(e2) + "/2";
  }

  // Aligned text table: one row per non-zero term.
  std::string table_text() const {
    std::size_t w = 8;
    for (const auto& [e, v] : c_) w = std::max(w, exponent_str(e).size());
    std::ostringstream os;
    os << pad("exponent", w) << "  coefficient\n";
    for (const auto& [e, v] : c_) os << pad(exponent_str(e), w) << "  " << v.str() << "\n";
    return os.str();
  }
  std::string table_csv() const {
    std::ostringstream os;
    os << "exponent,coefficient\n";
    for (const auto& [e, v] : c_) os << exponent_str(e) << "," << v.str() << "\n";
    return os.str();
  }

 private:
  static std::string pad(std::string s, std::size_t w) {
    while (s.size() < w) s.push_back(' ');
    return s;
  }
  long cutoff2_ = 0;
  std::map<long, TPoly> c_;
};

namespace detail {

inline Int binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  Int num = 1, den = 1;
  for (long i = 0; i < k; ++i) {
    num *= n - i;
    den *= i + 1;
  }
  return num / den;  // exact
}

// All partitions of n as weakly decreasing part lists (lexicographic order,
// largest first). partitions_of(0) = { {} }.
inline void partitions_rec(long n, long max_part, std::vector<long>& cur,
                           std::vector<std::vector<long>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (long p = std::min(n, max_part); p >= 1; --p) {
    cur.push_back(p);
    partitions_rec(n - p, p, cur, out);
    cur.pop_back();
  }
}
inline std::vector<std::vector<long>> partitions_of(long n) {
  std::vector<std::vector<long>> out;
  std::vector<long> cur;
  if (n >= 0) partitions_rec(n, n == 0 ? 1 : n, cur, out);
  return out;
}

// (1 + sign * t^{te} q^m)^{exponent} truncated at doubled cutoff. exponent may
// be negative (geometric expansion); sign is +1 or -1.
inline QSeries binomial_factor(int sign, long te, long m, long exponent, long cutoff2) {
  QSeries out(cutoff2);
  const long jmax = m > 0 ? cutoff2 / (2 * m) : 0;
  if (exponent >= 0) {
    for (long j = 0; j <= std::min(exponent, jmax); ++j) {
      Int c = binomial(exponent, j);
      if (sign < 0 && j % 2 != 0) c = -c;
      out.add2(2 * m * j, TPoly::term(c, te * j));
    }
  } else {
    const long b = -exponent;
    for (long j = 0; j <= jmax; ++j) {
      Int c = binomial(b + j - 1, j);
      if (sign > 0 && j % 2 != 0) c = -c;  // (1+u)^{-b} alternates
      out.add2(2 * m * j, TPoly::term(c, te * j));
    }
  }
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Surface character from a Betti vector (b0..b4), through q^N:
//   prod_{m>=1} (1+t^{2m-1}q^m)^{b1} (1+t^{2m+1}q^m)^{b3}
//             / [(1-t^{2m-2}q^m)^{b0} (1-t^{2m}q^m)^{b2} (1-t^{2m+2}q^m)^{b4}]
inline QSeries gottsche_series(const std::array<long, 5>& b, long N) {
  const long cutoff2 = 2 * N;
  QSeries out = QSeries::one(cutoff2);
  for (long m = 1; m <= N; ++m) {
    out *= detail::binomial_factor(+1, 2 * m - 1, m, b[1], cutoff2);
    out *= detail::binomial_factor(+1, 2 * m + 1, m, b[3], cutoff2);
    out *= detail::binomial_factor(-1, 2 * m - 2, m, -b[0], cutoff2);
    out *= detail::binomial_factor(-1, 2 * m, m, -b[2], cutoff2);
    out *= detail::binomial_factor(-1, 2 * m + 2, m, -b[4], cutoff2);
  }
  return out;
}

// prod_{m>=1} (1 - q^m)^{-chi} through q^N (chi may be negative).
inline QSeries euler_product(long chi, long N) {
  const long cutoff2 = 2 * N;
  QSeries out = QSeries::one(cutoff2);
  for (long m = 1; m <= N; ++m) out *= detail::binomial_factor(-1, 0, m, -chi, cutoff2);
  return out;
}

// ---------------------------------------------------------------------------
// Rank-one character on the affine plane: coefficients count partitions.
// Computed through two independent backends (Euler product expansion and
// direct partition enumeration); they must agree term by term.
inline QSeries vw_c2(long N) {
  QSeries prod = euler_product(1, N);
  for (long n = 0; n <= N; ++n) {
    const Int by_count = static_cast<long>(detail::partitions_of(n).size());
    if (prod.int_at(n) != by_count)
      throw std::logic_error("vw_c2: product and enumeration backends disagree at q^" +
                             std::to_string(n));
  }
  return prod;
}

// ---------------------------------------------------------------------------
// Resolved-conifold character. Fixed points are pairs of partitions, one per
// torus-fixed point of the base curve; sectors are labelled by an integer l
// (first Chern class on the curve) and within a sector the grading is the
// total box count n of the pair. The bivariate table counts pairs; the
// specialization substitutes x^l -> q^{l^2/2} and sums sectors:
//   sum_l q^{l^2/2} / prod_k (1-q^k)^2.
struct ConifoldCharacter {
  long N = 0;                                // integer q-cutoff
  long lmax = 0;                             // sectors with l^2 <= 2N contribute
  std::map<std::pair<long, long>, Int> pairs;  // (l, n) -> #{(la0, la1): |la0|+|la1| = n}
  QSeries specialized{0};                    // enumeration backend, doubled cutoff 2N
  QSeries product{0};                        // product backend, doubled cutoff 2N
  bool backends_agree = false;

  std::string table_csv() const {
    std::ostringstream os;
    os << "l,exponent,count\n";
    for (const auto& [key, v] : pairs)
      os << key.first << "," << key.second << "," << v.str() << "\n";
    return os.str();
  }
  std::string table_text() const {
    std::ostringstream os;
    os << "l        exponent  count\n";
    for (const auto& [key, v] : pairs) {
      std::string l = std::to_string(key.first), e = std::to_string(key.second);
      while (l.size() < 8) l.push_back(' ');
      while (e.size() < 8) e.push_back(' ');
      os << l << " " << e << "  " << v.str() << "\n";
    }
    return os.str();
  }
};

inline ConifoldCharacter vw_conifold(long N) {
  ConifoldCharacter out;
  out.N = N;
  out.lmax = 0;
  while ((out.lmax + 1) * (out.lmax + 1) <= 2 * N) ++out.lmax;

  // Pair counts by direct enumeration of partition pairs.
  std::vector<long> pair_count(static_cast<std::size_t>(N) + 1, 0);
  for (long n = 0; n <= N; ++n) {
    long count = 0;
    for (long a = 0; a <= n; ++a) {
      const auto pa = detail::partitions_of(a);
      const auto pb = detail::partitions_of(n - a);
      count += static_cast<long>(pa.size() * pb.size());
    }
    pair_count[static_cast<std::size_t>(n)] = count;
  }
  for (long l = -out.lmax; l <= out.lmax; ++l)
    for (long n = 0; n <= N; ++n)
      out.pairs[{l, n}] = pair_count[static_cast<std::size_t>(n)];

  // Specialization x^l -> q^{l^2/2} of the enumeration table.
  const long cutoff2 = 2 * N;
  QSeries spec(cutoff2);
  for (const auto& [key, v] : out.pairs) {
    const long e2 = key.first * key.first + 2 * key.second;
    if (e2 <= cutoff2) spec.add2(e2, TPoly(v));
  }
  out.specialized = spec;

  // Product backend: sum_l q^{l^2/2} * prod_k (1-q^k)^{-2}.
  QSeries prod(cutoff2);
  const QSeries base = euler_product(2, N);
  for (long l = -out.lmax; l <= out.lmax; ++l) {
    const long shift2 = l * l;
    for (const auto& [e, v] : base.terms()) prod.add2(shift2 + e, v);
  }
  out.product = prod;

  out.backends_agree = (out.specialized == out.product);
  if (!out.backends_agree)
    throw std::logic_error("vw_conifold: enumeration and product backends disagree");
  return out;
}

}  // namespace toricva
