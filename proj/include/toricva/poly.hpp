// Exact sparse polynomials over Z in up to three commuting variables.
// Coefficients are arbitrary precision. Monomial order is graded
// lexicographic with slot 0 > slot 1 > slot 2; terms are kept sorted
// descending, with no zero coefficients. Slot meaning is contextual:
// (e1, e2, beta) inside field elements, (e1, e2, e3) transiently for
// input that still mentions e3.

#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace toricva {

using Int = boost::multiprecision::cpp_int;

inline Int int_gcd(const Int& a, const Int& b) {
  Int g = boost::multiprecision::gcd(a, b);
  return g < 0 ? Int(-g) : g;
}

struct Exp {
  int a = 0;
  int b = 0;
  int c = 0;

  int total() const { return a + b + c; }
  int slot(int s) const { return s == 0 ? a : (s == 1 ? b : c); }
  int& slot(int s) { return s == 0 ? a : (s == 1 ? b : c); }

  friend Exp operator+(Exp x, Exp y) { return {x.a + y.a, x.b + y.b, x.c + y.c}; }
  friend Exp operator-(Exp x, Exp y) { return {x.a - y.a, x.b - y.b, x.c - y.c}; }
  friend bool operator==(const Exp&, const Exp&) = default;
};

// graded lex: total degree first, then slot 0, 1, 2
inline int gl_cmp(const Exp& x, const Exp& y) {
  if (x.total() != y.total()) return x.total() < y.total() ? -1 : 1;
  if (x.a != y.a) return x.a < y.a ? -1 : 1;
  if (x.b != y.b) return x.b < y.b ? -1 : 1;
  if (x.c != y.c) return x.c < y.c ? -1 : 1;
  return 0;
}

struct GlGreater {
  bool operator()(const Exp& x, const Exp& y) const { return gl_cmp(x, y) > 0; }
};

class Poly {
 public:
  using Term = std::pair<Exp, Int>;

  Poly() = default;
  Poly(int v) : Poly(Int(v)) {}  // NOLINT: implicit by design
  Poly(Int v) {                  // NOLINT
    if (v != 0) t_.push_back({Exp{}, std::move(v)});
  }
  Poly(Exp e, Int coeff) {
    if (coeff != 0) t_.push_back({e, std::move(coeff)});
  }

  static Poly var(int slot, int power = 1) {
    Exp e;
    e.slot(slot) = power;
    return Poly(e, 1);
  }

  bool is_zero() const { return t_.empty(); }
  bool is_constant() const {
    return t_.empty() || (t_.size() == 1 && t_[0].first == Exp{});
  }
  bool is_one() const {
    return t_.size() == 1 && t_[0].first == Exp{} && t_[0].second == 1;
  }
  // requires is_constant()
  Int as_int() const { return t_.empty() ? Int(0) : t_[0].second; }

  const std::vector<Term>& terms() const { return t_; }
  std::size_t term_count() const { return t_.size(); }
  const Term& leading() const { return t_.front(); }  // requires nonzero

  int total_degree() const {
    return t_.empty() ? -1 : t_.front().first.total();
  }
  int degree_in(int slot) const {
    int d = -1;
    for (const auto& [e, c] : t_) d = std::max(d, e.slot(slot));
    return d;
  }
  int min_degree_in(int slot) const {  // requires nonzero
    int d = t_.front().first.slot(slot);
    for (const auto& [e, c] : t_) d = std::min(d, e.slot(slot));
    return d;
  }
  bool uses(int slot) const { return degree_in(slot) > 0; }
  bool homogeneous() const {
    if (t_.empty()) return true;
    const int d = t_.front().first.total();
    for (const auto& [e, c] : t_)
      if (e.total() != d) return false;
    return true;
  }

  friend Poly operator+(const Poly& x, const Poly& y) {
    Poly r;
    r.t_.reserve(x.t_.size() + y.t_.size());
    std::size_t i = 0, j = 0;
    while (i < x.t_.size() && j < y.t_.size()) {
      const int c = gl_cmp(x.t_[i].first, y.t_[j].first);
      if (c > 0) {
        r.t_.push_back(x.t_[i++]);
      } else if (c < 0) {
        r.t_.push_back(y.t_[j++]);
      } else {
        Int s = x.t_[i].second + y.t_[j].second;
        if (s != 0) r.t_.push_back({x.t_[i].first, std::move(s)});
        ++i;
        ++j;
      }
    }
    for (; i < x.t_.size(); ++i) r.t_.push_back(x.t_[i]);
    for (; j < y.t_.size(); ++j) r.t_.push_back(y.t_[j]);
    return r;
  }

  Poly operator-() const {
    Poly r = *this;
    for (auto& [e, c] : r.t_) c = -c;
    return r;
  }

  friend Poly operator-(const Poly& x, const Poly& y) { return x + (-y); }

  Poly mul_mono(const Exp& e, const Int& c) const {
    if (c == 0) return Poly();
    Poly r = *this;
    for (auto& [me, mc] : r.t_) {
      me = me + e;
      mc *= c;
    }
    return r;
  }

  friend Poly operator*(const Poly& x, const Poly& y) {
    if (x.is_zero() || y.is_zero()) return Poly();
    if (x.t_.size() == 1) return y.mul_mono(x.t_[0].first, x.t_[0].second);
    if (y.t_.size() == 1) return x.mul_mono(y.t_[0].first, y.t_[0].second);
    std::map<Exp, Int, GlGreater> acc;
    for (const auto& [xe, xc] : x.t_)
      for (const auto& [ye, yc] : y.t_) acc[xe + ye] += xc * yc;
    Poly r;
    r.t_.reserve(acc.size());
    for (auto& [e, c] : acc)
      if (c != 0) r.t_.push_back({e, std::move(c)});
    return r;
  }

  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend bool operator==(const Poly& x, const Poly& y) { return x.t_ == y.t_; }

  // total order (for use as map key): term-by-term graded-lex, then coeffs
  friend bool operator<(const Poly& x, const Poly& y) {
    const std::size_t n = std::min(x.t_.size(), y.t_.size());
    for (std::size_t i = 0; i < n; ++i) {
      const int c = gl_cmp(x.t_[i].first, y.t_[i].first);
      if (c != 0) return c < 0;
      if (x.t_[i].second != y.t_[i].second) return x.t_[i].second < y.t_[i].second;
    }
    return x.t_.size() < y.t_.size();
  }

  Poly pow(unsigned n) const {
    Poly r(1);
    Poly base = *this;
    while (n) {
      if (n & 1u) r *= base;
      base = (n >>= 1u) ? base * base : Poly();
    }
    return r;
  }

  Int content() const {
    Int g = 0;
    for (const auto& [e, c] : t_) {
      g = int_gcd(g, c);
      if (g == 1) break;
    }
    return g;
  }

  Poly divexact_int(const Int& k) const {  // requires k | every coefficient
    Poly r = *this;
    for (auto& [e, c] : r.t_) {
      if (c % k != 0) throw std::logic_error("divexact_int: not divisible");
      c /= k;
    }
    return r;
  }

  Poly primitive() const {
    if (t_.empty()) return Poly();
    return divexact_int(content());
  }

  // exact polynomial division; throws std::logic_error when not exact
  Poly divexact(const Poly& d) const {
    if (d.is_zero()) throw std::logic_error("divexact: zero divisor");
    if (is_zero()) return Poly();
    if (d.t_.size() == 1 && d.t_[0].first == Exp{}) return divexact_int(d.t_[0].second);
    Poly r = *this;
    Poly q;
    const Exp& de = d.t_[0].first;
    const Int& dc = d.t_[0].second;
    while (!r.is_zero()) {
      const Exp e = r.t_[0].first - de;
      if (e.a < 0 || e.b < 0 || e.c < 0 || r.t_[0].second % dc != 0)
        throw std::logic_error("divexact: not exact");
      Int c = r.t_[0].second / dc;
      q.t_.push_back({e, c});
      r = r - d.mul_mono(e, c);
    }
    return q;
  }

  bool divisible_by(const Poly& d) const {
    try {
      (void)divexact(d);
      return true;
    } catch (const std::logic_error&) {
      return false;
    }
  }

  // replace variable `slot` by `value` everywhere
  Poly subst(int slot, const Poly& value) const {
    std::vector<Poly> powers = {Poly(1)};
    Poly r;
    for (const auto& [e, c] : t_) {
      const int k = e.slot(slot);
      while ((int)powers.size() <= k) powers.push_back(powers.back() * value);
      Exp rest = e;
      rest.slot(slot) = 0;
      r += powers[k].mul_mono(rest, c);
    }
    return r;
  }

  Int eval(const Int& x, const Int& y, const Int& z) const {
    Int r = 0;
    for (const auto& [e, c] : t_) {
      Int t = c;
      for (int i = 0; i < e.a; ++i) t *= x;
      for (int i = 0; i < e.b; ++i) t *= y;
      for (int i = 0; i < e.c; ++i) t *= z;
      r += t;
    }
    return r;
  }

  static Poly gcd(const Poly& x, const Poly& y);

  std::string str(const std::array<std::string, 3>& names = {"e1", "e2",
                                                             "beta"}) const {
    if (t_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [e, c] : t_) {
      const bool neg = c < 0;
      Int m = neg ? Int(-c) : c;
      if (first) {
        if (neg) s += "-";
        first = false;
      } else {
        s += neg ? "-" : "+";
      }
      std::string vars;
      for (int slot = 0; slot < 3; ++slot) {
        const int k = e.slot(slot);
        if (k == 0) continue;
        if (!vars.empty()) vars += "*";
        vars += names[slot];
        if (k > 1) vars += "^" + std::to_string(k);
      }
      if (vars.empty()) {
        s += m.str();
      } else if (m == 1) {
        s += vars;
      } else {
        s += m.str() + "*" + vars;
      }
    }
    return s;
  }

 private:
  std::vector<Term> t_;

  friend struct PolyGcdImpl;
};

// ---------------------------------------------------------------------------
// gcd machinery. Primitive PRS; univariate fast path, a dehomogenization fast
// path for homogeneous bivariate input (the common case here: everything in
// sight is a homogeneous form in e1, e2), recursive PRS otherwise.

struct PolyGcdImpl {
  // dense univariate, ascending exponents; no trailing zeros
  using Uni = std::vector<Int>;

  static void trim(Uni& u) {
    while (!u.empty() && u.back() == 0) u.pop_back();
  }
  static Int ucontent(const Uni& u) {
    Int g = 0;
    for (const auto& c : u) {
      g = int_gcd(g, c);
      if (g == 1) break;
    }
    return g;
  }
  static void uprim(Uni& u) {
    const Int g = ucontent(u);
    if (g > 1)
      for (auto& c : u) c /= g;
    if (!u.empty() && u.back() < 0)
      for (auto& c : u) c = -c;
  }
  // pseudo-remainder up to content (we re-primitivize right after)
  static Uni uprem(Uni A, const Uni& B) {
    const Int& lb = B.back();
    while (A.size() >= B.size()) {
      const Int la = A.back();
      const std::size_t shift = A.size() - B.size();
      for (std::size_t i = 0; i + 1 < A.size(); ++i) {
        A[i] *= lb;
        if (i >= shift) A[i] -= la * B[i - shift];
      }
      A.pop_back();
      trim(A);
      if (A.empty()) break;
    }
    return A;
  }
  static Uni ugcd(Uni A, Uni B) {
    uprim(A);
    uprim(B);
    if (A.empty()) return B;
    if (B.empty()) return A;
    if (A.size() < B.size()) A.swap(B);
    while (!B.empty()) {
      Uni R = uprem(A, B);
      uprim(R);
      A.swap(B);
      B.swap(R);
    }
    return A;
  }

  // univariate in `slot` with Poly coefficients (ascending, may hold empties)
  using PUni = std::vector<Poly>;

  static PUni split(const Poly& p, int slot) {
    PUni out(std::size_t(p.degree_in(slot) + 1));
    for (const auto& [e, c] : p.terms()) {
      Exp rest = e;
      rest.slot(slot) = 0;
      out[std::size_t(e.slot(slot))] += Poly(rest, c);
    }
    return out;
  }
  static Poly join(const PUni& u, int slot) {
    Poly r;
    for (std::size_t k = 0; k < u.size(); ++k)
      r += u[k] * Poly::var(slot, (int)k);
    return r;
  }
  static void ptrim(PUni& u) {
    while (!u.empty() && u.back().is_zero()) u.pop_back();
  }
  static Poly pcontent(const PUni& u) {
    Poly g;
    for (const auto& c : u) {
      if (c.is_zero()) continue;
      g = Poly::gcd(g, c);
      if (g.is_one()) break;
    }
    return g;
  }
  static void pprim(PUni& u) {
    Poly g = pcontent(u);
    if (g.is_zero() || g.is_one()) return;
    for (auto& c : u)
      if (!c.is_zero()) c = c.divexact(g);
  }
  static PUni pprem(PUni A, const PUni& B) {
    const Poly& lb = B.back();
    while (A.size() >= B.size()) {
      const Poly la = A.back();
      const std::size_t shift = A.size() - B.size();
      for (std::size_t i = 0; i + 1 < A.size(); ++i) {
        A[i] *= lb;
        if (i >= shift) A[i] -= la * B[i - shift];
      }
      A.pop_back();
      ptrim(A);
      if (A.empty()) break;
    }
    return A;
  }

  static Poly sign_norm(Poly p) {
    if (!p.is_zero() && p.leading().second < 0) return -p;
    return p;
  }

  static Poly run(const Poly& xin, const Poly& yin) {
    if (xin.is_zero()) return sign_norm(yin);
    if (yin.is_zero()) return sign_norm(xin);
    const Int cx = xin.content(), cy = yin.content();
    const Int cg = int_gcd(cx, cy);
    Poly px = xin.divexact_int(cx), py = yin.divexact_int(cy);

    // common monomial factor, then per-poly monomial factors are stripped
    // (they contribute nothing further to the gcd)
    Exp common{};
    for (int s = 0; s < 3; ++s) {
      const int mx = px.min_degree_in(s), my = py.min_degree_in(s);
      common.slot(s) = std::min(mx, my);
      Exp ex{}, ey{};
      ex.slot(s) = -mx;
      ey.slot(s) = -my;
      if (mx > 0) px = px.mul_mono(ex, 1);
      if (my > 0) py = py.mul_mono(ey, 1);
    }
    const Poly mono(common, cg);

    Poly core = core_gcd(px, py);
    return sign_norm(core * mono);
  }

  static Poly core_gcd(const Poly& px, const Poly& py) {
    if (px == py || px == -py) return sign_norm(px);
    if (px.is_constant() || py.is_constant()) return Poly(1);

    std::vector<int> used;
    for (int s = 0; s < 3; ++s)
      if (px.uses(s) || py.uses(s)) used.push_back(s);

    if (used.size() == 1) {
      const int s = used[0];
      Uni a(std::size_t(px.degree_in(s) + 1)), b(std::size_t(py.degree_in(s) + 1));
      for (const auto& [e, c] : px.terms()) a[std::size_t(e.slot(s))] = c;
      for (const auto& [e, c] : py.terms()) b[std::size_t(e.slot(s))] = c;
      Uni g = ugcd(a, b);
      Poly r;
      for (std::size_t k = 0; k < g.size(); ++k)
        if (g[k] != 0) r += Poly::var(s, (int)k) * Poly(g[k]);
      return r;
    }

    if (used.size() == 2 && px.homogeneous() && py.homogeneous()) {
      // dehomogenize in (u, v): both have nonzero pure-v and pure-u ends
      // after monomial stripping, so gcd(f(u,1), g(u,1)) homogenizes back.
      const int u = used[0], v = used[1];
      const int dx = px.total_degree(), dy = py.total_degree();
      Uni a(std::size_t(dx + 1)), b(std::size_t(dy + 1));
      for (const auto& [e, c] : px.terms()) a[std::size_t(e.slot(u))] = c;
      for (const auto& [e, c] : py.terms()) b[std::size_t(e.slot(u))] = c;
      Uni g = ugcd(a, b);
      trim(g);
      if (g.size() <= 1) return Poly(1);
      const int dg = (int)g.size() - 1;
      Poly r;
      for (std::size_t k = 0; k < g.size(); ++k) {
        if (g[k] == 0) continue;
        Exp e{};
        e.slot(u) = (int)k;
        e.slot(v) = dg - (int)k;
        r += Poly(e, g[k]);
      }
      return r;
    }

    // recursive primitive PRS in the used variable of least degree
    int main = used[0];
    int best = 1 << 30;
    for (int s : used) {
      const int d = std::max(px.degree_in(s), py.degree_in(s));
      if (px.degree_in(s) > 0 && py.degree_in(s) > 0 && d < best) {
        best = d;
        main = s;
      }
    }
    if (best == (1 << 30)) {
      // some variable appears in only one argument: gcd must be free of it;
      // replace that argument by the gcd of its coefficients
      for (int s : used) {
        if (px.uses(s) && !py.uses(s)) return core_gcd(pcontent(split(px, s)), py);
        if (py.uses(s) && !px.uses(s)) return core_gcd(px, pcontent(split(py, s)));
      }
    }
    PUni A = split(px, main), B = split(py, main);
    const Poly contA = pcontent(A), contB = pcontent(B);
    pprim(A);
    pprim(B);
    if (A.size() < B.size()) A.swap(B);
    Poly vpart;
    while (true) {
      if (B.empty()) {
        vpart = join(A, main);
        break;
      }
      if (B.size() == 1) {
        vpart = Poly(1);
        break;
      }
      PUni R = pprem(A, B);
      pprim(R);
      A.swap(B);
      B.swap(R);
    }
    return Poly::gcd(contA, contB) * vpart;
  }
};

inline Poly Poly::gcd(const Poly& x, const Poly& y) { return PolyGcdImpl::run(x, y); }

inline Poly poly_lcm(const Poly& x, const Poly& y) {
  if (x.is_zero() || y.is_zero()) return Poly();
  return PolyGcdImpl::sign_norm(x.divexact(Poly::gcd(x, y)) * y);
}

}  // namespace toricva
