// Elements of the base field F = Q(e1, e2) (optionally extended by a formal
// parameter beta), kept in canonical form: numerator and denominator are
// integer polynomials, gcd-reduced including integer content, denominator
// nonzero with positive leading coefficient in graded lex order, zero is 0/1.
// e3 never appears in stored values; it abbreviates -e1-e2 at the boundary
// (parser and pretty printer).

#pragma once

#include <cctype>
#include <cstdlib>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "toricva/poly.hpp"

namespace toricva {

class RatFun {
 public:
  RatFun() : n_(), d_(1) {}
  RatFun(int v) : n_(v), d_(1) {}    // NOLINT: implicit by design
  RatFun(Int v) : n_(std::move(v)), d_(1) {}  // NOLINT
  RatFun(Poly p) : n_(std::move(p)), d_(1) {} // NOLINT
  RatFun(Poly num, Poly den) : n_(std::move(num)), d_(std::move(den)) {
    normalize();
  }

  static RatFun var(int slot) { return RatFun(Poly::var(slot)); }

  const Poly& num() const { return n_; }
  const Poly& den() const { return d_; }

  bool is_zero() const { return n_.is_zero(); }
  bool is_one() const { return n_.is_one() && d_.is_one(); }
  bool is_polynomial() const { return d_.is_constant(); }
  bool is_integer() const { return n_.is_constant() && d_.is_one(); }
  bool is_rational() const { return n_.is_constant() && d_.is_constant(); }
  // requires is_integer()
  Int as_int() const { return n_.as_int(); }
  // requires is_rational(); denominator positive
  std::pair<Int, Int> as_q() const { return {n_.as_int(), d_.as_int()}; }

  friend RatFun operator+(const RatFun& x, const RatFun& y) {
    if (x.is_zero()) return y;
    if (y.is_zero()) return x;
    const Poly g = Poly::gcd(x.d_, y.d_);
    const Poly xb = x.d_.divexact(g), yb = y.d_.divexact(g);
    return RatFun(x.n_ * yb + y.n_ * xb, xb * y.d_);
  }
  friend RatFun operator-(const RatFun& x, const RatFun& y) { return x + (-y); }
  RatFun operator-() const {
    RatFun r = *this;
    r.n_ = -r.n_;
    return r;
  }
  friend RatFun operator*(const RatFun& x, const RatFun& y) {
    if (x.is_zero() || y.is_zero()) return RatFun();
    const Poly g1 = Poly::gcd(x.n_, y.d_);
    const Poly g2 = Poly::gcd(y.n_, x.d_);
    return RatFun(x.n_.divexact(g1) * y.n_.divexact(g2),
                  x.d_.divexact(g2) * y.d_.divexact(g1));
  }
  friend RatFun operator/(const RatFun& x, const RatFun& y) {
    return x * y.inverse();
  }
  RatFun inverse() const {
    if (is_zero()) throw std::domain_error("division by zero in F");
    return RatFun(d_, n_);
  }
  RatFun pow(int k) const {
    if (k < 0) return inverse().pow(-k);
    RatFun r(1);
    RatFun base = *this;
    unsigned n = unsigned(k);
    while (n) {
      if (n & 1u) r = r * base;
      n >>= 1u;
      if (n) base = base * base;
    }
    return r;
  }

  RatFun& operator+=(const RatFun& o) { return *this = *this + o; }
  RatFun& operator-=(const RatFun& o) { return *this = *this - o; }
  RatFun& operator*=(const RatFun& o) { return *this = *this * o; }
  RatFun& operator/=(const RatFun& o) { return *this = *this / o; }

  friend bool operator==(const RatFun& x, const RatFun& y) {
    return x.n_ == y.n_ && x.d_ == y.d_;
  }
  friend bool operator<(const RatFun& x, const RatFun& y) {
    if (x.n_ == y.n_) return x.d_ < y.d_;
    return x.n_ < y.n_;
  }

  std::string str(const std::array<std::string, 3>& names = {"e1", "e2",
                                                             "beta"}) const {
    return "(" + n_.str(names) + ")/(" + d_.str(names) + ")";
  }

  std::string pretty() const;  // human form, re-introducing e3 where shorter

 private:
  Poly n_, d_;

  void normalize() {
    if (d_.is_zero()) throw std::domain_error("zero denominator in F");
    if (n_.is_zero()) {
      d_ = Poly(1);
      return;
    }
    const Poly g = Poly::gcd(n_, d_);
    if (!g.is_one()) {
      n_ = n_.divexact(g);
      d_ = d_.divexact(g);
    }
    if (d_.leading().second < 0) {
      n_ = -n_;
      d_ = -d_;
    }
  }
};

inline RatFun rf_normalize(Poly num, Poly den) {
  return RatFun(std::move(num), std::move(den));
}

// `p` uses slot 2 as e3; substitute e3 = -e1-e2
inline RatFun eliminate_e3(const Poly& p) {
  return RatFun(p.subst(2, -(Poly::var(0) + Poly::var(1))));
}

// ---------------------------------------------------------------------------
// Parsing. Grammar (whitespace-insensitive, '#' starts a line comment):
//   expr   := term (('+' | '-') term)*
//   term   := factor (('*' | '/') factor)*
//   factor := ('-' | '+')* primary ('^' ('-'? integer))?
//   primary := integer | 'e1' | 'e2' | 'e3' | 'beta' | '(' expr ')'
// e3 evaluates to -e1-e2 on the spot. Errors carry line and column.

struct ParseError : std::runtime_error {
  int line, col;
  ParseError(int l, int c, const std::string& msg)
      : std::runtime_error("parse error at " + std::to_string(l) + ":" +
                           std::to_string(c) + ": " + msg),
        line(l),
        col(c) {}
};

class RfParser {
 public:
  explicit RfParser(std::string_view text) : s_(text) {}

  RatFun parse_all() {
    RatFun v = expr();
    skip_ws();
    if (pos_ < s_.size()) fail("trailing input");
    return v;
  }

  // for embedding in structured-text readers: parse one expression, stop at
  // the first character that cannot extend it
  RatFun expr() {
    RatFun v = term();
    while (true) {
      skip_ws();
      if (peek() == '+') {
        get();
        v += term();
      } else if (peek() == '-') {
        get();
        v -= term();
      } else {
        return v;
      }
    }
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(line_, col_, msg);
  }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  char get() {
    const char c = s_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }
  void skip_ws() {
    while (pos_ < s_.size()) {
      if (std::isspace((unsigned char)peek())) {
        get();
      } else if (peek() == '#') {
        while (pos_ < s_.size() && peek() != '\n') get();
      } else {
        break;
      }
    }
  }

  RatFun term() {
    RatFun v = factor();
    while (true) {
      skip_ws();
      if (peek() == '*') {
        get();
        v *= factor();
      } else if (peek() == '/') {
        get();
        const int l = line_, c = col_;
        RatFun d = factor();
        if (d.is_zero()) throw ParseError(l, c, "division by zero");
        v /= d;
      } else {
        return v;
      }
    }
  }

  RatFun factor() {
    skip_ws();
    bool neg = false;
    while (peek() == '-' || peek() == '+') {
      if (get() == '-') neg = !neg;
      skip_ws();
    }
    RatFun v = primary();
    skip_ws();
    if (peek() == '^') {
      get();
      skip_ws();
      bool eneg = false;
      if (peek() == '-') {
        get();
        eneg = true;
      }
      if (!std::isdigit((unsigned char)peek())) fail("expected exponent");
      long k = 0;
      while (std::isdigit((unsigned char)peek())) {
        k = k * 10 + (get() - '0');
        if (k > 1000000) fail("exponent too large");
      }
      const int l = line_, c = col_;
      try {
        v = v.pow(int(eneg ? -k : k));
      } catch (const std::domain_error&) {
        throw ParseError(l, c, "zero raised to negative power");
      }
    }
    return neg ? -v : v;
  }

  RatFun primary() {
    skip_ws();
    const int l = line_, c = col_;
    if (peek() == '(') {
      get();
      RatFun v = expr();
      skip_ws();
      if (peek() != ')') fail("expected ')'");
      get();
      return v;
    }
    if (std::isdigit((unsigned char)peek())) {
      std::string digits;
      while (std::isdigit((unsigned char)peek())) digits += get();
      return RatFun(Int(digits));
    }
    if (std::isalpha((unsigned char)peek())) {
      std::string name;
      while (std::isalnum((unsigned char)peek()) || peek() == '_') name += get();
      if (name == "e1") return RatFun::var(0);
      if (name == "e2") return RatFun::var(1);
      if (name == "e3") return -(RatFun::var(0) + RatFun::var(1));
      if (name == "beta") return RatFun::var(2);
      throw ParseError(l, c, "unknown symbol '" + name + "'");
    }
    fail("expected a value");
  }
};

inline RatFun rf_parse(std::string_view text) { return RfParser(text).parse_all(); }

// ---------------------------------------------------------------------------
// Pretty printing: factor homogeneous (e1,e2)-forms into linear pieces and
// re-express each piece with e3 = -e1-e2 when that is strictly shorter
// (so -e1-e2 prints as e3, -2*e1-e2 as e3-e1, and so on).

namespace detail {

struct LinForm {  // alpha*e1 + beta*e2 + gamma*e3, as chosen for display
  long alpha = 0, beta = 0, gamma = 0;

  std::string str() const {
    std::string s;
    auto emit = [&s](long coeff, const char* name) {
      if (coeff == 0) return;
      const long m = coeff < 0 ? -coeff : coeff;
      if (s.empty()) {
        if (coeff < 0) s += "-";
      } else {
        s += coeff < 0 ? "-" : "+";
      }
      if (m != 1) s += std::to_string(m) + "*";
      s += name;
    };
    emit(gamma, "e3");
    emit(alpha, "e1");
    emit(beta, "e2");
    return s.empty() ? "0" : s;
  }
  int weight() const {
    return int(std::abs(alpha) + std::abs(beta) + std::abs(gamma));
  }
  int nonzeros() const {
    return (alpha != 0) + (beta != 0) + (gamma != 0);
  }
};

// choose the display of a*e1+b*e2 (sign of the whole form may flip;
// returns false in `plus` when the chosen display is the negation)
inline LinForm choose_form(long a, long b, bool& plus) {
  LinForm best;
  bool have = false;
  bool best_plus = true;
  auto consider = [&](long aa, long bb, bool sign_plus) {
    const long lim = std::max(std::labs(aa), std::labs(bb)) + 1;
    for (long g = -lim; g <= lim; ++g) {
      LinForm f{aa + g, bb + g, g};
      if (!have) {
        best = f;
        best_plus = sign_plus;
        have = true;
        continue;
      }
      const auto key = [](const LinForm& x) {
        return std::tuple(x.weight(), x.nonzeros(), std::labs(x.gamma),
                          x.gamma < 0);
      };
      if (key(f) < key(best)) {
        best = f;
        best_plus = sign_plus;
      } else if (key(f) == key(best) && sign_plus && !best_plus) {
        best = f;
        best_plus = true;
      }
    }
  };
  consider(a, b, true);
  consider(-a, -b, false);
  // canonical sign: leading displayed coefficient positive
  const long lead = best.gamma != 0 ? best.gamma : (best.alpha != 0 ? best.alpha : best.beta);
  if (lead < 0) {
    best.alpha = -best.alpha;
    best.beta = -best.beta;
    best.gamma = -best.gamma;
    best_plus = !best_plus;
  }
  plus = best_plus;
  return best;
}

struct Factored {
  Int unit = 1;                        // +-1 and integer content
  std::vector<std::pair<LinForm, int>> forms;  // with multiplicities
  Poly rest;                           // unfactored remainder (may be 1)
};

// factor out rational linear forms from a homogeneous polynomial in e1,e2
inline Factored factor_forms(Poly p) {
  Factored out;
  out.rest = Poly(1);
  if (p.is_zero()) {
    out.unit = 0;
    return out;
  }
  const Int c = p.content();
  out.unit = p.leading().second < 0 ? Int(-c) : c;
  p = p.divexact_int(out.unit);
  if (p.uses(2) || !p.homogeneous()) {
    out.rest = p;
    return out;
  }
  auto strip = [&](int slot, long a, long b) {
    const int m = p.min_degree_in(slot);
    if (m > 0) {
      Exp e{};
      e.slot(slot) = -m;
      p = p.mul_mono(e, 1);
      bool plus = true;
      out.forms.push_back({choose_form(a, b, plus), m});
      if (!plus) throw std::logic_error("unreachable");  // e1,e2 display as-is
    }
  };
  strip(0, 1, 0);
  strip(1, 0, 1);
  if (p.is_constant()) return out;

  // dehomogenize: f(t) with t <-> e1/e2, constant term nonzero
  const int d = p.total_degree();
  std::vector<Int> f(std::size_t(d) + 1);
  for (const auto& [e, coeff] : p.terms()) f[std::size_t(e.a)] = coeff;
  // rational roots p0/q0: factor (q0*e1 - p0*e2)
  auto divisors = [](Int n) {
    std::vector<Int> ds;
    if (n < 0) n = -n;
    for (Int i = 1; i * i <= n; ++i)
      if (n % i == 0) {
        ds.push_back(i);
        if (i * i != n) ds.push_back(n / i);
      }
    return ds;
  };
  bool progress = true;
  while (progress && f.size() > 1) {
    progress = false;
    if (f[0] == 0 || f.back() == 0) break;  // stripped already; safety
    if (f[0] > 1000000000 || f[0] < -1000000000) break;
    if (f.back() > 1000000000 || f.back() < -1000000000) break;
    for (const Int& p0a : divisors(f[0])) {
      for (const Int& q0 : divisors(f.back())) {
        for (int sgn = 1; sgn >= -1 && !progress; sgn -= 2) {
          const Int p0 = p0a * sgn;
          if (int_gcd(p0, q0) != 1) continue;
          // synthetic division by (q0 t - p0)
          std::vector<Int> g(f.size() - 1);
          Int carry = f.back();
          bool exact = true;
          for (std::size_t i = f.size() - 1; i-- > 0;) {
            if (carry % q0 != 0) {
              exact = false;
              break;
            }
            g[i] = carry / q0;
            carry = f[i] + g[i] * p0;
          }
          if (!exact || carry != 0) continue;
          bool plus = true;
          const Int mp0 = -p0;
          const LinForm lf =
              choose_form(static_cast<long>(q0), static_cast<long>(mp0), plus);
          if (!plus) out.unit = -out.unit;
          bool merged = false;
          for (auto& [form, mult] : out.forms)
            if (form.alpha == lf.alpha && form.beta == lf.beta &&
                form.gamma == lf.gamma) {
              ++mult;
              merged = true;
              break;
            }
          if (!merged) out.forms.push_back({lf, 1});
          f = g;
          progress = true;
        }
        if (progress) break;
      }
      if (progress) break;
    }
  }
  if (f.size() == 1) {
    out.unit *= f[0];
    return out;
  }
  // rehomogenize the rest
  const int dr = (int)f.size() - 1;
  Poly rest;
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (f[k] == 0) continue;
    Exp e{};
    e.a = (int)k;
    e.b = dr - (int)k;
    rest += Poly(e, f[k]);
  }
  out.rest = rest;
  return out;
}

inline std::string factored_product(const Factored& f, bool with_unit_mag,
                                    const Int& unit_mag) {
  std::vector<std::string> parts;
  if (with_unit_mag && (unit_mag != 1 || (f.forms.empty() && f.rest.is_one())))
    parts.push_back(unit_mag.str());
  for (const auto& [form, mult] : f.forms) {
    std::string s = form.str();
    if (form.nonzeros() > 1) s = "(" + s + ")";
    if (mult > 1) s += "^" + std::to_string(mult);
    parts.push_back(s);
  }
  if (!f.rest.is_one()) {
    std::string s = f.rest.str();
    if (f.rest.term_count() > 1) s = "(" + s + ")";
    parts.push_back(s);
  }
  if (parts.empty()) parts.push_back("1");
  std::string out = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) out += "*" + parts[i];
  return out;
}

}  // namespace detail

inline std::string RatFun::pretty() const {
  if (is_zero()) return "0";
  detail::Factored fn = detail::factor_forms(n_);
  detail::Factored fd = detail::factor_forms(d_);
  Int nm = fn.unit < 0 ? Int(-fn.unit) : fn.unit;
  Int dm = fd.unit < 0 ? Int(-fd.unit) : fd.unit;
  const bool neg = (fn.unit < 0) != (fd.unit < 0);
  const Int g = int_gcd(nm, dm);
  nm /= g;
  dm /= g;
  std::string num = detail::factored_product(fn, true, nm);
  const bool den_trivial =
      dm == 1 && fd.forms.empty() && fd.rest.is_one();
  std::string out;
  if (den_trivial) {
    out = num;
    // a lone parenthesized factor needs no outer parens at top level
    // (unless the whole expression is negated: -(e1-e2) must keep them)
    if (!neg && out.size() > 2 && out.front() == '(' && out.back() == ')') {
      int depth = 0;
      bool full = true;
      for (std::size_t i = 0; i + 1 < out.size(); ++i) {
        depth += out[i] == '(' ? 1 : (out[i] == ')' ? -1 : 0);
        if (depth == 0) {
          full = false;
          break;
        }
      }
      if (full) out = out.substr(1, out.size() - 2);
    }
  } else {
    std::string den = detail::factored_product(fd, true, dm);
    const bool num_sum = num.find_first_of("+-", 1) != std::string::npos &&
                         num.front() != '(';
    const bool den_atom = den.find('*') == std::string::npos &&
                          den.find_first_of("+-", 1) == std::string::npos;
    if (num_sum) num = "(" + num + ")";
    if (!den_atom && den.front() != '(') den = "(" + den + ")";
    out = num + "/" + den;
  }
  return neg ? "-" + out : out;
}

}  // namespace toricva
