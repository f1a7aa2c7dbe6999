#pragma once

#include <gmpxx.h>

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

namespace dva {

using Integer = mpz_class;
using Rational = mpq_class;

enum Var : int { VP = 0, VQ = 1, VH = 2, VA = 3, VW = 4 };
inline constexpr int kNumVars = 5;
inline constexpr std::array<const char*, kNumVars> kVarNames = {"p", "q", "h", "a", "w"};

using Exponent = std::array<int, kNumVars>;

int total_degree(const Exponent& e);
// Graded reverse lexicographic order over (p, q, h, a, w).
bool grevlex_greater(const Exponent& a, const Exponent& b);

struct DivisionByZero : std::domain_error {
  explicit DivisionByZero(const std::string& what) : std::domain_error(what) {}
};

struct PoleError : std::domain_error {
  std::string factor;
  explicit PoleError(std::string f)
      : std::domain_error("denominator vanishes at evaluation point: " + f), factor(std::move(f)) {}
};

struct ParseError : std::invalid_argument {
  explicit ParseError(const std::string& what) : std::invalid_argument(what) {}
};

inline bool is_zero(const Rational& x) { return sgn(x) == 0; }
inline bool is_one(const Rational& x) { return x == 1; }
std::string to_string(const Rational& x);

// Sparse Laurent polynomial in p, q, h, a, w with rational coefficients.
class MultiPoly {
 public:
  struct Term {
    Exponent exp;
    Rational coeff;
  };

  MultiPoly() = default;
  MultiPoly(long c);
  MultiPoly(const Rational& c);
  static MultiPoly variable(Var v, int power = 1);
  static MultiPoly monomial(const Exponent& e, const Rational& c);
  static MultiPoly from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_monomial() const { return terms_.size() == 1; }
  Rational constant_term() const;
  const Term& leading() const { return terms_.front(); }
  int degree(Var v) const;
  int low_degree(Var v) const;
  bool has_var(Var v) const;
  bool is_polynomial() const;  // no negative exponents

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const MultiPoly& o);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  MultiPoly scaled(const Rational& c) const;
  MultiPoly shifted(const Exponent& e) const;  // multiply by a monomial
  MultiPoly pow(unsigned e) const;
  bool operator==(const MultiPoly& o) const;
  bool operator!=(const MultiPoly& o) const { return !(*this == o); }

  // Evaluation into any ring T that can be built from a Rational.
  template <class T>
  T eval(const std::array<std::optional<T>, kNumVars>& values) const;

  std::string to_string() const;

 private:
  void canonicalize();
  std::vector<Term> terms_;
};

// Integer-polynomial helpers used by the rational function normal form.
namespace poly {
Integer content(const MultiPoly& f);  // gcd of (integer) coefficients, positive
Exponent min_exponents(const MultiPoly& f);
std::optional<MultiPoly> divide_exact(const MultiPoly& a, const MultiPoly& b);
// gcd of two integer-coefficient polynomials (nonnegative exponents); positive leading coefficient.
MultiPoly gcd(const MultiPoly& a, const MultiPoly& b);
MultiPoly integer_primitive(const MultiPoly& f);  // clear denominators and content
}  // namespace poly

// Canonical element of Q(p, q, h, a, w).
class RatFunc {
 public:
  RatFunc() : num_(), den_(1) {}
  RatFunc(long c) : RatFunc(Rational(c)) {}
  RatFunc(const Rational& c);
  RatFunc(const MultiPoly& n);
  RatFunc(const MultiPoly& n, const MultiPoly& d);
  static RatFunc variable(Var v, int power = 1);
  static RatFunc parse(std::string_view s);

  const MultiPoly& num() const { return num_; }
  const MultiPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const;
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  bool has_var(Var v) const { return num_.has_var(v) || den_.has_var(v); }

  RatFunc operator-() const;
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }
  RatFunc inverse() const;
  bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const RatFunc& o) const { return !(*this == o); }

  std::string to_string() const;

  template <class T>
  T eval(const std::array<std::optional<T>, kNumVars>& values) const;

 private:
  struct Raw {};
  RatFunc(Raw, MultiPoly n, MultiPoly d) : num_(std::move(n)), den_(std::move(d)) {}
  static RatFunc normalized(MultiPoly n, MultiPoly d);
  static RatFunc finish(MultiPoly n, MultiPoly d);  // coprime inputs: fix content and sign
  MultiPoly num_;
  MultiPoly den_;
};

inline bool is_zero(const RatFunc& x) { return x.is_zero(); }
inline bool is_one(const RatFunc& x) { return x.is_one(); }
inline std::string to_string(const RatFunc& x) { return x.to_string(); }

enum class ArithKind { add, sub, mul, div };
RatFunc rf_arith(ArithKind kind, const RatFunc& lhs, const RatFunc& rhs);

// Substitute RatFunc values for variables (unassigned variables stay symbolic).
RatFunc substitute(const RatFunc& f, const std::array<std::optional<RatFunc>, kNumVars>& values);

// ---------------------------------------------------------------------------
// Generic field helpers

template <class F>
F power(const F& x, long e) {
  if (e < 0) return F(1) / power(x, -e);
  F result(1), base = x;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

// ---------------------------------------------------------------------------
// Cyclotomic fields B[z]/Phi_N(z)

long euler_phi(long n);
// Coefficients of Phi_N, constant term first.
const std::vector<long>& cyclotomic_poly(long n);

template <class B>
class Cyclo {
 public:
  Cyclo() : n_(0), c_{B(0)} {}
  Cyclo(long v) : n_(0), c_{B(v)} {}
  Cyclo(const B& v) : n_(0), c_{v} {}
  Cyclo(const Rational& v)
    requires(!std::is_same_v<B, Rational>)
      : n_(0), c_{B(v)} {}
  // Element represented by the polynomial coeffs (lowest degree first) modulo Phi_N.
  static Cyclo from_poly(const std::vector<B>& coeffs, long n) {
    if (n < 2) throw std::invalid_argument("cyclotomic order must be at least 2");
    Cyclo r;
    r.n_ = n;
    r.c_ = coeffs;
    r.reduce();
    return r;
  }
  static Cyclo root(long n) { return from_poly({B(0), B(1)}, n); }

  long order() const { return n_; }
  const std::vector<B>& coeffs() const { return c_; }
  B coeff(std::size_t i) const { return i < c_.size() ? c_[i] : B(0); }
  bool is_zero() const {
    for (const auto& x : c_)
      if (!dva::is_zero(x)) return false;
    return true;
  }
  bool is_scalar() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
      if (!dva::is_zero(c_[i])) return false;
    return true;
  }

  friend Cyclo operator+(const Cyclo& a, const Cyclo& b) {
    long n = common(a, b);
    std::vector<B> r(std::max(a.c_.size(), b.c_.size()), B(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] = r[i] + a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] = r[i] + b.c_[i];
    return make(std::move(r), n);
  }
  friend Cyclo operator-(const Cyclo& a, const Cyclo& b) {
    long n = common(a, b);
    std::vector<B> r(std::max(a.c_.size(), b.c_.size()), B(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] = r[i] + a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] = r[i] - b.c_[i];
    return make(std::move(r), n);
  }
  Cyclo operator-() const {
    Cyclo r = *this;
    for (auto& x : r.c_) x = B(0) - x;
    return r;
  }
  friend Cyclo operator*(const Cyclo& a, const Cyclo& b) {
    long n = common(a, b);
    std::vector<B> r(a.c_.size() + b.c_.size() - 1, B(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (dva::is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) {
        if (dva::is_zero(b.c_[j])) continue;
        r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
      }
    }
    return make(std::move(r), n);
  }
  friend Cyclo operator/(const Cyclo& a, const Cyclo& b) { return a * b.inverse(); }
  Cyclo& operator+=(const Cyclo& o) { return *this = *this + o; }
  Cyclo& operator-=(const Cyclo& o) { return *this = *this - o; }
  Cyclo& operator*=(const Cyclo& o) { return *this = *this * o; }
  Cyclo& operator/=(const Cyclo& o) { return *this = *this / o; }

  Cyclo inverse() const {
    if (is_zero()) throw DivisionByZero("inverse of zero in cyclotomic field");
    if (n_ == 0 || c_.size() == 1) {
      Cyclo r = *this;
      r.c_ = {B(1) / c_[0]};
      return r;
    }
    // Extended Euclid in B[z]: find s with s*a = 1 mod Phi_N.
    using P = std::vector<B>;
    const auto& phi = cyclotomic_poly(n_);
    P r0, r1 = c_, s0{B(0)}, s1{B(1)};
    for (long v : phi) r0.push_back(B(v));
    trim(r1);
    while (!(r1.size() == 1 && !dva::is_zero(r1[0]))) {
      if (r1.empty()) throw DivisionByZero("element is not invertible modulo the cyclotomic polynomial");
      auto [quo, rem] = divmod(r0, r1);
      P s2 = sub(s0, mul(quo, s1));
      r0 = std::move(r1);
      r1 = std::move(rem);
      s0 = std::move(s1);
      s1 = std::move(s2);
      trim(r1);
    }
    B inv = B(1) / r1[0];
    for (auto& x : s1) x = x * inv;
    return make(std::move(s1), n_);
  }

  bool operator==(const Cyclo& o) const {
    if (n_ != o.n_ && n_ != 0 && o.n_ != 0) return false;
    std::size_t m = std::max(c_.size(), o.c_.size());
    for (std::size_t i = 0; i < m; ++i)
      if (!(coeff(i) == o.coeff(i))) return false;
    return true;
  }
  bool operator!=(const Cyclo& o) const { return !(*this == o); }

  // Textual form cyclo<N>(c0;c1;...) in powers of the root; scalars print bare.
  std::string to_string() const {
    using dva::to_string;
    if (is_scalar()) return to_string(c_[0]);
    std::string s = "cyclo<" + std::to_string(n_) + ">(";
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (i) s += ";";
      s += to_string(c_[i]);
    }
    return s + ")";
  }

 private:
  static long common(const Cyclo& a, const Cyclo& b) {
    if (a.n_ && b.n_ && a.n_ != b.n_) throw std::invalid_argument("mixing different cyclotomic orders");
    return a.n_ ? a.n_ : b.n_;
  }
  static Cyclo make(std::vector<B> c, long n) {
    Cyclo r;
    r.n_ = n;
    r.c_ = std::move(c);
    r.reduce();
    return r;
  }
  static void trim(std::vector<B>& p) {
    while (!p.empty() && dva::is_zero(p.back())) p.pop_back();
  }
  static std::vector<B> sub(const std::vector<B>& a, const std::vector<B>& b) {
    std::vector<B> r(std::max(a.size(), b.size()), B(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = r[i] + a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = r[i] - b[i];
    trim(r);
    return r;
  }
  static std::vector<B> mul(const std::vector<B>& a, const std::vector<B>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<B> r(a.size() + b.size() - 1, B(0));
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
    trim(r);
    return r;
  }
  static std::pair<std::vector<B>, std::vector<B>> divmod(std::vector<B> a, const std::vector<B>& b) {
    trim(a);
    if (a.size() < b.size()) return {{}, a};
    std::vector<B> q(a.size() - b.size() + 1, B(0));
    B lead_inv = B(1) / b.back();
    const long db = static_cast<long>(b.size()) - 1;
    for (long k = static_cast<long>(a.size()) - 1; k >= db; --k) {
      B t = a[static_cast<std::size_t>(k)] * lead_inv;
      q[static_cast<std::size_t>(k - db)] = t;
      if (dva::is_zero(t)) continue;
      for (long j = 0; j <= db; ++j)
        a[static_cast<std::size_t>(k - db + j)] = a[static_cast<std::size_t>(k - db + j)] - t * b[static_cast<std::size_t>(j)];
    }
    trim(a);
    trim(q);
    return {q, a};
  }
  void reduce() {
    if (n_ == 0) {
      if (c_.empty()) c_ = {B(0)};
      return;
    }
    const auto& phi = cyclotomic_poly(n_);
    std::size_t d = phi.size() - 1;
    for (std::size_t k = c_.size(); k-- > d;) {
      if (dva::is_zero(c_[k])) continue;
      B t = c_[k];
      for (std::size_t j = 0; j <= d; ++j)
        if (phi[j] != 0) c_[k - d + j] = c_[k - d + j] - t * B(phi[j]);
    }
    c_.resize(d, B(0));
    if (c_.empty()) c_ = {B(0)};
  }

  long n_;
  std::vector<B> c_;
};

template <class B>
bool is_zero(const Cyclo<B>& x) {
  return x.is_zero();
}
template <class B>
bool is_one(const Cyclo<B>& x) {
  return x == Cyclo<B>(1);
}
template <class B>
std::string to_string(const Cyclo<B>& x) {
  return x.to_string();
}

using CycloQ = Cyclo<Rational>;
using CycloRF = Cyclo<RatFunc>;

// Reduce a polynomial in q (other variables become coefficients) modulo Phi_N.
CycloRF cyclo_reduce(const MultiPoly& poly, long n);
CycloRF cyclo_reduce(const RatFunc& f, long n);

// ---------------------------------------------------------------------------
// Truncated power series

template <class F>
struct Series {
  std::vector<F> c;  // c[0..order]

  Series() = default;
  explicit Series(int order) : c(static_cast<std::size_t>(order) + 1, F(0)) {}
  explicit Series(std::vector<F> v) : c(std::move(v)) {}
  int order() const { return static_cast<int>(c.size()) - 1; }
  const F& operator[](int i) const { return c[static_cast<std::size_t>(i)]; }
  F& operator[](int i) { return c[static_cast<std::size_t>(i)]; }
  F at(int i) const { return i >= 0 && i <= order() ? c[static_cast<std::size_t>(i)] : F(0); }

  friend Series operator+(const Series& a, const Series& b) {
    int L = std::min(a.order(), b.order());
    Series r(L);
    for (int i = 0; i <= L; ++i) r[i] = a[i] + b[i];
    return r;
  }
  friend Series operator-(const Series& a, const Series& b) {
    int L = std::min(a.order(), b.order());
    Series r(L);
    for (int i = 0; i <= L; ++i) r[i] = a[i] - b[i];
    return r;
  }
  friend Series operator*(const Series& a, const Series& b) {
    int L = std::min(a.order(), b.order());
    Series r(L);
    for (int i = 0; i <= L; ++i) {
      if (is_zero(a[i])) continue;
      for (int j = 0; i + j <= L; ++j) r[i + j] = r[i + j] + a[i] * b[j];
    }
    return r;
  }
  Series scaled(const F& s) const {
    Series r = *this;
    for (auto& x : r.c) x = x * s;
    return r;
  }
  // x -> s*x
  Series dilated(const F& s) const {
    Series r = *this;
    F pw(1);
    for (auto& x : r.c) {
      x = x * pw;
      pw = pw * s;
    }
    return r;
  }
  Series truncated(int L) const {
    Series r = *this;
    r.c.resize(static_cast<std::size_t>(std::min(L, order())) + 1);
    return r;
  }
  Series inverse() const {
    if (is_zero(c[0])) throw DivisionByZero("series with vanishing constant term is not invertible");
    Series r(order());
    F inv0 = F(1) / c[0];
    r[0] = inv0;
    for (int n = 1; n <= order(); ++n) {
      F s(0);
      for (int k = 1; k <= n; ++k) s = s + c[static_cast<std::size_t>(k)] * r[n - k];
      r[n] = F(0) - s * inv0;
    }
    return r;
  }
  bool operator==(const Series& o) const {
    int L = std::min(order(), o.order());
    for (int i = 0; i <= L; ++i)
      if (!(c[static_cast<std::size_t>(i)] == o.c[static_cast<std::size_t>(i)])) return false;
    return true;
  }
};

// exp(sum_{n>=1} g(n) x^n / n) to order L, via n f_n = sum_{k=1}^n g(k) f_{n-k}.
template <class F>
Series<F> series_exp_of_sum(const std::function<F(int)>& g, int L) {
  Series<F> f(L);
  f[0] = F(1);
  std::vector<F> gv;
  for (int n = 1; n <= L; ++n) gv.push_back(g(n));
  for (int n = 1; n <= L; ++n) {
    F s(0);
    for (int k = 1; k <= n; ++k) s = s + gv[static_cast<std::size_t>(k - 1)] * f[n - k];
    f[n] = s / F(n);
  }
  return f;
}

// Inverse of series_exp_of_sum: g(n) = n f_n - sum_{k=1}^{n-1} g(k) f_{n-k} (requires f_0 = 1).
template <class F>
std::vector<F> series_log_coefficients(const Series<F>& f) {
  std::vector<F> g;
  for (int n = 1; n <= f.order(); ++n) {
    F s = F(n) * f[n];
    for (int k = 1; k < n; ++k) s = s - g[static_cast<std::size_t>(k - 1)] * f[n - k];
    g.push_back(s);
  }
  return g;
}

// ---------------------------------------------------------------------------
// Evaluation

template <class T>
T MultiPoly::eval(const std::array<std::optional<T>, kNumVars>& values) const {
  T sum(0);
  std::array<std::map<int, T>, kNumVars> cache;
  for (const auto& t : terms_) {
    T term{T(t.coeff)};
    for (int v = 0; v < kNumVars; ++v) {
      int e = t.exp[static_cast<std::size_t>(v)];
      if (e == 0) continue;
      if (!values[static_cast<std::size_t>(v)])
        throw std::invalid_argument(std::string("no value assigned to variable ") + kVarNames[static_cast<std::size_t>(v)]);
      auto& slot = cache[static_cast<std::size_t>(v)];
      auto it = slot.find(e);
      if (it == slot.end()) it = slot.emplace(e, power(*values[static_cast<std::size_t>(v)], e)).first;
      term = term * it->second;
    }
    sum = sum + term;
  }
  return sum;
}

template <class T>
T RatFunc::eval(const std::array<std::optional<T>, kNumVars>& values) const {
  T d = den_.eval(values);
  if (dva::is_zero(d)) throw PoleError(den_.to_string());
  return num_.eval(values) / d;
}

template <class T>
using Assignment = std::array<std::optional<T>, kNumVars>;

template <class T>
T rf_eval(const RatFunc& f, const Assignment<T>& a) {
  return f.eval(a);
}

}  // namespace dva
