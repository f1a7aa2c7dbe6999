#include <cctype>
#include <mutex>

#include "dva/exactfield.hpp"

namespace dva {

namespace {

// Move negative exponents of n/d into the other side so both are polynomials.
void clear_laurent(MultiPoly& n, MultiPoly& d) {
  Exponent mn = poly::min_exponents(n), md = poly::min_exponents(d);
  Exponent sn{}, sd{};
  for (std::size_t k = 0; k < mn.size(); ++k) {
    int diff = mn[k] - md[k];
    sn[k] = -mn[k] + std::max(0, diff);
    sd[k] = -md[k] + std::max(0, -diff);
  }
  n = n.shifted(sn);
  d = d.shifted(sd);
}

Integer denominator_lcm(const MultiPoly& f) {
  Integer l = 1;
  for (const auto& t : f.terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coeff.get_den_mpz_t());
  return l;
}

MultiPoly exact(const MultiPoly& a, const MultiPoly& b) {
  auto q = poly::divide_exact(a, b);
  if (!q) throw std::logic_error("gcd cofactor division failed");
  return *q;
}

}  // namespace

RatFunc::RatFunc(const Rational& c) : num_(c), den_(1) {
  if (sgn(c) != 0) {
    num_ = MultiPoly(Rational(c.get_num()));
    den_ = MultiPoly(Rational(c.get_den()));
  }
}

RatFunc::RatFunc(const MultiPoly& n) : RatFunc(normalized(n, MultiPoly(1))) {}

RatFunc::RatFunc(const MultiPoly& n, const MultiPoly& d) : RatFunc(normalized(n, d)) {}

RatFunc RatFunc::variable(Var v, int power) { return RatFunc(MultiPoly::variable(v, power)); }

bool RatFunc::is_one() const { return num_ == den_; }

RatFunc RatFunc::normalized(MultiPoly n, MultiPoly d) {
  if (d.is_zero()) throw DivisionByZero("rational function with zero denominator");
  if (n.is_zero()) return RatFunc(Raw{}, MultiPoly(), MultiPoly(1));
  Integer l = denominator_lcm(n);
  mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), denominator_lcm(d).get_mpz_t());
  if (l != 1) {
    n = n.scaled(Rational(l));
    d = d.scaled(Rational(l));
  }
  clear_laurent(n, d);
  MultiPoly g = poly::gcd(n, d);
  if (!g.is_constant()) {
    n = exact(n, g);
    d = exact(d, g);
  }
  return finish(std::move(n), std::move(d));
}

RatFunc RatFunc::finish(MultiPoly n, MultiPoly d) {
  if (n.is_zero()) return RatFunc(Raw{}, MultiPoly(), MultiPoly(1));
  Integer cn = poly::content(n), cd = poly::content(d), c;
  mpz_gcd(c.get_mpz_t(), cn.get_mpz_t(), cd.get_mpz_t());
  if (sgn(d.leading().coeff) < 0) c = -c;
  if (c != 1) {
    Rational s = Rational(1) / Rational(c);
    n = n.scaled(s);
    d = d.scaled(s);
  }
  return RatFunc(Raw{}, std::move(n), std::move(d));
}

RatFunc RatFunc::operator-() const { return RatFunc(Raw{}, -num_, den_); }

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) {
    MultiPoly n = a.num_ + b.num_;
    if (a.den_.is_constant()) return RatFunc::finish(std::move(n), a.den_);
    return RatFunc::normalized(std::move(n), a.den_);
  }
  MultiPoly g = poly::gcd(a.den_, b.den_);
  if (g.is_constant()) {
    MultiPoly n = a.num_ * b.den_ + b.num_ * a.den_;
    return RatFunc::finish(std::move(n), a.den_ * b.den_);
  }
  MultiPoly ad = exact(a.den_, g), bd = exact(b.den_, g);
  MultiPoly n = a.num_ * bd + b.num_ * ad;
  if (n.is_zero()) return RatFunc();
  MultiPoly g2 = poly::gcd(n, g);
  MultiPoly d = ad * b.den_;
  if (!g2.is_constant()) {
    n = exact(n, g2);
    d = exact(d, g2);
  }
  return RatFunc::finish(std::move(n), std::move(d));
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero() || b.is_zero()) return RatFunc();
  if (a.is_constant() && b.is_constant())
    return RatFunc(Rational(a.num_.constant_term() * b.num_.constant_term() /
                            (a.den_.constant_term() * b.den_.constant_term())));
  MultiPoly g1 = poly::gcd(a.num_, b.den_), g2 = poly::gcd(b.num_, a.den_);
  MultiPoly an = a.num_, bd = b.den_, bn = b.num_, ad = a.den_;
  if (!g1.is_constant()) {
    an = exact(an, g1);
    bd = exact(bd, g1);
  }
  if (!g2.is_constant()) {
    bn = exact(bn, g2);
    ad = exact(ad, g2);
  }
  return RatFunc::finish(an * bn, ad * bd);
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero rational function");
  return finish(den_, num_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
  if (b.is_zero()) throw DivisionByZero("rational function division by zero");
  return a * b.inverse();
}

std::string RatFunc::to_string() const {
  if (den_.is_constant() && den_.constant_term() == 1) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

RatFunc rf_arith(ArithKind kind, const RatFunc& lhs, const RatFunc& rhs) {
  switch (kind) {
    case ArithKind::add: return lhs + rhs;
    case ArithKind::sub: return lhs - rhs;
    case ArithKind::mul: return lhs * rhs;
    case ArithKind::div: return lhs / rhs;
  }
  throw std::invalid_argument("unknown arithmetic kind");
}

RatFunc substitute(const RatFunc& f, const std::array<std::optional<RatFunc>, kNumVars>& values) {
  std::array<std::optional<RatFunc>, kNumVars> full = values;
  for (int v = 0; v < kNumVars; ++v)
    if (!full[static_cast<std::size_t>(v)]) full[static_cast<std::size_t>(v)] = RatFunc::variable(static_cast<Var>(v));
  return f.eval(full);
}

// ---------------------------------------------------------------------------
// Parser: sums, products, quotients, integer powers, parentheses.

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  RatFunc parse_all() {
    RatFunc r = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " at position " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  RatFunc expr() {
    RatFunc r = term();
    for (;;) {
      if (eat('+'))
        r = r + term();
      else if (eat('-'))
        r = r - term();
      else
        return r;
    }
  }
  RatFunc term() {
    RatFunc r = unary();
    for (;;) {
      if (eat('*'))
        r = r * unary();
      else if (eat('/'))
        r = r / unary();
      else
        return r;
    }
  }
  RatFunc unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return pow();
  }
  RatFunc pow() {
    RatFunc base = atom();
    if (eat('^')) {
      bool neg = eat('-');
      skip();
      long e = integer_literal();
      return power(base, neg ? -e : e);
    }
    return base;
  }
  long integer_literal() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer exponent");
    return std::stol(std::string(s_.substr(start, pos_ - start)));
  }
  RatFunc atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      RatFunc r = expr();
      if (!eat(')')) fail("expected ')'");
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return RatFunc(Rational(Integer(std::string(s_.substr(start, pos_ - start)))));
    }
    for (int v = 0; v < kNumVars; ++v) {
      if (c == kVarNames[static_cast<std::size_t>(v)][0]) {
        ++pos_;
        return RatFunc::variable(static_cast<Var>(v));
      }
    }
    fail("unexpected character");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

RatFunc RatFunc::parse(std::string_view s) { return Parser(s).parse_all(); }

// ---------------------------------------------------------------------------
// Cyclotomic polynomials

long euler_phi(long n) {
  long result = n;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

const std::vector<long>& cyclotomic_poly(long n) {
  static std::map<long, std::vector<long>> cache;
  static std::recursive_mutex mu;
  std::lock_guard<std::recursive_mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  // x^n - 1 divided by Phi_d for proper divisors d.
  std::vector<long> num(static_cast<std::size_t>(n) + 1, 0);
  num[0] = -1;
  num[static_cast<std::size_t>(n)] = 1;
  for (long d = 1; d < n; ++d) {
    if (n % d) continue;
    const std::vector<long>& den = cyclotomic_poly(d);
    std::size_t dd = den.size() - 1;
    std::vector<long> quo(num.size() - dd, 0);
    for (std::size_t k = num.size(); k-- > dd;) {
      long t = num[k];
      quo[k - dd] = t;
      if (t)
        for (std::size_t j = 0; j <= dd; ++j) num[k - dd + j] -= t * den[j];
    }
    num = quo;
  }
  return cache.emplace(n, num).first->second;
}

CycloRF cyclo_reduce(const MultiPoly& poly, long n) {
  if (n < 2) throw std::invalid_argument("cyclotomic order must be at least 2");
  // Negative powers of q become positive ones via q^n = 1.
  std::map<long, std::vector<MultiPoly::Term>> by_power;
  for (const auto& t : poly.terms()) {
    long e = t.exp[VQ];
    e = ((e % n) + n) % n;
    Exponent rest = t.exp;
    rest[VQ] = 0;
    by_power[e].push_back({rest, t.coeff});
  }
  std::vector<RatFunc> coeffs(static_cast<std::size_t>(n), RatFunc());
  for (auto& [e, ts] : by_power) coeffs[static_cast<std::size_t>(e)] = RatFunc(MultiPoly::from_terms(std::move(ts)));
  return CycloRF::from_poly(coeffs, n);
}

CycloRF cyclo_reduce(const RatFunc& f, long n) {
  return cyclo_reduce(f.num(), n) / cyclo_reduce(f.den(), n);
}

}  // namespace dva
