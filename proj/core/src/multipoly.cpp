#include "dva/exactfield.hpp"

#include <algorithm>

namespace dva {

int total_degree(const Exponent& e) {
  int s = 0;
  for (int x : e) s += x;
  return s;
}

bool grevlex_greater(const Exponent& a, const Exponent& b) {
  int ta = total_degree(a), tb = total_degree(b);
  if (ta != tb) return ta > tb;
  for (int i = kNumVars - 1; i >= 0; --i)
    if (a[static_cast<std::size_t>(i)] != b[static_cast<std::size_t>(i)])
      return a[static_cast<std::size_t>(i)] < b[static_cast<std::size_t>(i)];
  return false;
}

std::string to_string(const Rational& x) { return x.get_str(); }

MultiPoly::MultiPoly(long c) : MultiPoly(Rational(c)) {}

MultiPoly::MultiPoly(const Rational& c) {
  if (sgn(c) != 0) terms_.push_back({Exponent{}, c});
}

MultiPoly MultiPoly::variable(Var v, int power) {
  Exponent e{};
  e[static_cast<std::size_t>(v)] = power;
  return monomial(e, 1);
}

MultiPoly MultiPoly::monomial(const Exponent& e, const Rational& c) {
  MultiPoly r;
  if (sgn(c) != 0) r.terms_.push_back({e, c});
  return r;
}

MultiPoly MultiPoly::from_terms(std::vector<Term> terms) {
  MultiPoly r;
  r.terms_ = std::move(terms);
  r.canonicalize();
  return r;
}

void MultiPoly::canonicalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return grevlex_greater(a.exp, b.exp); });
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().exp == t.exp)
      out.back().coeff += t.coeff;
    else
      out.push_back(std::move(t));
  }
  terms_.clear();
  for (auto& t : out)
    if (sgn(t.coeff) != 0) terms_.push_back(std::move(t));
}

bool MultiPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].exp == Exponent{});
}

Rational MultiPoly::constant_term() const {
  for (const auto& t : terms_)
    if (t.exp == Exponent{}) return t.coeff;
  return 0;
}

int MultiPoly::degree(Var v) const {
  int d = 0;
  bool first = true;
  for (const auto& t : terms_) {
    int e = t.exp[static_cast<std::size_t>(v)];
    if (first || e > d) d = e;
    first = false;
  }
  return d;
}

int MultiPoly::low_degree(Var v) const {
  int d = 0;
  bool first = true;
  for (const auto& t : terms_) {
    int e = t.exp[static_cast<std::size_t>(v)];
    if (first || e < d) d = e;
    first = false;
  }
  return d;
}

bool MultiPoly::has_var(Var v) const {
  for (const auto& t : terms_)
    if (t.exp[static_cast<std::size_t>(v)] != 0) return true;
  return false;
}

bool MultiPoly::is_polynomial() const {
  for (const auto& t : terms_)
    for (int e : t.exp)
      if (e < 0) return false;
  return true;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

namespace {

// Merge two grevlex-sorted term lists, with b scaled by sign.
std::vector<MultiPoly::Term> merge_terms(const std::vector<MultiPoly::Term>& a,
                                         const std::vector<MultiPoly::Term>& b, bool subtract) {
  std::vector<MultiPoly::Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && grevlex_greater(a[i].exp, b[j].exp))) {
      out.push_back(a[i++]);
    } else if (i == a.size() || grevlex_greater(b[j].exp, a[i].exp)) {
      out.push_back(b[j++]);
      if (subtract) out.back().coeff = -out.back().coeff;
    } else {
      Rational c = subtract ? Rational(a[i].coeff - b[j].coeff) : Rational(a[i].coeff + b[j].coeff);
      if (sgn(c) != 0) out.push_back({a[i].exp, c});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  terms_ = merge_terms(terms_, o.terms_, false);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  terms_ = merge_terms(terms_, o.terms_, true);
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  if (a.is_zero() || b.is_zero()) return MultiPoly();
  if (a.terms_.size() == 1) return b.shifted(a.terms_[0].exp).scaled(a.terms_[0].coeff);
  if (b.terms_.size() == 1) return a.shifted(b.terms_[0].exp).scaled(b.terms_[0].coeff);
  std::vector<MultiPoly::Term> prod;
  prod.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_) {
      Exponent e;
      for (std::size_t k = 0; k < e.size(); ++k) e[k] = x.exp[k] + y.exp[k];
      prod.push_back({e, x.coeff * y.coeff});
    }
  return MultiPoly::from_terms(std::move(prod));
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& o) { return *this = *this * o; }

MultiPoly MultiPoly::scaled(const Rational& c) const {
  if (sgn(c) == 0) return MultiPoly();
  MultiPoly r = *this;
  for (auto& t : r.terms_) t.coeff *= c;
  return r;
}

MultiPoly MultiPoly::shifted(const Exponent& e) const {
  MultiPoly r = *this;
  for (auto& t : r.terms_)
    for (std::size_t k = 0; k < e.size(); ++k) t.exp[k] += e[k];
  return r;
}

MultiPoly MultiPoly::pow(unsigned e) const {
  MultiPoly result(1), base = *this;
  while (e) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e) base = base * base;
  }
  return result;
}

bool MultiPoly::operator==(const MultiPoly& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].exp != o.terms_[i].exp || terms_[i].coeff != o.terms_[i].coeff) return false;
  return true;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& t : terms_) {
    Rational c = t.coeff;
    bool neg = sgn(c) < 0;
    if (neg) c = -c;
    if (neg)
      s += "-";
    else if (!first)
      s += "+";
    first = false;
    bool unit_monomial = t.exp == Exponent{};
    bool wrote = false;
    if (c != 1 || unit_monomial) {
      s += c.get_str();
      wrote = true;
    }
    for (int v = 0; v < kNumVars; ++v) {
      int e = t.exp[static_cast<std::size_t>(v)];
      if (e == 0) continue;
      if (wrote) s += "*";
      s += kVarNames[static_cast<std::size_t>(v)];
      if (e != 1) s += "^" + std::to_string(e);
      wrote = true;
    }
  }
  return s;
}

}  // namespace dva
