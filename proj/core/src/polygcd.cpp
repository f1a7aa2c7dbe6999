// Integer multivariate gcd: heuristic evaluation/interpolation with a
// primitive pseudo-remainder fallback.
#include "dva/exactfield.hpp"

#include <algorithm>

namespace dva::poly {

namespace {

using Term = MultiPoly::Term;

Integer as_integer(const Rational& c) { return c.get_num(); }

bool all_integer(const MultiPoly& f) {
  for (const auto& t : f.terms())
    if (t.coeff.get_den() != 1) return false;
  return true;
}

Integer max_norm(const MultiPoly& f) {
  Integer m = 0;
  for (const auto& t : f.terms()) {
    Integer a = abs(as_integer(t.coeff));
    if (a > m) m = a;
  }
  return m;
}

MultiPoly positive_lead(const MultiPoly& f) {
  if (!f.is_zero() && sgn(f.leading().coeff) < 0) return -f;
  return f;
}

MultiPoly divide_content(const MultiPoly& f, const Integer& c) {
  if (c == 1) return f;
  return f.scaled(Rational(1) / Rational(c));
}

// Substitute v = x (an integer) in f.
MultiPoly eval_at(const MultiPoly& f, Var v, const Integer& x) {
  std::vector<Term> out;
  std::map<int, Integer> pw;
  for (const auto& t : f.terms()) {
    int e = t.exp[static_cast<std::size_t>(v)];
    auto it = pw.find(e);
    if (it == pw.end()) {
      Integer r;
      mpz_pow_ui(r.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(e));
      it = pw.emplace(e, r).first;
    }
    Exponent ex = t.exp;
    ex[static_cast<std::size_t>(v)] = 0;
    out.push_back({ex, t.coeff * Rational(it->second)});
  }
  return MultiPoly::from_terms(std::move(out));
}

// Symmetric x-adic expansion of integer coefficients into powers of v.
MultiPoly interpolate(const MultiPoly& h, Var v, const Integer& x) {
  std::vector<Term> out;
  Integer half = x / 2;
  for (const auto& t : h.terms()) {
    Integer c = as_integer(t.coeff);
    int i = 0;
    while (c != 0) {
      Integer d;
      mpz_fdiv_r(d.get_mpz_t(), c.get_mpz_t(), x.get_mpz_t());
      if (d > half) d -= x;
      if (d != 0) {
        Exponent e = t.exp;
        e[static_cast<std::size_t>(v)] = i;
        out.push_back({e, Rational(d)});
      }
      c = (c - d) / x;
      ++i;
    }
  }
  return MultiPoly::from_terms(std::move(out));
}

// Coefficients of f viewed as a polynomial in v.
std::map<int, MultiPoly> coeffs_in(const MultiPoly& f, Var v) {
  std::map<int, std::vector<Term>> acc;
  for (const auto& t : f.terms()) {
    Exponent e = t.exp;
    int d = e[static_cast<std::size_t>(v)];
    e[static_cast<std::size_t>(v)] = 0;
    acc[d].push_back({e, t.coeff});
  }
  std::map<int, MultiPoly> out;
  for (auto& [d, ts] : acc) out.emplace(d, MultiPoly::from_terms(std::move(ts)));
  return out;
}

MultiPoly gcd_primitive(const MultiPoly& a, const MultiPoly& b);

// Content with respect to v (gcd of the coefficient polynomials).
MultiPoly content_in(const MultiPoly& f, Var v) {
  MultiPoly g;
  for (const auto& [d, c] : coeffs_in(f, v)) {
    g = g.is_zero() ? positive_lead(c) : gcd(g, c);
    if (g.is_constant()) break;
  }
  return g;
}

MultiPoly pseudo_remainder(const MultiPoly& a, const MultiPoly& b, Var v) {
  auto bc = coeffs_in(b, v);
  int db = bc.rbegin()->first;
  MultiPoly lb = bc.rbegin()->second;
  Exponent shift{};
  MultiPoly r = a;
  while (!r.is_zero() && r.degree(v) >= db) {
    auto rc = coeffs_in(r, v);
    int dr = rc.rbegin()->first;
    MultiPoly lr = rc.rbegin()->second;
    shift = Exponent{};
    shift[static_cast<std::size_t>(v)] = dr - db;
    r = r * lb - (b * lr).shifted(shift);
  }
  return r;
}

MultiPoly prs_gcd(const MultiPoly& a0, const MultiPoly& b0, Var v) {
  MultiPoly ca = content_in(a0, v), cb = content_in(b0, v);
  MultiPoly c = gcd(ca, cb);
  MultiPoly a = *divide_exact(a0, ca), b = *divide_exact(b0, cb);
  if (a.degree(v) < b.degree(v)) std::swap(a, b);
  while (!b.is_zero() && b.degree(v) > 0) {
    MultiPoly r = pseudo_remainder(a, b, v);
    a = b;
    if (r.is_zero()) {
      b = MultiPoly();
      break;
    }
    MultiPoly cr = content_in(r, v);
    b = *divide_exact(r, cr);
  }
  MultiPoly g = b.is_zero() ? a : MultiPoly(1);
  MultiPoly cg = content_in(g, v);
  g = *divide_exact(g, cg);
  return positive_lead(g * c);
}

std::optional<MultiPoly> heuristic_gcd(const MultiPoly& f, const MultiPoly& g, Var v) {
  Integer nf = max_norm(f), ng = max_norm(g);
  Integer B = 2 * std::min(nf, ng) + 29;
  Integer sq = sqrt(B);
  Integer x = std::min(B, Integer(99 * sq));
  Integer lf = abs(as_integer(f.leading().coeff)), lg = abs(as_integer(g.leading().coeff));
  Integer alt = 2 * std::min(Integer(nf / lf), Integer(ng / lg)) + 2;
  if (alt > x) x = alt;
  // Keep x above 2 min(|f|, |g|) + 1 so that a divisor check certifies the gcd.
  Integer safe = 2 * std::min(nf, ng) + 2;
  if (safe > x) x = safe;
  for (int attempt = 0; attempt < 6; ++attempt) {
    MultiPoly ff = eval_at(f, v, x), gg = eval_at(g, v, x);
    if (!ff.is_zero() && !gg.is_zero()) {
      MultiPoly hh = gcd(ff, gg);
      MultiPoly h = interpolate(hh, v, x);
      if (!h.is_zero()) {
        h = positive_lead(divide_content(h, content(h)));
        if (divide_exact(f, h) && divide_exact(g, h)) return h;
      }
      if (auto cff = divide_exact(ff, hh)) {
        MultiPoly c = interpolate(*cff, v, x);
        if (!c.is_zero())
          if (auto hq = divide_exact(f, c))
            if (divide_exact(g, *hq)) return positive_lead(*hq);
      }
      if (auto cfg = divide_exact(gg, hh)) {
        MultiPoly c = interpolate(*cfg, v, x);
        if (!c.is_zero())
          if (auto hq = divide_exact(g, c))
            if (divide_exact(f, *hq)) return positive_lead(*hq);
      }
    }
    Integer r4 = sqrt(sqrt(x));
    x = 73794 * x * r4 / 27011;
  }
  return std::nullopt;
}

// a, b: integer content 1, no monomial factor, nonconstant.
MultiPoly gcd_primitive(const MultiPoly& a, const MultiPoly& b) {
  if (a == b) return positive_lead(a);
  for (int vi = 0; vi < kNumVars; ++vi) {
    Var v = static_cast<Var>(vi);
    bool in_a = a.has_var(v), in_b = b.has_var(v);
    if (in_a == in_b) continue;
    const MultiPoly& with = in_a ? a : b;
    MultiPoly g = in_a ? b : a;
    for (const auto& [d, c] : coeffs_in(with, v)) {
      g = gcd(g, c);
      if (g.is_constant()) return MultiPoly(1);
    }
    return positive_lead(g);
  }
  // Main variable: the one of smallest combined degree.
  Var best = VP;
  int best_deg = -1;
  for (int vi = 0; vi < kNumVars; ++vi) {
    Var v = static_cast<Var>(vi);
    if (!a.has_var(v)) continue;
    int d = std::max(a.degree(v), b.degree(v));
    if (best_deg < 0 || d < best_deg) {
      best = v;
      best_deg = d;
    }
  }
  if (auto h = heuristic_gcd(a, b, best)) return *h;
  return prs_gcd(a, b, best);
}

}  // namespace

Integer content(const MultiPoly& f) {
  Integer g = 0;
  for (const auto& t : f.terms()) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_num_mpz_t());
    if (g == 1) break;
  }
  return g;
}

Exponent min_exponents(const MultiPoly& f) {
  Exponent m{};
  bool first = true;
  for (const auto& t : f.terms()) {
    for (std::size_t k = 0; k < m.size(); ++k)
      if (first || t.exp[k] < m[k]) m[k] = t.exp[k];
    first = false;
  }
  return m;
}

std::optional<MultiPoly> divide_exact(const MultiPoly& a, const MultiPoly& b) {
  if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
  if (a.is_zero()) return MultiPoly();
  bool integral = all_integer(a) && all_integer(b);
  Exponent hi{}, lo{};
  for (int v = 0; v < kNumVars; ++v) {
    auto var = static_cast<Var>(v);
    hi[static_cast<std::size_t>(v)] = a.degree(var) - b.degree(var);
    lo[static_cast<std::size_t>(v)] = a.low_degree(var) - b.low_degree(var);
    if (hi[static_cast<std::size_t>(v)] < lo[static_cast<std::size_t>(v)]) return std::nullopt;
  }
  const auto& lb = b.leading();
  std::vector<Term> quotient;
  MultiPoly r = a;
  while (!r.is_zero()) {
    const auto& lt = r.leading();
    Exponent e;
    for (std::size_t k = 0; k < e.size(); ++k) {
      e[k] = lt.exp[k] - lb.exp[k];
      if (e[k] > hi[k] || e[k] < lo[k]) return std::nullopt;
    }
    Rational c = lt.coeff / lb.coeff;
    if (integral && c.get_den() != 1) return std::nullopt;
    quotient.push_back({e, c});
    r -= b.shifted(e).scaled(c);
    // Grevlex is a well-order only on honest polynomials; guard Laurent input.
    if (quotient.size() > 200000) return std::nullopt;
  }
  return MultiPoly::from_terms(std::move(quotient));
}

MultiPoly integer_primitive(const MultiPoly& f) {
  if (f.is_zero()) return f;
  Integer l = 1;
  for (const auto& t : f.terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coeff.get_den_mpz_t());
  MultiPoly g = f.scaled(Rational(l));
  return divide_content(g, content(g));
}

MultiPoly gcd(const MultiPoly& a, const MultiPoly& b) {
  if (a.is_zero()) return positive_lead(b);
  if (b.is_zero()) return positive_lead(a);
  Exponent ma = min_exponents(a), mb = min_exponents(b), m;
  for (std::size_t k = 0; k < m.size(); ++k) m[k] = std::min(ma[k], mb[k]);
  Exponent na, nb;
  for (std::size_t k = 0; k < m.size(); ++k) {
    na[k] = -ma[k];
    nb[k] = -mb[k];
  }
  MultiPoly A = a.shifted(na), B = b.shifted(nb);
  Integer ca = content(A), cb = content(B), c;
  mpz_gcd(c.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
  A = divide_content(A, ca);
  B = divide_content(B, cb);
  MultiPoly g = (A.is_constant() || B.is_constant()) ? MultiPoly(1) : gcd_primitive(A, B);
  return positive_lead(g.shifted(m).scaled(Rational(c)));
}

}  // namespace dva::poly
