#include "dva/dva.hpp"

namespace dva::alg {

FiniteDimCase parse_finite_dim_case(const std::string& s) {
  if (s == "q1") return FiniteDimCase::q1;
  if (s == "t1") return FiniteDimCase::t1;
  if (s == "p_cubed_q") return FiniteDimCase::p_cubed_q;
  if (s == "p_inv_sq_q") return FiniteDimCase::p_inv_sq_q;
  throw std::invalid_argument("unknown finite-dimensional case: " + s);
}

FiniteDimReport finite_dim_certificate(FiniteDimCase c, int order) {
  FiniteDimReport rep;
  auto record = [&](const std::string& name, bool ok) {
    rep.checks.emplace_back(name, ok);
    rep.pass = rep.pass && ok;
  };
  RatFunc p = RatFunc::variable(VP), h = RatFunc::variable(VH);
  RatFunc q;
  switch (c) {
    case FiniteDimCase::q1: q = RatFunc(1); break;
    case FiniteDimCase::t1: q = p; break;
    case FiniteDimCase::p_cubed_q: q = power(p, 3); break;
    case FiniteDimCase::p_inv_sq_q: q = power(p, -2); break;
  }
  Algebra<RatFunc> a = make_generic<RatFunc>(p, q, h, order);
  Series<RatFunc> f = a.f_series(order)->truncated(order);
  if (c == FiniteDimCase::q1 || c == FiniteDimCase::t1) {
    bool c_zero = true, f_trivial = true;
    for (int n = 1; n <= order; ++n) {
      c_zero = c_zero && a.c(n).is_zero();
      f_trivial = f_trivial && f[n].is_zero();
    }
    record("c(x) = 0", c_zero);
    record("f(x) = 1", f_trivial);
    return rep;
  }
  RatFunc h2 = power(RatFunc(1) + p, 2) / p;
  bool ok = true;
  for (int n = 1; n <= order; ++n) ok = ok && h2 * f[n] == a.c(n);
  record("h^2 f_n = c_n with h^2 = (1+p)^2/p", ok);
  // f(x) = (1-p^{-2}x)(1-p^2x)/((1-p^{-1}x)(1-px))
  Series<RatFunc> num(order), den(order);
  num[0] = den[0] = RatFunc(1);
  if (order >= 1) {
    num[1] = -(power(p, -2) + power(p, 2));
    den[1] = -(power(p, -1) + p);
  }
  if (order >= 2) num[2] = den[2] = RatFunc(1);
  Series<RatFunc> closed = num * den.inverse();
  record("closed form equals the exponential formula", closed == f);
  record("closed form satisfies the recurrence", check_f_recurrence(closed, p, q));
  return rep;
}

}  // namespace dva::alg
