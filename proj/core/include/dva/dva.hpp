#pragma once

#include <set>

#include "dva/symfunc.hpp"
#include "dva/verma.hpp"

namespace dva::alg {

// ---------------------------------------------------------------------------
// q = -1

// Modified central term -2(-1)^m h^2_{m,1} = 2(p^m + p^{-m} - 2(-1)^m).
template <class F>
F c_tilde(int m, const F& p) {
  return F(m % 2 ? 2 : -2) * h2_rs<F>(m, 1, p, F(-1));
}

// sum_{l=0}^m (-1)^l f_l c_{m-l}
template <class F>
F alternating_central_sum(const Algebra<F>& a, int m) {
  F s(0);
  for (int l = 0; l < m; ++l) {
    F term = a.f(l) * a.c(m - l);
    if (l % 2)
      s = s - term;
    else
      s = s + term;
  }
  return s;
}

// Vectors spanning the submodule generated by (T_{-n})^2|h> at level L.
template <class F>
std::vector<VermaVector<F>> central_square_span(const Verma<F>& V, int L) {
  std::vector<VermaVector<F>> out;
  for (int n = 1; 2 * n <= L; ++n)
    for (const auto& lam : partitions_of(L - 2 * n)) {
      VermaVector<F> v = V.act(-n, V.act(-n, VermaVector<F>::basis(lam)));
      if (!v.is_zero()) out.push_back(v);
    }
  return out;
}

// Reduction modulo a subspace whose complement is spanned by a chosen set of basis monomials.
template <class F>
class QuotientReducer {
 public:
  QuotientReducer(int level, const std::vector<Partition>& complement, const std::vector<VermaVector<F>>& span)
      : level_(level) {
    std::set<Partition> keep(complement.begin(), complement.end());
    for (const auto& lam : partitions_of(level))
      if (!keep.count(lam)) cols_.push_back(lam);
    killed_ = cols_.size();
    for (const auto& lam : complement) cols_.push_back(lam);
    for (std::size_t i = 0; i < cols_.size(); ++i) index_[cols_[i]] = i;
    Matrix<F> rows;
    for (const auto& v : span) rows.push_back(coords(v));
    if (!rows.empty()) {
      auto piv = row_reduce(rows);
      rows.resize(piv.size());
      pivots_ = piv;
    }
    rows_ = std::move(rows);
    for (std::size_t i = 0; i < pivots_.size(); ++i)
      if (pivots_[i] >= killed_) throw std::domain_error("chosen monomials are not a complement of the submodule");
    if (pivots_.size() != killed_) throw std::domain_error("submodule is smaller than the complement count requires");
  }

  // Coordinates of v + submodule in the complement basis.
  std::map<Partition, F> reduce(const VermaVector<F>& v) const {
    std::vector<F> x = coords(v);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      F c = x[pivots_[i]];
      if (dva::is_zero(c)) continue;
      for (std::size_t j = 0; j < x.size(); ++j)
        if (!dva::is_zero(rows_[i][j])) x[j] = x[j] - c * rows_[i][j];
    }
    std::map<Partition, F> out;
    for (std::size_t j = killed_; j < cols_.size(); ++j)
      if (!dva::is_zero(x[j])) out.emplace(cols_[j], x[j]);
    return out;
  }
  bool contains(const VermaVector<F>& v) const { return reduce(v).empty(); }

 private:
  std::vector<F> coords(const VermaVector<F>& v) const {
    std::vector<F> x(cols_.size(), F(0));
    if (v.is_zero()) return x;
    if (v.level != level_) throw std::invalid_argument("vector level does not match the reducer");
    for (const auto& [k, c] : v.terms) x[index_.at(k)] = c;
    return x;
  }
  int level_;
  std::vector<Partition> cols_;
  std::map<Partition, std::size_t> index_;
  std::size_t killed_ = 0;
  Matrix<F> rows_;
  std::vector<std::size_t> pivots_;
};

// Quotient of M(h) at q = -1 at level L, with the distinct-part monomials as basis.
template <class F>
QuotientReducer<F> q_minus1_reducer(const Verma<F>& V, int L) {
  return QuotientReducer<F>(L, quotient_basis(2, L), central_square_span(V, L));
}

// Trace of T_0 on the quotient module at level L.
template <class F>
F witten_trace(const Verma<F>& V, int L) {
  auto red = q_minus1_reducer(V, L);
  F tr(0);
  for (const auto& lam : quotient_basis(2, L)) {
    auto coords = red.reduce(V.act(0, VermaVector<F>::basis(lam)));
    auto it = coords.find(lam);
    if (it != coords.end()) tr = tr + it->second;
  }
  return tr;
}

// {T_m, T_n} minus its closed form at q = -1, applied to v.
template <class F>
VermaVector<F> anticommutator_defect(const Verma<F>& V, int m, int n, const VermaVector<F>& v) {
  VermaVector<F> lhs = V.act_word({m, n}, v) + V.act_word({n, m}, v);
  if ((m + n) % 2 != 0) return lhs;
  int k = (m + n) / 2;
  int sign = ((m - n) / 2) % 2 ? -1 : 1;
  VermaVector<F> rhs = V.act_word({k, k}, v).scaled(F(2 * sign));
  if (m + n == 0) rhs = rhs + v.scaled(c_tilde<F>(m, V.algebra().p));
  return lhs - rhs;
}

// ---------------------------------------------------------------------------
// Tabulated singular vectors at q a primitive N-th root

struct DeltaSpec {
  int r, s;
  std::vector<int> mult;  // m_1, m_2, ...
};

enum class HalfRule { conjunctive, disjunctive };

// Delta^{rs}_{m_1...m_k} = a_rs p^r q^s (1 + p^{n-2r} q^{N-2s}) / prod (1+p^i)^{m_i}.
template <class F>
F delta_invariant(const DeltaSpec& d, int N, const F& p, const F& q, HalfRule rule = HalfRule::conjunctive) {
  int n = 0;
  F den(1);
  for (std::size_t i = 0; i < d.mult.size(); ++i) {
    int part = static_cast<int>(i) + 1;
    n += part * d.mult[i];
    den = den * power<F>(F(1) + power<F>(p, part), d.mult[i]);
  }
  bool c1 = 2 * d.r == n, c2 = (2 * d.s) % N == 0;
  bool half = rule == HalfRule::conjunctive ? (c1 && c2) : (c1 || c2);
  F a = half ? F(Rational(1, 2)) : F(1);
  return a * power<F>(p, d.r) * power<F>(q, d.s) * (F(1) + power<F>(p, n - 2 * d.r) * power<F>(q, N - 2 * d.s)) / den;
}

// Tabulated singular vectors; terms are written with the T_0 factors already evaluated on |h>.
template <class F>
VermaVector<F> build_appB(int N, int d, const F& p, const F& h, HalfRule rule = HalfRule::conjunctive) {
  F q = F::root(N);
  auto D = [&](int r, int s, std::vector<int> m) { return delta_invariant<F>(DeltaSpec{r, s, std::move(m)}, N, p, q, rule); };
  auto k = [](long v) { return F(v); };
  VermaVector<F> v;
  auto term = [&](std::initializer_list<int> parts, int zeros, const F& c) {
    v.add(Partition(std::vector<int>(parts)), c * power<F>(h, zeros));
  };
  if (N == 3 && d == 3) {
    term({1, 1, 1}, 0, F(1));
    term({2, 1}, 1, k(-3) * D(1, 0, {2}));
    term({3}, 2, k(-3) * D(2, 1, {3, 1}));
    term({3}, 0, k(3) * D(1, 1, {1, 1}));
  } else if (N == 3 && d == 6) {
    term({2, 2, 2}, 0, F(1));
    term({3, 2, 1}, 0, k(-3) * D(1, 0, {2}));
    term({4, 1, 1}, 0, k(-3) * D(2, 1, {3, 1}));
    term({3, 3}, 1, k(-3) * D(2, 1, {3, 1}));
    term({4, 2}, 1, k(-3) * D(4, 0, {4, 2}) + k(3) * D(3, 0, {4, 1}) - k(3) * D(2, 1, {3, 1}));
    term({5, 1}, 1, k(-6) * D(4, 0, {4, 2}) + k(3) * D(3, 1, {5, 2}));
    term({6}, 2,
         k(27) * D(8, 0, {6, 3, 0, 1}) + k(12) * D(6, 0, {6, 3}) + k(18) * D(7, 0, {6, 2, 0, 1}) +
             k(6) * D(5, 0, {6, 2}) - k(3) * D(6, 1, {5, 3, 0, 1}) - k(3) * D(5, 1, {5, 3, 0, 1}) -
             k(3) * D(4, 1, {5, 3, 0, 1}));
    term({6}, 0,
         k(-3) * D(6, 0, {4, 2, 0, 1}) + k(3) * D(2, 0, {4, 2, 0, 1}) - k(6) * D(4, 0, {4, 2}) -
             k(12) * D(5, 0, {4, 1, 0, 1}) + k(6) * D(3, 0, {4, 1}) - k(3) * D(5, 1, {4, 2, 0, 1}) +
             k(3) * D(4, 1, {4, 2, 0, 1}) + k(6) * D(3, 1, {4, 2, 0, 1}));
  } else if (N == 4 && d == 4) {
    term({1, 1, 1, 1}, 0, F(1));
    term({2, 1, 1}, 1, k(-4) * D(1, 0, {2}) - k(4) * D(1, 1, {3}));
    term({2, 2}, 2, k(8) * D(2, 0, {4}));
    term({3, 1}, 2, k(12) * D(2, 0, {4}) + k(4) * D(2, 1, {5}));
    // The Delta^{31} term enters with + here; with - the vector is not annihilated by T_1.
    term({4}, 3, k(-8) * D(3, 0, {5, 0, 1}) + k(8) * D(3, 1, {5, 0, 1}));
    term({2, 2}, 0, k(-8) * D(1, 0, {2}));
    term({3, 1}, 0, k(-4) * D(1, 0, {2}) + k(4) * D(1, 1, {3}));
    term({4}, 1, k(8) * D(2, 0, {3, 0, 1}) - k(8) * D(2, 1, {3, 0, 1}));
  } else {
    throw std::invalid_argument("build_appB supports (N,d) in {(3,3), (3,6), (4,4)}");
  }
  v.level = d;
  return v;
}

// The level-d coefficient of the N = 3 generating series of singular vectors.
template <class F>
VermaVector<F> psi3_series(const Verma<F>& V, int d) {
  const Algebra<F>& a = V.algebra();
  if (a.variant != Variant::q_root || a.N != 3) throw std::invalid_argument("psi3_series needs the q_root(3) variant");
  const F &p = a.p, &q = a.q;
  F pinv = F(1) / p, qinv = F(1) / q;
  VermaVector<F> out;
  out.level = d;
  for (int m1 = 0; m1 <= d; ++m1)
    for (int m2 = 0; m1 + m2 <= d; ++m2) {
      int m3 = d - m1 - m2;
      F pref = power<F>(q, 2 * m1 + m2);
      for (int l13 = 0; l13 <= m3; ++l13)
        for (int l23 = 0; l13 + l23 <= m3; ++l23)
          for (int l12 = 0; l12 + l13 <= m2 + m3; ++l12) {
            F c = pref * a.f(l12) * a.f(l13) * a.f(l23);
            if (dva::is_zero(c)) continue;
            std::vector<int> w{-m1 - l12 - l13, -m2 + l12 - l23, -m3 + l13 + l23};
            out = out + V.act_word(w).scaled(c);
          }
    }
  // F^{-+}(x) = f(x) f(px), F^{+-}(x) = f(x) f(p^{-1} x)
  auto Fmp = [&](const F& x) {
    return (F(1) - q * x) * (F(1) - qinv * p * x) / ((F(1) - x) * (F(1) - p * x));
  };
  auto Fpm = [&](const F& x) { return Fmp(pinv * x); };
  auto fs = a.f_series(d);
  Series<F> f = fs->truncated(d);
  Series<F> smp = f * f.dilated(p), spm = f * f.dilated(pinv);
  auto trunc_at = [&](const Series<F>& s, const F& x) {
    F acc(0), xp(1);
    for (int m = 0; m <= d; ++m, xp = xp * x) acc = acc + s[m] * xp;
    return acc;
  };
  F zeta = F(0) - (F(1) - q) * (F(1) - p * qinv) / (F(1) - p);
  F qp = q * pinv;
  F bracket = power<F>(q, 2 * d) * Fmp(qinv * qinv) / (qp - F(1)) +
              power<F>(q, d) * (trunc_at(smp, qinv) / (q * q * pinv - F(1)) - trunc_at(spm, qinv) / (q * q * p - F(1))) +
              qp / (qp - F(1)) * Fpm(p * qinv * qinv);
  out.add(Partition{d}, zeta * bracket);
  return out;
}

// Equality up to an overall nonzero scalar.
template <class F>
bool projectively_equal(const VermaVector<F>& a, const VermaVector<F>& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  const auto& [k, ca] = *a.terms.begin();
  F cb = b.coeff(k);
  if (dva::is_zero(cb)) return false;
  return a.scaled(cb) == b.scaled(ca);
}

// ---------------------------------------------------------------------------
// t -> infinity

using ModeWord = std::vector<int>;

// (s_m)^n = sum_{l(lambda)=n} q^{ht(lambda^op)} [n; m(lambda)]_q t_{m+lambda^op_1-1} ... ; |lambda| - n <= window.
template <class F>
std::map<ModeWord, F> tinf_power_expand(int m, int n, int window, const F& q) {
  std::map<ModeWord, F> out;
  for (int extra = 0; extra <= window; ++extra)
    for (const auto& lam : partitions_of(n + extra)) {
      if (lam.length() != n) continue;
      F c = power<F>(q, ht_op(lam)) * q_multinomial<F>(n, multiplicity_vector(lam), q);
      if (dva::is_zero(c)) continue;
      ModeWord w;
      for (auto it = lam.parts.rbegin(); it != lam.parts.rend(); ++it) w.push_back(m + *it - 1);
      out.emplace(std::move(w), c);
    }
  return out;
}

// Normal order (nondecreasing) words in positive modes with t_a t_b = q t_b t_a - (1-q) sum t_{a-l} t_{b+l}.
template <class F>
std::map<ModeWord, F> positive_normal_order(std::map<ModeWord, F> pending, const F& q) {
  std::map<ModeWord, F> out;
  auto push = [](std::map<ModeWord, F>& mp, ModeWord w, const F& c) {
    if (dva::is_zero(c)) return;
    auto it = mp.find(w);
    if (it == mp.end())
      mp.emplace(std::move(w), c);
    else {
      it->second = it->second + c;
      if (dva::is_zero(it->second)) mp.erase(it);
    }
  };
  while (!pending.empty()) {
    auto node = pending.extract(pending.begin());
    ModeWord w = node.key();
    F c = node.mapped();
    std::size_t i = w.size();
    for (std::size_t j = w.size(); j-- > 1;)
      if (w[j - 1] > w[j]) {
        i = j - 1;
        break;
      }
    if (i == w.size()) {
      push(out, w, c);
      continue;
    }
    int a = w[i], b = w[i + 1];
    ModeWord sw = w;
    std::swap(sw[i], sw[i + 1]);
    push(pending, sw, c * q);
    for (int l = 1; l <= a - b - 1; ++l) {
      ModeWord nw = w;
      nw[i] = a - l;
      nw[i + 1] = b + l;
      push(pending, nw, c * (q - F(1)));
    }
  }
  return out;
}

// Brute-force expansion of (t_m + ... + t_{m+window})^n restricted to words of level <= n m + window.
template <class F>
std::map<ModeWord, F> tinf_power_bruteforce(int m, int n, int window, const F& q) {
  std::map<ModeWord, F> words;
  ModeWord cur(static_cast<std::size_t>(n), m);
  std::function<void(int, int)> rec = [&](int pos, int used) {
    if (pos == n) {
      words[cur] = F(1);
      return;
    }
    for (int e = 0; used + e <= window; ++e) {
      cur[static_cast<std::size_t>(pos)] = m + e;
      rec(pos + 1, used + e);
    }
  };
  rec(0, 0);
  return positive_normal_order<F>(std::move(words), q);
}

// Inhomogeneous vectors, keyed by level.
template <class F>
using Mixed = std::map<int, VermaVector<F>>;

template <class F>
void mixed_add(Mixed<F>& a, const VermaVector<F>& v, const F& c = F(1)) {
  if (v.is_zero() || dva::is_zero(c)) return;
  auto it = a.find(v.level);
  if (it == a.end())
    a.emplace(v.level, v.scaled(c));
  else {
    it->second = it->second + v.scaled(c);
    if (it->second.is_zero()) a.erase(it);
  }
}

template <class F>
Mixed<F> mixed_sum(const Mixed<F>& a, const Mixed<F>& b, const F& cb = F(1)) {
  Mixed<F> r = a;
  for (const auto& [l, v] : b) mixed_add(r, v, cb);
  return r;
}

// Operator given as a linear map on homogeneous vectors, lifted to mixed vectors.
template <class F>
using Op = std::function<Mixed<F>(const VermaVector<F>&)>;

template <class F>
Mixed<F> apply_op(const Op<F>& op, const Mixed<F>& x) {
  Mixed<F> r;
  for (const auto& [l, v] : x) r = mixed_sum(r, op(v));
  return r;
}

template <class F>
Mixed<F> apply_pow(const Op<F>& op, int n, Mixed<F> x) {
  for (int i = 0; i < n; ++i) x = apply_op(op, x);
  return x;
}

// Tail-sum identities for t_m and s_{m+1} = t_{m+1} + t_{m+2} + ... on one state; returns the failing ones.
template <class F>
std::vector<std::string> tail_sum_identity_failures(const Verma<F>& V, int m, int n, const VermaVector<F>& v) {
  const F& q = V.algebra().q;
  Op<F> t = [&](const VermaVector<F>& x) {
    Mixed<F> r;
    mixed_add(r, V.act(m, x));
    return r;
  };
  Op<F> s = [&](const VermaVector<F>& x) {
    Mixed<F> r;
    for (int k = m + 1; k <= x.level; ++k) mixed_add(r, V.act(k, x));
    return r;
  };
  auto lin = [](const F& a, Op<F> A, const F& b, Op<F> B) {
    return Op<F>([=](const VermaVector<F>& x) {
      Mixed<F> r;
      for (const auto& [l, y] : A(x)) mixed_add(r, y, a);
      for (const auto& [l, y] : B(x)) mixed_add(r, y, b);
      return r;
    });
  };
  Mixed<F> base{{v.level, v}};
  auto poch = [&](int j) { return q_pochhammer<F>(q, q, j); };
  std::vector<std::string> bad;
  // (s)^n t = q^n t s^n - (1-q^n) s^{n+1}
  {
    Mixed<F> lhs = apply_pow(s, n, apply_op(t, base)), rhs;
    for (const auto& [l, x] : apply_op(t, apply_pow(s, n, base))) mixed_add(rhs, x, power<F>(q, n));
    rhs = mixed_sum(rhs, apply_pow(s, n + 1, base), F(0) - (F(1) - power<F>(q, n)));
    if (!mixed_sum(lhs, rhs, F(-1)).empty()) bad.push_back("s^n t");
  }
  // s t^n = sum_j (-1)^j q^{n-j} (q)_j [n;j] t^{n-j} s^{j+1}
  {
    Mixed<F> lhs = apply_op(s, apply_pow(t, n, base)), rhs;
    for (int j = 0; j <= n; ++j) {
      F c = F(j % 2 ? -1 : 1) * power<F>(q, n - j) * poch(j) * q_binomial<F>(n, j, q);
      rhs = mixed_sum(rhs, apply_pow(t, n - j, apply_pow(s, j + 1, base)), c);
    }
    if (!mixed_sum(lhs, rhs, F(-1)).empty()) bad.push_back("s t^n");
  }
  // (t + s)^n = sum_j q^{j(j-1)/2} [n;j] t^{n-j} s^j
  {
    Op<F> ts = lin(F(1), t, F(1), s);
    Mixed<F> lhs = apply_pow(ts, n, base), rhs;
    for (int j = 0; j <= n; ++j)
      rhs = mixed_sum(rhs, apply_pow(t, n - j, apply_pow(s, j, base)), power<F>(q, j * (j - 1) / 2) * q_binomial<F>(n, j, q));
    if (!mixed_sum(lhs, rhs, F(-1)).empty()) bad.push_back("(t+s)^n");
  }
  // (q t + (q - q^{-1}) s)^n = sum_j (-1)^j q^{n-2j} (q)_{j+1}/(1-q) [n;j] t^{n-j} s^j
  {
    Op<F> ts = lin(q, t, q - F(1) / q, s);
    Mixed<F> lhs = apply_pow(ts, n, base), rhs;
    for (int j = 0; j <= n; ++j) {
      F c = F(j % 2 ? -1 : 1) * power<F>(q, n - 2 * j) * poch(j + 1) / (F(1) - q) * q_binomial<F>(n, j, q);
      rhs = mixed_sum(rhs, apply_pow(t, n - j, apply_pow(s, j, base)), c);
    }
    if (!mixed_sum(lhs, rhs, F(-1)).empty()) bad.push_back("(q t + (q-1/q) s)^n");
  }
  return bad;
}

// [T_m, T_n]_q v minus the right-hand side of the t -> infinity relation for the ordered pair (m, n);
// nullopt when (m, n) is not of one of the four relation types.
template <class F>
std::optional<VermaVector<F>> tinf_relation_defect(const Verma<F>& V, int m, int n, const VermaVector<F>& v) {
  const F& q = V.algebra().q;
  const F one(1);
  VermaVector<F> lhs = V.act(m, V.act(n, v)) - V.act(n, V.act(m, v)).scaled(q);
  VermaVector<F> rhs;
  rhs.level = v.level - m - n;
  int reach = v.level + std::abs(m) + std::abs(n) + 1;
  auto add = [&](int a, int b, const F& c) { rhs = rhs + V.act(a, V.act(b, v)).scaled(c); };
  F tail = q - one / q;
  if (m > 0 && n < 0) {
    for (int l = 1; l <= reach; ++l) add(n - l, m + l, tail * power<F>(q, l));
    if (m + n == 0) rhs = rhs + v.scaled(one - q);
  } else if ((m > n && n > 0) || (0 > m && m > n)) {
    for (int l = 1; l <= m - n - 1; ++l) add(m - l, n + l, q - one);
  } else if (m == 0 && n < 0) {
    for (int l = 1; l <= -n - 1; ++l) add(-l, n + l, q - one);
    for (int l = 1; l <= reach; ++l) add(n - l, l, tail * power<F>(q, l));
  } else if (m > 0 && n == 0) {
    for (int l = 1; l <= m - 1; ++l) add(m - l, l, q - one);
    for (int l = 1; l <= reach; ++l) add(-l, m + l, tail * power<F>(q, l));
  } else {
    return std::nullopt;
  }
  return lhs - rhs;
}

template <class F>
struct CenterVerdict {
  bool central = true;
  int k = 0;
  Partition state;
  VermaVector<F> residue;
};

// Checks [(T_m)^N, T_k] v = 0 for all PBW states v with |v| <= level; first counterexample otherwise.
template <class F>
CenterVerdict<F> center_witness(const Verma<F>& V, int N, int m, std::vector<int> ks, int level) {
  std::sort(ks.begin(), ks.end(), [](int a, int b) { return std::abs(a) != std::abs(b) ? std::abs(a) < std::abs(b) : a < b; });
  std::vector<int> power_word(static_cast<std::size_t>(N), m);
  CenterVerdict<F> out;
  for (int L = 0; L <= level; ++L)
    for (const auto& lam : partitions_of(L))
      for (int k : ks) {
        VermaVector<F> v = VermaVector<F>::basis(lam);
        VermaVector<F> a = V.act_word(power_word, V.act(k, v));
        VermaVector<F> b = V.act(k, V.act_word(power_word, v));
        VermaVector<F> r = a - b;
        if (!r.is_zero()) {
          out.central = false;
          out.k = k;
          out.state = lam;
          out.residue = r;
          return out;
        }
      }
  return out;
}

// [T_0^3, T_{-2}]|h> predicted by the expansion of (t_0)^3 t_{-2} in the rescaled generators.
template <class F>
VermaVector<F> t0_cubed_prediction(const F& q, const F& h) {
  F one = F(1), omq = one - q;
  VermaVector<F> v;
  v.level = 2;
  F q3 = power<F>(q, 3);
  F c11 = F(0) - omq * q * q * (one + q + q * q) * h * h - power<F>(omq, 4) * (one + q);
  F c2 = power<F>(omq, 3) * q * (one + q) * (F(2) + q) * h;
  // T0^3 T_{-2}|h> - q^3 T_{-2} T0^3|h>; move the second term to the right-hand side.
  v.add(Partition{1, 1}, c11);
  v.add(Partition{2}, c2 + (q3 - one) * power<F>(h, 3));
  return v;
}

template <class F>
struct SymmetrizationReport {
  bool equal = false;
  VermaVector<F> lhs, rhs;
};

// sum over distinct permutations sigma of T_{-sigma(lambda)}|h> versus sum_mu M_{lambda mu}(q) [n; m(mu)]_q T_{-mu}|h>.
template <class F>
SymmetrizationReport<F> symmetrized_product_tinf(const Verma<F>& V, const Partition& lambda, const Matrix<F>& M) {
  const F& q = V.algebra().q;
  SymmetrizationReport<F> rep;
  int w = lambda.weight(), n = lambda.length();
  rep.lhs.level = rep.rhs.level = w;
  std::vector<int> seq = lambda.parts;
  std::sort(seq.begin(), seq.end());
  do {
    std::vector<int> word;
    for (int x : seq) word.push_back(-x);
    rep.lhs = rep.lhs + V.act_word(word);
  } while (std::next_permutation(seq.begin(), seq.end()));
  auto parts = partitions_of(w);
  std::size_t li = static_cast<std::size_t>(std::find(parts.begin(), parts.end(), lambda) - parts.begin());
  for (std::size_t j = 0; j < parts.size(); ++j) {
    const auto& mu = parts[j];
    if (mu.length() != n || dva::is_zero(M[li][j])) continue;
    rep.rhs.add(mu, M[li][j] * q_multinomial<F>(n, multiplicity_vector(mu), q));
  }
  rep.equal = rep.lhs == rep.rhs;
  return rep;
}

// ---------------------------------------------------------------------------
// Finite-dimensional representations

enum class FiniteDimCase { q1, t1, p_cubed_q, p_inv_sq_q };

struct FiniteDimReport {
  bool pass = true;
  std::vector<std::pair<std::string, bool>> checks;
};

FiniteDimReport finite_dim_certificate(FiniteDimCase c, int order = 12);
FiniteDimCase parse_finite_dim_case(const std::string& s);

}  // namespace dva::alg
