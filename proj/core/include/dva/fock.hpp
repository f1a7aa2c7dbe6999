#pragma once

#include <memory>
#include <mutex>
#include <shared_mutex>

#include "dva/symfunc.hpp"
#include "dva/verma.hpp"

namespace dva::fock {

using alg::VermaVector;

// Homogeneous Fock space element in the basis x_{-l1}...x_{-lk}|vac>.
template <class F>
using FockVector = alg::VermaVector<F>;

enum class OscMode { generic, t_infinity };

// Oscillator algebra data.  In generic mode p = w^2, a is the eigenvalue of q^{alpha_0}
// and alpha0 the eigenvalue of alpha_0; in t_infinity mode beta_0 = 0.
template <class F>
struct Osc {
  OscMode mode = OscMode::generic;
  F q{0}, w{1}, a{1}, alpha0{0};

  F p() const { return w * w; }
  // [x_m, x_{-m}]
  F bracket(int m) const {
    if (m == 0) return F(0);
    if (mode == OscMode::t_infinity) return F(m) * (F(1) - power<F>(q, std::abs(m)));
    F pm = power<F>(p(), m), t = q / p();
    return F(m) * (F(1) - power<F>(q, m)) * (F(1) - power<F>(t, -m)) / (F(1) + pm);
  }
  // Same oscillators on the dual vacuum: q^{alpha'} = p q^{-alpha}.
  Osc dual() const {
    Osc o = *this;
    if (mode == OscMode::generic) o.a = p() / a;
    return o;
  }
};

template <class F>
Osc<F> make_osc(const F& q, const F& w, const F& a) {
  Osc<F> o;
  o.q = q;
  o.w = w;
  o.a = a;
  return o;
}

template <class F>
Osc<F> make_tinf_osc(const F& q) {
  Osc<F> o;
  o.mode = OscMode::t_infinity;
  o.q = q;
  return o;
}

// h(alpha) = p^{-1/2} q^alpha + p^{1/2} q^{-alpha}
template <class F>
F h_alpha(const Osc<F>& o) {
  return o.a / o.w + o.w / o.a;
}

// x_m v: creation appends a part, annihilation contracts against equal parts.
template <class F>
FockVector<F> osc_act(const Osc<F>& o, int m, const FockVector<F>& v) {
  FockVector<F> r;
  r.level = v.level - m;
  if (m == 0) return v.scaled(o.alpha0);
  if (m < 0) {
    for (const auto& [k, c] : v.terms) r.add(k.with_part(-m), c);
    return r;
  }
  F b = o.bracket(m);
  for (const auto& [k, c] : v.terms) {
    int mult = k.multiplicity(m);
    if (mult) r.add(k.minus_part(m), c * F(mult) * b);
  }
  return r;
}

enum class Sign { plus, minus };

// Vertex operator modes Lambda^{+-}_n via the bilinear expansion sum_j A_{-j} B_{j+n}.
template <class F>
class FreeField {
 public:
  using Terms = std::map<Partition, F>;
  using Entry = std::shared_ptr<const Terms>;

  explicit FreeField(Osc<F> o) : osc_(std::move(o)), memo_(std::make_shared<Memo>()) {}

  const Osc<F>& osc() const { return osc_; }

  FockVector<F> lambda(Sign s, int n, const FockVector<F>& v) const {
    FockVector<F> r;
    r.level = v.level - n;
    Terms acc;
    for (const auto& [mu, c] : v.terms) {
      Entry e = insert(s, n, mu);
      for (const auto& [k, x] : *e) {
        auto it = acc.find(k);
        if (it == acc.end())
          acc.emplace(k, c * x);
        else
          it->second = it->second + c * x;
      }
    }
    for (auto& [k, c] : acc)
      if (!dva::is_zero(c)) r.terms.emplace(k, std::move(c));
    return r;
  }

  // Image of T_n: Lambda^+_n + Lambda^-_n, or the t -> infinity assignment by sign of n.
  FockVector<F> iota(int n, const FockVector<F>& v) const {
    if (osc_.mode == OscMode::t_infinity) {
      if (n > 0) return lambda(Sign::plus, n, v);
      if (n < 0) return lambda(Sign::minus, n, v);
    }
    return lambda(Sign::plus, n, v) + lambda(Sign::minus, n, v);
  }

  FockVector<F> iota_word(const std::vector<int>& w, FockVector<F> v) const {
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      v = iota(*it, v);
      if (v.is_zero()) break;
    }
    return v;
  }
  FockVector<F> iota_word(const std::vector<int>& w) const { return iota_word(w, FockVector<F>::vacuum()); }

  FockVector<F> lambda_word(Sign s, const std::vector<int>& w) const {
    FockVector<F> v = FockVector<F>::vacuum();
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      v = lambda(s, *it, v);
      if (v.is_zero()) break;
    }
    return v;
  }

  std::size_t memo_size() const {
    std::shared_lock lock(memo_->mu);
    return memo_->table.size();
  }

  // Signs of the creation and annihilation exponents and the prefactor of Lambda^s_n.
  int creation_sign(Sign s) const { return (s == Sign::plus) == (osc_.mode == OscMode::generic) ? 1 : -1; }
  int annihilation_sign(Sign s) const { return -creation_sign(s); }
  F prefactor(Sign s, int n) const {
    if (osc_.mode == OscMode::t_infinity) return F(1);
    if (s == Sign::plus) return osc_.a / osc_.w;
    return osc_.w / osc_.a * power<F>(osc_.p(), n);
  }

 private:
  struct Memo {
    std::map<std::tuple<int, int, Partition>, Entry> table;
    mutable std::shared_mutex mu;
  };

  Entry insert(Sign s, int n, const Partition& mu) const {
    auto key = std::make_tuple(s == Sign::plus ? 1 : -1, n, mu);
    {
      std::shared_lock lock(memo_->mu);
      auto it = memo_->table.find(key);
      if (it != memo_->table.end()) return it->second;
    }
    Entry e = std::make_shared<const Terms>(compute(s, n, mu));
    std::unique_lock lock(memo_->mu);
    return memo_->table.emplace(std::move(key), std::move(e)).first->second;
  }

  Terms compute(Sign s, int n, const Partition& mu) const {
    Terms out;
    int d = mu.weight();
    F c = F(creation_sign(s)), dsign = F(annihilation_sign(s));
    F pre = prefactor(s, n);
    for (int j = std::max(0, -n); j + n <= d; ++j) {
      int k = j + n;
      // B_k x_{-mu}|vac>, B_k = sum_{lam |- k} d^{l(lam)} x_lam / z_lam
      FockVector<F> base = FockVector<F>::basis(mu);
      FockVector<F> bk;
      bk.level = d - k;
      for (const auto& lam : partitions_of(k)) {
        FockVector<F> x = base;
        for (int part : lam.parts) {
          x = osc_act(osc_, part, x);
          if (x.is_zero()) break;
        }
        if (x.is_zero()) continue;
        bk = bk + x.scaled(power<F>(dsign, lam.length()) / F(Rational(z_lambda(lam))));
      }
      if (bk.is_zero()) continue;
      // A_{-j} = sum_{lam |- j} c^{l(lam)} x_{-lam} / z_lam
      for (const auto& lam : partitions_of(j)) {
        F ca = pre * power<F>(c, lam.length()) / F(Rational(z_lambda(lam)));
        for (const auto& [nu, b] : bk.terms) {
          Partition key = nu.union_with(lam);
          F val = ca * b;
          auto it = out.find(key);
          if (it == out.end())
            out.emplace(key, val);
          else
            it->second = it->second + val;
        }
      }
    }
    for (auto it = out.begin(); it != out.end();)
      it = dva::is_zero(it->second) ? out.erase(it) : std::next(it);
    return out;
  }

  Osc<F> osc_;
  std::shared_ptr<Memo> memo_;
};

template <class F>
FockVector<F> lambda_act(const FreeField<F>& ff, Sign s, int m, const FockVector<F>& v) {
  if (ff.osc().mode != OscMode::generic) throw std::invalid_argument("lambda_act needs generic oscillators");
  return ff.lambda(s, m, v);
}

template <class F>
FockVector<F> tinf_lambda_act(const FreeField<F>& ff, Sign s, int m, const FockVector<F>& v) {
  if (ff.osc().mode != OscMode::t_infinity) throw std::invalid_argument("tinf_lambda_act needs t-infinity oscillators");
  return ff.lambda(s, m, v);
}

template <class F>
FockVector<F> iota_word(const FreeField<F>& ff, const std::vector<int>& w) {
  return ff.iota_word(w);
}

// <vac'| omega(x_{-lambda}) v>, omega(x_m) = p^{-m} x_{-m} (p = 1 in t_infinity mode).
template <class F>
F fock_pairing(const Osc<F>& o, const Partition& lambda, const FockVector<F>& v) {
  FockVector<F> x = v;
  F scale(1);
  for (int part : lambda.parts) {
    x = osc_act(o, part, x);
    if (x.is_zero()) return F(0);
    if (o.mode == OscMode::generic) scale = scale * power<F>(o.p(), part);
  }
  return scale * x.coeff(Partition{});
}

template <class F>
Matrix<F> fock_gram(const Osc<F>& o, int n) {
  auto parts = partitions_of(n);
  Matrix<F> g = zero_matrix<F>(parts.size(), parts.size());
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (std::size_t j = 0; j < parts.size(); ++j) g[i][j] = fock_pairing(o, parts[i], FockVector<F>::basis(parts[j]));
  return g;
}

// z_lambda p^{|lambda|} prod (1-q^{l_i})(1-t^{-l_i})/(1+p^{l_i})
template <class F>
F fock_gram_entry_formula(const Osc<F>& o, const Partition& lambda) {
  F r = F(Rational(z_lambda(lambda)));
  for (int part : lambda.parts) {
    if (o.mode == OscMode::generic)
      r = r * power<F>(o.p(), part) * o.bracket(part) / F(part);
    else
      r = r * o.bracket(part) / F(part);
  }
  return r;
}

// prod_{lambda |- n} z_lambda * prod_{rs<=n} (p^r (1-q^r)(1-t^{-r})/(1+p^r))^{p(n-rs)}
template <class F>
F fock_det_formula(const Osc<F>& o, int n) {
  F r(1);
  for (const auto& lam : partitions_of(n)) r = r * F(Rational(z_lambda(lam)));
  for (int a = 1; a <= n; ++a)
    for (int s = 1; a * s <= n; ++s) {
      F factor = o.mode == OscMode::generic ? power<F>(o.p(), a) * o.bracket(a) / F(a) : o.bracket(a) / F(a);
      r = r * power<F>(factor, partition_count(n - a * s));
    }
  return r;
}

// Pi_{lambda mu}: coefficient of x_{-mu} in iota(T_{-lambda})|vac>.
template <class F>
Matrix<F> pi_matrix(const FreeField<F>& ff, int n) {
  auto parts = partitions_of(n);
  Matrix<F> m = zero_matrix<F>(parts.size(), parts.size());
  for (std::size_t i = 0; i < parts.size(); ++i) {
    std::vector<int> word;
    for (int part : parts[i].parts) word.push_back(-part);
    FockVector<F> v = ff.iota_word(word);
    for (std::size_t j = 0; j < parts.size(); ++j) m[i][j] = v.coeff(parts[j]);
  }
  return m;
}

// prod_{rs<=n} (p^{-r/2}(p^{(r-1)/2} q^{(s-r)/2} a - p^{-(r-1)/2} q^{(r-s)/2} a^{-1}))^{p(n-rs)} with w = p^{1/2}, u = q^{1/2}.
template <class F>
F pi_det_formula(int n, const F& w, const F& u, const F& a) {
  F r(1);
  for (int x = 1; x <= n; ++x)
    for (int s = 1; x * s <= n; ++s) {
      F factor = power<F>(w, -x) * (power<F>(w, x - 1) * power<F>(u, s - x) * a - power<F>(w, 1 - x) * power<F>(u, x - s) / a);
      r = r * power<F>(factor, partition_count(n - x * s));
    }
  return r;
}

// <iota u, iota v>_F with the bra expanded on the dual vacuum.
template <class F>
F iota_pairing(const FreeField<F>& ket, const FreeField<F>& bra, const Partition& lambda, const Partition& mu) {
  std::vector<int> wl, wm;
  for (int part : lambda.parts) wl.push_back(-part);
  for (int part : mu.parts) wm.push_back(-part);
  FockVector<F> x = bra.iota_word(wl), y = ket.iota_word(wm);
  F total(0);
  for (const auto& [nu, c] : x.terms) {
    F g = fock_pairing(ket.osc(), nu, FockVector<F>::basis(nu));
    total = total + c * g * y.coeff(nu);
  }
  return total;
}

// p-basis image: x_{-lambda}|vac> -> p_lambda.
template <class F>
sym::SymFunc<F> jmap(const FockVector<F>& v) {
  sym::SymFunc<F> r{sym::Basis::p, v.level, {}};
  for (const auto& [k, c] : v.terms) r.add(k, c);
  return r;
}

// Normal-ordered product of vertex operators at arguments z*scale_i, as one exponential
// prefactor * exp(sum_k create_k x_{-k} z^k / k) exp(sum_k annih_k x_k z^{-k} / k).
template <class F>
struct ExpOperator {
  F prefactor{1};
  std::vector<F> create, annih;  // index k = 1..L
};

template <class F>
ExpOperator<F> ordered_product_expand(const FreeField<F>& ff, const std::vector<Sign>& signs, const std::vector<F>& scales,
                                      int L) {
  if (signs.size() != scales.size()) throw std::invalid_argument("signs and scales differ in length");
  const Osc<F>& o = ff.osc();
  ExpOperator<F> op;
  op.create.assign(static_cast<std::size_t>(L) + 1, F(0));
  op.annih.assign(static_cast<std::size_t>(L) + 1, F(0));
  for (std::size_t i = 0; i < signs.size(); ++i) {
    F s = scales[i];
    if (o.mode == OscMode::generic && signs[i] == Sign::minus) s = s / o.p();
    op.prefactor = op.prefactor * ff.prefactor(signs[i], 0);
    F c = F(ff.creation_sign(signs[i])), d = F(ff.annihilation_sign(signs[i]));
    for (int k = 1; k <= L; ++k) {
      op.create[static_cast<std::size_t>(k)] = op.create[static_cast<std::size_t>(k)] + c * power<F>(s, k);
      op.annih[static_cast<std::size_t>(k)] = op.annih[static_cast<std::size_t>(k)] + d * power<F>(s, -k);
    }
  }
  return op;
}

// Coefficients of z^j, |j| <= L, of op applied to v.
template <class F>
std::map<int, FockVector<F>> apply_exp(const Osc<F>& o, const ExpOperator<F>& op, const FockVector<F>& v, int L) {
  std::map<int, FockVector<F>> out;
  int d = v.level;
  auto weight = [](const std::vector<F>& y, const Partition& lam) {
    F r = F(1) / F(Rational(z_lambda(lam)));
    for (int part : lam.parts) r = r * y[static_cast<std::size_t>(part)];
    return r;
  };
  for (int k = 0; k <= std::min(d, L); ++k) {
    FockVector<F> bk;
    bk.level = d - k;
    for (const auto& lam : partitions_of(k)) {
      F c = weight(op.annih, lam);
      if (dva::is_zero(c)) continue;
      FockVector<F> x = v;
      for (int part : lam.parts) x = osc_act(o, part, x);
      bk = bk + x.scaled(c);
    }
    if (bk.is_zero()) continue;
    for (int j = 0; j - k <= L; ++j) {
      if (j > L) break;
      for (const auto& lam : partitions_of(j)) {
        F c = weight(op.create, lam) * op.prefactor;
        if (dva::is_zero(c)) continue;
        FockVector<F> x;
        x.level = bk.level + j;
        for (const auto& [nu, b] : bk.terms) x.add(nu.union_with(lam), b * c);
        if (x.is_zero()) continue;
        auto it = out.find(j - k);
        if (it == out.end())
          out.emplace(j - k, x);
        else
          it->second = it->second + x;
      }
    }
  }
  for (auto it = out.begin(); it != out.end();)
    it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

// exp(sum_k d1 c2 bracket(k) s1^{-k} s2^k x^k / k^2): the factor in Lambda^{e1}(z1) Lambda^{e2}(z2) = f^{e1e2}(z2/z1) :..:
template <class F>
Series<F> contraction_series(const FreeField<F>& ff, Sign e1, Sign e2, int L) {
  const Osc<F>& o = ff.osc();
  auto scale = [&](Sign s) { return o.mode == OscMode::generic && s == Sign::minus ? F(1) / o.p() : F(1); };
  F s1 = scale(e1), s2 = scale(e2);
  F coef = F(ff.annihilation_sign(e1) * ff.creation_sign(e2));
  F ratio = s2 / s1;
  std::function<F(int)> g = [&](int k) -> F { return coef * o.bracket(k) * power<F>(ratio, k) / F(k); };
  return series_exp_of_sum<F>(g, L);
}

// f^{e1 e2}(x) from f: f^{++} = f^{--} = 1/f, f^{+-}(x) = f(x/p), f^{-+}(x) = f(px); at t -> infinity f^{+-} = f^{-+} = f.
template <class F>
Series<F> expected_contraction(const Osc<F>& o, const Series<F>& f, Sign e1, Sign e2) {
  if (e1 == e2) return f.inverse();
  if (o.mode == OscMode::t_infinity) return f;
  return e1 == Sign::plus ? f.dilated(F(1) / o.p()) : f.dilated(o.p());
}

// [x_{kN}, iota(T_m)] v for both signs of kN; empty vector when central.
template <class F>
FockVector<F> alpha_centrality_defect(const FreeField<F>& ff, int mode, int m, const FockVector<F>& v) {
  const Osc<F>& o = ff.osc();
  return osc_act(o, mode, ff.iota(m, v)) - ff.iota(m, osc_act(o, mode, v));
}

// sum_l f_l (T_{m-l}T_{n+l} - T_{n-l}T_{m+l}) v - c_m delta_{m+n,0} v under iota.
template <class F>
FockVector<F> relation_defect(const FreeField<F>& ff, const alg::Algebra<F>& a, int m, int n, const FockVector<F>& v) {
  FockVector<F> r;
  r.level = v.level - m - n;
  int top = v.level + std::abs(m) + std::abs(n) + 1;
  for (int l = 0; l <= top; ++l) {
    F fl = a.f(l);
    if (dva::is_zero(fl)) continue;
    r = r + (ff.iota(m - l, ff.iota(n + l, v)) - ff.iota(n - l, ff.iota(m + l, v))).scaled(fl);
  }
  if (m + n == 0) r = r - v.scaled(a.c(m));
  return r;
}

// [x, y]_q = xy - q yx on vertex modes at t -> infinity.
template <class F>
FockVector<F> qcomm(const FreeField<F>& ff, Sign s1, int m, Sign s2, int n, const FockVector<F>& v) {
  return ff.lambda(s1, m, ff.lambda(s2, n, v)) - ff.lambda(s2, n, ff.lambda(s1, m, v)).scaled(ff.osc().q);
}

// Defects of the three t -> infinity vertex mode relations on v.
template <class F>
std::vector<FockVector<F>> tinf_vertex_relation_defects(const FreeField<F>& ff, int m, int n, const FockVector<F>& v) {
  const F& q = ff.osc().q;
  std::vector<FockVector<F>> out;
  out.push_back(qcomm(ff, Sign::plus, m, Sign::plus, n, v) + qcomm(ff, Sign::plus, n + 1, Sign::plus, m - 1, v));
  FockVector<F> mixed = qcomm(ff, Sign::plus, m, Sign::minus, n, v) + qcomm(ff, Sign::minus, n - 1, Sign::plus, m + 1, v);
  if (m + n == 0) mixed = mixed - v.scaled(power<F>(F(1) - q, 2));
  out.push_back(mixed);
  out.push_back(qcomm(ff, Sign::minus, m, Sign::minus, n, v) + qcomm(ff, Sign::minus, n + 1, Sign::minus, m - 1, v));
  return out;
}

// jtilde(Lambda~^-_{-s1} ... Lambda~^-_{-sn}|0>) for a sequence s.
template <class F>
sym::SymFunc<F> milne_image(const FreeField<F>& ff, const IntSequence& seq) {
  std::vector<int> word;
  for (int x : seq) word.push_back(-x);
  return jmap(ff.lambda_word(Sign::minus, word));
}

// Q'_{lambda u (n^N)} = Q'_lambda Q'_{(n^N)} through the free-field image at q a primitive N-th root.
template <class F>
bool milne_rectangle_factorizes(const FreeField<F>& ff, int N, int n, const Partition& lambda) {
  Partition rect, both = lambda;
  for (int i = 0; i < N; ++i) {
    rect = rect.with_part(n);
    both = both.with_part(n);
  }
  return milne_image(ff, both.parts) == sym::multiply_p(milne_image(ff, lambda.parts), milne_image(ff, rect.parts));
}

// Q'_{(n^N)} = (-1)^{n(N-1)} sum_{lambda |- n} p_{N lambda} / z_lambda at q a primitive N-th root.
template <class F>
bool milne_rectangle_formula(const FreeField<F>& ff, int N, int n) {
  IntSequence rect(static_cast<std::size_t>(N), n);
  sym::SymFunc<F> rhs{sym::Basis::p, n * N, {}};
  F sign = (n * (N - 1)) % 2 ? F(-1) : F(1);
  for (const auto& lam : partitions_of(n)) {
    Partition scaled;
    for (int x : lam.parts) scaled.parts.push_back(N * x);
    rhs.add(scaled, sign / F(Rational(z_lambda(lam))));
  }
  return milne_image(ff, rect) == rhs;
}

// Two-variable normal-ordered product :L(z1)L(z2): applied to v, compared degree by degree with
// sum over l1 >= l2 of P_l(z1,z2;q) L_{-l1} L_{-l2} v, where P_{l+k} = (z1 z2)^k P_l extends P to
// sequences with negative entries.  F must contain z1, z2 and q.
template <class F>
bool normal_order_expansion_holds(const FreeField<F>& ff, const F& z1, const F& z2, const FockVector<F>& v, int L) {
  const F& q = ff.osc().q;
  auto op = ordered_product_expand(ff, {Sign::minus, Sign::minus}, {z1, z2}, L + v.level);
  auto lhs = apply_exp(ff.osc(), op, v, L + v.level);
  for (int d = -v.level; d <= L; ++d) {
    FockVector<F> rhs;
    rhs.level = v.level + d;
    for (int l2 = -v.level; 2 * l2 <= d; ++l2) {
      int l1 = d - l2;
      Partition shape;
      if (l1 - l2 > 0) shape.parts.push_back(l1 - l2);
      F coeff = sym::specialize_vars(sym::single<F>(sym::Basis::HL_P, shape), {z1, z2}, q) * power<F>(z1 * z2, l2);
      if (dva::is_zero(coeff)) continue;
      rhs = rhs + ff.lambda(Sign::minus, -l1, ff.lambda(Sign::minus, -l2, v)).scaled(coeff);
    }
    auto it = lhs.find(d);
    FockVector<F> left = it == lhs.end() ? FockVector<F>{} : it->second;
    left.level = rhs.level;
    if (left != rhs) return false;
  }
  return true;
}

}  // namespace dva::fock
