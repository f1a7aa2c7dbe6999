#pragma once

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "dva/exactfield.hpp"
#include "dva/linalg.hpp"
#include "dva/partitions.hpp"

namespace dva::alg {

enum class Variant { generic, q_root, q_minus1, t_infinity, custom };

inline std::string variant_name(Variant v) {
  switch (v) {
    case Variant::generic: return "generic";
    case Variant::q_root: return "q_root";
    case Variant::q_minus1: return "q_minus1";
    case Variant::t_infinity: return "t_infinity";
    case Variant::custom: return "custom";
  }
  return "?";
}

// Homogeneous Verma module element in the PBW basis T_{-l1}...T_{-lk}|h>.
template <class F>
struct VermaVector {
  int level = 0;
  std::map<Partition, F> terms;

  static VermaVector vacuum() { return basis(Partition{}); }
  static VermaVector basis(const Partition& lambda, const F& c = F(1)) {
    VermaVector v;
    v.level = lambda.weight();
    v.add(lambda, c);
    return v;
  }

  void add(const Partition& key, const F& c) {
    if (dva::is_zero(c)) return;
    auto it = terms.find(key);
    if (it == terms.end()) {
      if (terms.empty()) level = key.weight();
      terms.emplace(key, c);
    } else {
      it->second = it->second + c;
      if (dva::is_zero(it->second)) terms.erase(it);
    }
  }
  F coeff(const Partition& key) const {
    auto it = terms.find(key);
    return it == terms.end() ? F(0) : it->second;
  }
  bool is_zero() const { return terms.empty(); }
  VermaVector scaled(const F& c) const {
    VermaVector r;
    r.level = level;
    if (dva::is_zero(c)) return r;
    for (const auto& [k, v] : terms) r.terms.emplace(k, v * c);
    return r;
  }
  friend VermaVector operator+(const VermaVector& a, const VermaVector& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.level != b.level) throw std::invalid_argument("adding Verma vectors of different level");
    VermaVector r = a;
    for (const auto& [k, v] : b.terms) r.add(k, v);
    return r;
  }
  friend VermaVector operator-(const VermaVector& a, const VermaVector& b) { return a + b.scaled(F(-1)); }
  bool operator==(const VermaVector& o) const {
    if (terms.size() != o.terms.size()) return false;
    auto x = terms.begin();
    for (auto y = o.terms.begin(); y != o.terms.end(); ++x, ++y)
      if (x->first != y->first || !(x->second == y->second)) return false;
    return true;
  }
  bool operator!=(const VermaVector& o) const { return !(*this == o); }
};

// Structure data of one algebra: f-series, central terms, p, q and the highest weight h.
template <class F>
class Algebra {
 public:
  Variant variant = Variant::generic;
  int N = 0;  // order of the root of unity q, if any
  F p{0}, q{0}, h{0};

  Algebra() = default;
  Algebra(Variant v, int n, F p_, F q_, F h_, std::function<Series<F>(int)> fgen, std::function<F(int)> cfn)
      : variant(v), N(n), p(std::move(p_)), q(std::move(q_)), h(std::move(h_)),
        state_(std::make_shared<State>()) {
    state_->gen = std::move(fgen);
    state_->c = std::move(cfn);
  }

  // True for the q-commutator relations of the t -> infinity limit.
  bool tinf() const { return variant == Variant::t_infinity; }

  // Snapshot of f_0..f_L (or longer); safe to hold while other threads extend it.
  std::shared_ptr<const Series<F>> f_series(int L) const {
    {
      std::shared_lock lock(state_->mu);
      if (state_->f && state_->f->order() >= L) return state_->f;
    }
    std::unique_lock lock(state_->mu);
    if (!state_->f || state_->f->order() < L) {
      int target = std::max(L, state_->f ? 2 * state_->f->order() : 12);
      auto s = std::make_shared<const Series<F>>(state_->gen(target));
      if (s->order() < L) throw std::out_of_range("f-series is too short for the requested order");
      state_->f = std::move(s);
    }
    return state_->f;
  }
  F f(int l) const { return l < 0 ? F(0) : (*f_series(l))[l]; }
  F c(int m) const { return state_->c(m); }

  // Same algebra with a different highest weight (shares the f-series).
  Algebra with_h(const F& h_new) const {
    Algebra a = *this;
    a.h = h_new;
    return a;
  }

 private:
  struct State {
    std::function<Series<F>(int)> gen;
    std::function<F(int)> c;
    std::shared_ptr<const Series<F>> f;
    std::shared_mutex mu;
  };
  std::shared_ptr<State> state_;
};

// f(x) f(px) = (1-qx)(1-q^{-1}px) / ((1-x)(1-px)) to order L.
template <class F>
bool check_f_recurrence(const Series<F>& f, const F& p, const F& q) {
  int L = f.order();
  Series<F> num(L), den(L);
  num[0] = F(1);
  if (L >= 1) num[1] = F(0) - q - p / q;
  if (L >= 2) num[2] = p;
  den[0] = F(1);
  if (L >= 1) den[1] = F(0) - F(1) - p;
  if (L >= 2) den[2] = p;
  return f * f.dilated(p) == num * den.inverse();
}

// Generic algebra: f from the exponential formula with t = q/p, c_m = zeta (p^m - p^{-m}).
template <class F>
Algebra<F> make_generic(const F& p, const F& q, const F& h, int L = 12, Variant v = Variant::generic, int N = 0) {
  F tinv = p / q;
  auto gen = [p, q, tinv](int order) {
    std::function<F(int)> g = [&](int n) -> F {
      return (F(1) - power<F>(q, n)) * (F(1) - power<F>(tinv, n)) / (F(1) + power<F>(p, n));
    };
    return series_exp_of_sum<F>(g, order);
  };
  F zeta = F(0) - (F(1) - q) * (F(1) - tinv) / (F(1) - p);
  auto c = [zeta, p](int m) -> F { return zeta * (power<F>(p, m) - power<F>(p, -m)); };
  Algebra<F> a(v, N, p, q, h, gen, c);
  if (!check_f_recurrence(a.f_series(L)->truncated(L), p, q))
    throw std::logic_error("f-series fails the functional recurrence");
  return a;
}

// q a primitive N-th root of unity; F must be a cyclotomic field type.
template <class F>
Algebra<F> make_q_root(int N, const F& p, const F& h, int L = 12) {
  if (N < 2) throw std::invalid_argument("root of unity order must be at least 2");
  return make_generic<F>(p, F::root(N), h, L, Variant::q_root, N);
}

// q = -1 with the branch f(x) = (1+x)/(1-x).
template <class F>
Algebra<F> make_q_minus1(const F& p, const F& h) {
  auto gen = [](int order) {
    Series<F> s(order);
    s[0] = F(1);
    for (int l = 1; l <= order; ++l) s[l] = F(2);
    return s;
  };
  F k = F(-2) * (F(1) + p) / (F(1) - p);
  auto c = [k, p](int m) -> F { return k * (power<F>(p, m) - power<F>(p, -m)); };
  return Algebra<F>(Variant::q_minus1, 2, p, F(-1), h, gen, c);
}

// t -> infinity: f(x) = (1-qx)/(1-x); relations are the q-commutators.
template <class F>
Algebra<F> make_t_infinity(const F& q, const F& h, int N = 0) {
  auto gen = [q](int order) {
    Series<F> s(order);
    s[0] = F(1);
    for (int l = 1; l <= order; ++l) s[l] = F(1) - q;
    return s;
  };
  auto c = [q](int m) -> F { return m > 0 ? F(1) - q : (m < 0 ? q - F(1) : F(0)); };
  return Algebra<F>(Variant::t_infinity, N, F(0), q, h, gen, c);
}

// Arbitrary f-series (f[0] must be 1) and central terms.
template <class F>
Algebra<F> make_custom(std::vector<F> f, std::function<F(int)> c, const F& h) {
  if (f.empty() || !(f[0] == F(1))) throw std::invalid_argument("custom f-series must start with f_0 = 1");
  // Coefficients past the given ones are zero.
  auto gen = [f](int order) {
    Series<F> s(order);
    for (std::size_t i = 0; i < f.size() && static_cast<int>(i) <= order; ++i) s[static_cast<int>(i)] = f[i];
    return s;
  };
  Algebra<F> a(Variant::custom, 0, F(0), F(0), h, gen, c);
  a.f_series(static_cast<int>(f.size()) - 1);
  return a;
}

// Replacement of a misordered pair T_a T_b (a > b) acting on a state of level s.
template <class F>
struct PairTerm {
  F coeff;
  bool empty;  // central term: the pair disappears
  int first, second;
};

template <class F>
std::vector<PairTerm<F>> rewrite_pair(const Algebra<F>& alg, int a, int b, int s) {
  std::vector<PairTerm<F>> out;
  auto push = [&](const F& c, int x, int y) {
    if (!dva::is_zero(c)) out.push_back({c, false, x, y});
  };
  if (!alg.tinf()) {
    push(F(1), b, a);
    int top = std::max(s - a, s - b);
    for (int l = 1; l <= top; ++l) {
      F fl = alg.f(l);
      if (dva::is_zero(fl)) continue;
      if (a + l <= s) push(fl, b - l, a + l);
      if (b + l <= s) push(F(0) - fl, a - l, b + l);
    }
    if (a + b == 0) {
      F c = alg.c(a);
      if (!dva::is_zero(c)) out.push_back({c, true, 0, 0});
    }
    return out;
  }
  const F& q = alg.q;
  F one_minus_q = F(1) - q, qq = q - F(1) / q;
  push(q, b, a);
  if (a > 0 && b < 0) {
    F ql = q;
    for (int l = 1; a + l <= s; ++l, ql = ql * q) push(qq * ql, b - l, a + l);
    if (a + b == 0) out.push_back({one_minus_q, true, 0, 0});
  } else if ((a > b && b > 0) || (0 > a && a > b)) {
    for (int l = 1; l <= a - b - 1; ++l) push(F(0) - one_minus_q, a - l, b + l);
  } else if (a == 0) {
    for (int l = 1; l <= -b - 1; ++l) push(F(0) - one_minus_q, -l, b + l);
    F ql = q;
    for (int l = 1; l <= s; ++l, ql = ql * q) push(qq * ql, b - l, l);
  } else {  // a > 0 == b
    for (int l = 1; l <= a - 1; ++l) push(F(0) - one_minus_q, a - l, l);
    F ql = q;
    for (int l = 1; a + l <= s; ++l, ql = ql * q) push(qq * ql, -l, a + l);
  }
  return out;
}

// Verma module M(h) with a memoized normal-ordering engine.
template <class F>
class Verma {
 public:
  using Terms = std::map<Partition, F>;
  using Entry = std::shared_ptr<const Terms>;

  explicit Verma(Algebra<F> a) : alg_(std::move(a)), memo_(std::make_shared<Memo>()) {}

  const Algebra<F>& algebra() const { return alg_; }

  // T_m v
  VermaVector<F> act(int m, const VermaVector<F>& v) const {
    VermaVector<F> r;
    r.level = v.level - m;
    if (v.is_zero()) return r;
    Terms acc;
    accumulate(acc, m, v.terms, F(1));
    for (auto& [k, c] : acc)
      if (!dva::is_zero(c)) r.terms.emplace(k, std::move(c));
    return r;
  }

  // T_{w1} ... T_{wk} v, applied right to left.
  VermaVector<F> act_word(const std::vector<int>& w, VermaVector<F> v) const {
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      v = act(*it, v);
      if (v.is_zero()) break;
    }
    return v;
  }
  VermaVector<F> act_word(const std::vector<int>& w) const { return act_word(w, VermaVector<F>::vacuum()); }

  std::size_t memo_size() const {
    std::shared_lock lock(memo_->mu);
    return memo_->table.size();
  }

 private:
  struct Memo {
    std::map<std::pair<int, Partition>, Entry> table;
    mutable std::shared_mutex mu;
  };

  // out += c * T_y (in)
  void accumulate(Terms& out, int y, const Terms& in, const F& c) const {
    for (const auto& [mu, a] : in) {
      Entry e = insert(y, mu);
      F ca = c * a;
      for (const auto& [k, v] : *e) {
        auto it = out.find(k);
        if (it == out.end())
          out.emplace(k, ca * v);
        else
          it->second = it->second + ca * v;
      }
    }
  }

  Entry insert(int x, const Partition& mu) const {
    auto key = std::make_pair(x, mu);
    {
      std::shared_lock lock(memo_->mu);
      auto it = memo_->table.find(key);
      if (it != memo_->table.end()) return it->second;
    }
    Entry e = std::make_shared<const Terms>(compute(x, mu));
    std::unique_lock lock(memo_->mu);
    return memo_->table.emplace(std::move(key), std::move(e)).first->second;
  }

  Terms compute(int x, const Partition& mu) const {
    Terms out;
    int d = mu.weight();
    if (x > d) return out;
    if (mu.empty()) {
      if (x == 0)
        out.emplace(Partition{}, alg_.h);
      else
        out.emplace(Partition{-x}, F(1));
      return out;
    }
    int b = -mu.largest();
    if (x <= b) {
      out.emplace(mu.with_part(-x), F(1));
      return out;
    }
    Partition rest = mu.without_first();
    int s = d + b;
    for (const auto& t : rewrite_pair(alg_, x, b, s)) {
      if (t.empty) {
        add_to(out, rest, t.coeff);
        continue;
      }
      // T_first T_second rest
      if (t.second > s) continue;
      Entry inner = insert(t.second, rest);
      accumulate(out, t.first, *inner, t.coeff);
    }
    for (auto it = out.begin(); it != out.end();)
      it = dva::is_zero(it->second) ? out.erase(it) : std::next(it);
    return out;
  }

  static void add_to(Terms& out, const Partition& k, const F& c) {
    auto it = out.find(k);
    if (it == out.end())
      out.emplace(k, c);
    else
      it->second = it->second + c;
  }

  Algebra<F> alg_;
  std::shared_ptr<Memo> memo_;
};

// Normal ordering of a whole word by repeatedly rewriting one misordered pair,
// either the leftmost or the rightmost; independent of the memoized engine.
enum class Strategy { leftmost, rightmost };

template <class F>
VermaVector<F> rewrite_word(const Algebra<F>& alg, const std::vector<int>& word, Strategy strat,
                            std::size_t max_steps = 5'000'000) {
  using Word = std::vector<int>;
  VermaVector<F> result;
  int total = 0;
  for (int m : word) total -= m;
  result.level = total;
  std::map<Word, F> pending;
  pending.emplace(word, F(1));
  auto push = [&](Word w, const F& c) {
    if (dva::is_zero(c)) return;
    auto it = pending.find(w);
    if (it == pending.end())
      pending.emplace(std::move(w), c);
    else {
      it->second = it->second + c;
      if (dva::is_zero(it->second)) pending.erase(it);
    }
  };
  std::size_t steps = 0;
  while (!pending.empty()) {
    if (++steps > max_steps) throw std::runtime_error("word rewriting did not terminate");
    auto node = pending.extract(pending.begin());
    Word w = std::move(node.key());
    F c = std::move(node.mapped());
    // Suffix levels must stay nonnegative.
    bool dead = false;
    int lvl = 0;
    std::vector<int> suffix(w.size() + 1, 0);
    for (std::size_t i = w.size(); i-- > 0;) {
      lvl -= w[i];
      suffix[i] = lvl;
      if (lvl < 0) {
        dead = true;
        break;
      }
    }
    if (dead) continue;
    if (!w.empty() && w.back() == 0) {
      w.pop_back();
      push(std::move(w), c * alg.h);
      continue;
    }
    std::vector<std::size_t> bad;
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
      if (w[i] > w[i + 1]) bad.push_back(i);
    if (bad.empty()) {
      std::vector<int> parts;
      for (int m : w) parts.push_back(-m);
      result.add(Partition(parts), c);
      continue;
    }
    std::size_t i = strat == Strategy::leftmost ? bad.front() : bad.back();
    int s = suffix[i + 2];
    for (const auto& t : rewrite_pair(alg, w[i], w[i + 1], s)) {
      Word nw(w.begin(), w.begin() + static_cast<long>(i));
      if (!t.empty) {
        nw.push_back(t.first);
        nw.push_back(t.second);
      }
      nw.insert(nw.end(), w.begin() + static_cast<long>(i) + 2, w.end());
      push(std::move(nw), c * t.coeff);
    }
  }
  return result;
}

// Parallel loop over [0, n) with a fixed number of workers.
template <class Fn>
void parallel_for(std::size_t n, Fn fn) {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  std::size_t workers = std::min<std::size_t>(hw, n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr err;
  std::mutex err_mu;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(err_mu);
          if (!err) err = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

// <h| omega(T_{-lambda}) T_{-mu} |h>, omega(T_n) = T_{-n}.
template <class F>
F pairing(const Verma<F>& V, const Partition& lambda, const VermaVector<F>& v) {
  VermaVector<F> w = v;
  for (int part : lambda.parts) {
    w = V.act(part, w);
    if (w.is_zero()) return F(0);
  }
  return w.coeff(Partition{});
}

template <class F>
Matrix<F> gram(const Verma<F>& V, const std::vector<Partition>& basis) {
  std::size_t n = basis.size();
  Matrix<F> g = zero_matrix<F>(n, n);
  parallel_for(n, [&](std::size_t j) {
    VermaVector<F> v = VermaVector<F>::basis(basis[j]);
    for (std::size_t i = 0; i < n; ++i) g[i][j] = pairing(V, basis[i], v);
  });
  return g;
}

template <class F>
Matrix<F> gram(const Verma<F>& V, int n) {
  return gram(V, partitions_of(n));
}

// Partitions of n with all multiplicities at most N-1 (basis of the quotient module).
inline std::vector<Partition> quotient_basis(int N, int n) {
  PartitionConstraints c;
  c.max_multiplicity = N - 1;
  return partitions_of(n, c);
}

template <class F>
Matrix<F> quotient_gram(const Verma<F>& V, int n) {
  const auto& a = V.algebra();
  if (a.variant != Variant::q_root && a.variant != Variant::q_minus1 &&
      !(a.variant == Variant::t_infinity && a.N >= 2))
    throw std::invalid_argument("quotient_gram needs a root-of-unity variant");
  return gram(V, quotient_basis(a.N, n));
}

// h^2_{r,s} = p^{-r} q^{r-s} + p^r q^{s-r} + 2
template <class F>
F h2_rs(int r, int s, const F& p, const F& q) {
  return power<F>(p, -r) * power<F>(q, r - s) + power<F>(p, r) * power<F>(q, s - r) + F(2);
}

// Kac determinant up to its constant: prod_{rs<=n} (h^2-h^2_{rs})^{p(n-rs)} ((1-q^r)(1-t^{-r})/(1+p^r))^{p(n-rs)}.
template <class F>
F kac_formula(int n, const F& p, const F& q, const F& h) {
  F r_val(1), h2 = h * h;
  for (int r = 1; r <= n; ++r)
    for (int s = 1; r * s <= n; ++s) {
      long e = partition_count(n - r * s);
      F factor = (h2 - h2_rs(r, s, p, q)) * (F(1) - power<F>(q, r)) * (F(1) - power<F>(p / q, r)) / (F(1) + power<F>(p, r));
      r_val = r_val * power<F>(factor, e);
    }
  return r_val;
}

// t -> infinity determinant: prod_{rs<=n} (1-q^r)^{p(n-rs)}.
template <class F>
F kac_formula_tinf(int n, const F& q) {
  F r_val(1);
  for (int r = 1; r <= n; ++r)
    for (int s = 1; r * s <= n; ++s) r_val = r_val * power<F>(F(1) - power<F>(q, r), partition_count(n - r * s));
  return r_val;
}

// q = -1 quotient determinant: prod_{r<=n} (h^2 - h^2_{r,1})^{q_2(r; n-r)}.
template <class F>
F quotient_formula_qminus1(int n, const F& p, const F& h) {
  F r_val(1), h2 = h * h;
  for (int r = 1; r <= n; ++r) {
    CharParams cp;
    cp.r = r;
    auto e = char_series(CharKind::q2_r, cp, n - r);
    r_val = r_val * power<F>(h2 - h2_rs(r, 1, p, F(-1)), e[static_cast<std::size_t>(n - r)].get_si());
  }
  return r_val;
}

// Root-of-unity quotient determinant shape:
// prod_{r>=1, 1<=s<=N-1, rs<=n} (h^2-h^2_{rs})^{q_N(r,s;n-rs)} * prod_{rs<=n, N !| r} ((1-t^{-r})/(1+p^r))^{p_N(n-rs)}.
template <class F>
F quotient_formula_root(int N, int n, const F& p, const F& q, const F& h) {
  F r_val(1), h2 = h * h;
  CharParams pn;
  pn.N = N;
  auto pN = char_series(CharKind::reduced_N, pn, n);
  for (int r = 1; r <= n; ++r)
    for (int s = 1; r * s <= n; ++s) {
      if (s <= N - 1) {
        CharParams cp;
        cp.N = N;
        cp.r = r;
        cp.s = s;
        auto e = char_series(CharKind::qN_rs, cp, n - r * s);
        r_val = r_val * power<F>(h2 - h2_rs(r, s, p, q), e[static_cast<std::size_t>(n - r * s)].get_si());
      }
      if (r % N != 0)
        r_val = r_val * power<F>((F(1) - power<F>(p / q, r)) / (F(1) + power<F>(p, r)),
                              pN[static_cast<std::size_t>(n - r * s)].get_si());
    }
  return r_val;
}

template <class F>
struct SingularVerdict {
  bool singular = true;
  int witness = 0;
  VermaVector<F> residue;
};

// Singular iff T_m v = 0 for 1 <= m <= level(v).
template <class F>
SingularVerdict<F> singular_check(const Verma<F>& V, const VermaVector<F>& v) {
  SingularVerdict<F> out;
  if (v.is_zero()) throw std::invalid_argument("singular_check on the zero vector");
  for (int m = 1; m <= v.level; ++m) {
    VermaVector<F> r = V.act(m, v);
    if (!r.is_zero()) {
      out.singular = false;
      out.witness = m;
      out.residue = r;
      return out;
    }
  }
  return out;
}

}  // namespace dva::alg
