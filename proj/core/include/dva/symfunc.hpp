#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dva/exactfield.hpp"
#include "dva/linalg.hpp"
#include "dva/partitions.hpp"

namespace dva::sym {

enum class Basis { m, e, h, s, p, HL_P, HL_Q, Milne };
std::string basis_name(Basis b);
Basis parse_basis(const std::string& s);
bool is_q_basis(Basis b);

// Homogeneous symmetric function of degree deg in the given basis.
template <class F>
struct SymFunc {
  Basis basis = Basis::p;
  int deg = 0;
  std::map<Partition, F> coeffs;

  void add(const Partition& key, const F& c) {
    if (is_zero(c)) return;
    auto it = coeffs.find(key);
    if (it == coeffs.end()) {
      coeffs.emplace(key, c);
    } else {
      it->second = it->second + c;
      if (is_zero(it->second)) coeffs.erase(it);
    }
  }
  F coeff(const Partition& key) const {
    auto it = coeffs.find(key);
    return it == coeffs.end() ? F(0) : it->second;
  }
  bool is_zero_fn() const { return coeffs.empty(); }
  bool operator==(const SymFunc& o) const {
    if (basis != o.basis || coeffs.size() != o.coeffs.size()) return false;
    if (!coeffs.empty() && deg != o.deg) return false;
    auto a = coeffs.begin();
    for (auto b = o.coeffs.begin(); b != o.coeffs.end(); ++a, ++b)
      if (a->first != b->first || !(a->second == b->second)) return false;
    return true;
  }
  bool operator!=(const SymFunc& o) const { return !(*this == o); }
  SymFunc scaled(const F& c) const {
    SymFunc r{basis, deg, {}};
    for (const auto& [k, v] : coeffs) r.add(k, v * c);
    return r;
  }
  friend SymFunc operator+(const SymFunc& a, const SymFunc& b) {
    if (a.basis != b.basis) throw std::invalid_argument("adding symmetric functions in different bases");
    if (!a.coeffs.empty() && !b.coeffs.empty() && a.deg != b.deg)
      throw std::invalid_argument("adding symmetric functions of different degree");
    SymFunc r = a;
    if (r.coeffs.empty()) r.deg = b.deg;
    for (const auto& [k, v] : b.coeffs) r.add(k, v);
    return r;
  }
  friend SymFunc operator-(const SymFunc& a, const SymFunc& b) { return a + b.scaled(F(-1)); }
};

template <class F>
SymFunc<F> single(Basis b, const Partition& lambda, const F& c = F(1)) {
  SymFunc<F> r{b, lambda.weight(), {}};
  r.add(lambda, c);
  return r;
}

// Evaluate a polynomial in q at a value in F.
template <class F>
F eval_q(const RatFunc& f, const F& q) {
  if constexpr (std::is_same_v<F, RatFunc>) {
    if (q == RatFunc::variable(VQ)) return f;
  }
  if (f.is_constant()) return F(f.num().constant_term() / f.den().constant_term());
  Assignment<F> a;
  a[VQ] = q;
  return f.eval(a);
}

// ---------------------------------------------------------------------------
// Transition tables

struct ClassicalTables {
  int n = 0;
  std::vector<Partition> parts;  // reverse-lex
  std::map<Partition, std::size_t> index;
  // to_p[b][i][j]: coefficient of p_{parts[j]} in b_{parts[i]}, for b in m, e, h, s.
  std::map<Basis, Matrix<Rational>> to_p;
  std::map<Basis, Matrix<Rational>> from_p;  // inverse matrices
};

const ClassicalTables& classical(int n);

// Kostka-Foulkes matrix K(q) over Z[q], rows/cols in reverse-lex order.
const Matrix<RatFunc>& kostka_q(int n);
// Same Gram-Schmidt with the partitions processed by a different linear extension of dominance.
Matrix<RatFunc> kostka_q_alternate_order(int n);
// Kostka numbers from the s -> m transition (independent of K(q)).
Matrix<Rational> kostka_numbers(int n);

template <class F>
Matrix<F> kostka(int n, const F& q) {
  const auto& K = kostka_q(n);
  Matrix<F> r = zero_matrix<F>(K.size(), K.size());
  for (std::size_t i = 0; i < K.size(); ++i)
    for (std::size_t j = 0; j < K.size(); ++j)
      if (!K[i][j].is_zero()) r[i][j] = eval_q(K[i][j], q);
  return r;
}

// Disk cache directory; an empty string disables the disk cache.
void set_cache_dir(std::optional<std::string> dir);
std::string cache_dir();
void clear_memory_cache();

// ---------------------------------------------------------------------------
// Basis changes

template <class F>
F b_of(const Partition& lambda, const F& q) {
  return b_poly(lambda, q);
}

// Power-sum expansion of an expression in any basis.
template <class F>
SymFunc<F> to_p(const SymFunc<F>& f, const F& q) {
  if (f.basis == Basis::p) return f;
  SymFunc<F> r{Basis::p, f.deg, {}};
  if (f.coeffs.empty()) return r;
  const auto& T = classical(f.deg);
  std::size_t N = T.parts.size();
  std::vector<F> acc(N, F(0));
  auto push_row = [&](const Matrix<Rational>& M, std::size_t row, const F& c) {
    for (std::size_t j = 0; j < N; ++j)
      if (sgn(M[row][j]) != 0) acc[j] = acc[j] + c * F(M[row][j]);
  };
  switch (f.basis) {
    case Basis::m:
    case Basis::e:
    case Basis::h:
    case Basis::s:
      for (const auto& [lam, c] : f.coeffs) push_row(T.to_p.at(f.basis), T.index.at(lam), c);
      break;
    case Basis::HL_P:
    case Basis::HL_Q: {
      // P = K^{-1} s
      Matrix<F> Kinv = unitriangular_inverse(kostka(f.deg, q));
      std::vector<F> s_coords(N, F(0));
      for (const auto& [lam, c0] : f.coeffs) {
        F c = c0;
        if (f.basis == Basis::HL_Q) c = c * b_of(lam, q);
        std::size_t i = T.index.at(lam);
        for (std::size_t k = 0; k < N; ++k)
          if (!is_zero(Kinv[i][k])) s_coords[k] = s_coords[k] + c * Kinv[i][k];
      }
      for (std::size_t k = 0; k < N; ++k)
        if (!is_zero(s_coords[k])) push_row(T.to_p.at(Basis::s), k, s_coords[k]);
      break;
    }
    case Basis::Milne: {
      // Q'_lambda = sum_mu K_{mu lambda} s_mu
      Matrix<F> K = kostka(f.deg, q);
      std::vector<F> s_coords(N, F(0));
      for (const auto& [lam, c] : f.coeffs) {
        std::size_t j = T.index.at(lam);
        for (std::size_t mu = 0; mu < N; ++mu)
          if (!is_zero(K[mu][j])) s_coords[mu] = s_coords[mu] + c * K[mu][j];
      }
      for (std::size_t k = 0; k < N; ++k)
        if (!is_zero(s_coords[k])) push_row(T.to_p.at(Basis::s), k, s_coords[k]);
      break;
    }
    case Basis::p: break;
  }
  for (std::size_t j = 0; j < N; ++j) r.add(T.parts[j], acc[j]);
  return r;
}

struct BasisError : std::domain_error {
  Partition offending;
  BasisError(const std::string& what, Partition p) : std::domain_error(what), offending(std::move(p)) {}
};

template <class F>
SymFunc<F> from_p(const SymFunc<F>& g, Basis target, const F& q) {
  if (g.basis != Basis::p) throw std::invalid_argument("from_p expects a power-sum expression");
  if (target == Basis::p) return g;
  SymFunc<F> r{target, g.deg, {}};
  if (g.coeffs.empty()) return r;
  const auto& T = classical(g.deg);
  std::size_t N = T.parts.size();
  auto row_times = [&](const Matrix<Rational>& M) {
    std::vector<F> d(N, F(0));
    for (const auto& [rho, c] : g.coeffs) {
      std::size_t i = T.index.at(rho);
      for (std::size_t j = 0; j < N; ++j)
        if (sgn(M[i][j]) != 0) d[j] = d[j] + c * F(M[i][j]);
    }
    return d;
  };
  std::vector<F> d;
  switch (target) {
    case Basis::m:
    case Basis::e:
    case Basis::h:
    case Basis::s: d = row_times(T.from_p.at(target)); break;
    case Basis::HL_P:
    case Basis::HL_Q: {
      std::vector<F> c = row_times(T.from_p.at(Basis::s));
      Matrix<F> K = kostka(g.deg, q);
      d.assign(N, F(0));
      for (std::size_t lam = 0; lam < N; ++lam) {
        if (is_zero(c[lam])) continue;
        for (std::size_t mu = 0; mu < N; ++mu)
          if (!is_zero(K[lam][mu])) d[mu] = d[mu] + c[lam] * K[lam][mu];
      }
      if (target == Basis::HL_Q)
        for (std::size_t mu = 0; mu < N; ++mu) {
          if (is_zero(d[mu])) continue;
          F b = b_of(T.parts[mu], q);
          if (is_zero(b))
            throw BasisError("b_lambda(q) vanishes for partition " + T.parts[mu].to_string(), T.parts[mu]);
          d[mu] = d[mu] / b;
        }
      break;
    }
    case Basis::Milne: {
      std::vector<F> c = row_times(T.from_p.at(Basis::s));
      Matrix<F> Kinv = unitriangular_inverse(kostka(g.deg, q));
      d.assign(N, F(0));
      for (std::size_t lam = 0; lam < N; ++lam)
        for (std::size_t mu = 0; mu < N; ++mu)
          if (!is_zero(Kinv[lam][mu]) && !is_zero(c[mu])) d[lam] = d[lam] + Kinv[lam][mu] * c[mu];
      break;
    }
    case Basis::p: break;
  }
  for (std::size_t j = 0; j < N; ++j) r.add(T.parts[j], d[j]);
  return r;
}

template <class F>
SymFunc<F> to_basis(const SymFunc<F>& f, Basis target, const F& q) {
  if (f.basis == target) return f;
  return from_p(to_p(f, q), target, q);
}

enum class ScalarMode { plain, q_deformed };

// Pairing in the power-sum basis; expressions of different degree pair to 0.
template <class F>
F scalar_product(const SymFunc<F>& f, const SymFunc<F>& g, ScalarMode mode, const F& q) {
  if (f.coeffs.empty() || g.coeffs.empty() || f.deg != g.deg) return F(0);
  SymFunc<F> a = to_p(f, q), b = to_p(g, q);
  F s(0);
  for (const auto& [rho, c] : a.coeffs) {
    auto it = b.coeffs.find(rho);
    if (it == b.coeffs.end()) continue;
    F w(Rational(z_lambda(rho)));
    if (mode == ScalarMode::q_deformed)
      for (int part : rho.parts) {
        F d = F(1) - power(q, part);
        if (is_zero(d)) throw DivisionByZero("q-deformed pairing is singular at this q");
        w = w / d;
      }
    s = s + c * it->second * w;
  }
  return s;
}

// Product of two power-sum expressions.
template <class F>
SymFunc<F> multiply_p(const SymFunc<F>& a, const SymFunc<F>& b) {
  SymFunc<F> r{Basis::p, a.deg + b.deg, {}};
  for (const auto& [x, c] : a.coeffs)
    for (const auto& [y, d] : b.coeffs) r.add(x.union_with(y), c * d);
  return r;
}

// One-row generators in the power-sum basis.
template <class F>
SymFunc<F> h_p(int n) {
  SymFunc<F> r{Basis::p, std::max(n, 0), {}};
  if (n < 0) return r;
  for (const auto& mu : partitions_of(n)) r.add(mu, F(Rational(1) / Rational(z_lambda(mu))));
  return r;
}

template <class F>
SymFunc<F> e_p(int n) {
  SymFunc<F> r{Basis::p, std::max(n, 0), {}};
  if (n < 0) return r;
  for (const auto& mu : partitions_of(n)) {
    Rational c = Rational(1) / Rational(z_lambda(mu));
    if ((n - mu.length()) % 2) c = -c;
    r.add(mu, F(c));
  }
  return r;
}

// p_r -> c(r) p_r applied multiplicatively.
template <class F>
SymFunc<F> plethystic_scale(const SymFunc<F>& f, const std::function<F(int)>& c) {
  SymFunc<F> r{Basis::p, f.deg, {}};
  for (const auto& [rho, v] : f.coeffs) {
    F s = v;
    for (int part : rho.parts) s = s * c(part);
    r.add(rho, s);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Raising operators

// Coefficient of R_ij^k for the pair (i, j), i < j (0-based positions).
template <class F>
using PairSeries = std::function<F(std::size_t i, std::size_t j, int k)>;
// Generator at a position with a given subscript, in the power-sum basis (empty for vanishing).
template <class F>
using GeneratorFamily = std::function<SymFunc<F>(std::size_t pos, int subscript)>;

// Enumerate all exponent assignments k_ij >= 0 consistent with nonnegative final subscripts,
// using the bound on partial sums; calls visit(final_index, coefficient).
template <class F>
void raising_enumerate(const PairSeries<F>& series, const IntSequence& index,
                       const std::function<void(const IntSequence&, const F&)>& visit) {
  std::size_t n = index.size();
  int total = 0;
  for (int x : index) total += x;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pairs.push_back({i, j});
  IntSequence cur = index;
  // slack[m] = total - sum_{i<=m} cur_i limits how much more can flow across the cut after m.
  std::function<void(std::size_t, F)> rec = [&](std::size_t pi, F coeff) {
    if (pi == pairs.size()) {
      for (int x : cur)
        if (x < 0) return;
      visit(cur, coeff);
      return;
    }
    auto [i, j] = pairs[pi];
    for (int k = 0;; ++k) {
      if (k > 0) {
        cur[i] += 1;
        cur[j] -= 1;
      }
      // Prefix sums can only grow; require each prefix <= total (suffix sums stay >= 0).
      bool ok = true;
      int prefix = 0;
      for (std::size_t m = 0; m + 1 < n; ++m) {
        prefix += cur[m];
        if (prefix > total) {
          ok = false;
          break;
        }
      }
      if (!ok) {
        cur[i] -= k;
        cur[j] += k;
        return;
      }
      F c = series(i, j, k);
      if (!is_zero(c)) rec(pi + 1, coeff * c);
      if (k > 4 * (std::abs(total) + 1) + 64) throw std::logic_error("raising enumeration did not terminate");
    }
  };
  rec(0, F(1));
}

template <class F>
SymFunc<F> raising_apply(const PairSeries<F>& series, const IntSequence& index, const GeneratorFamily<F>& gens) {
  int total = 0;
  for (int x : index) total += x;
  SymFunc<F> result{Basis::p, std::max(total, 0), {}};
  std::map<IntSequence, F> finals;
  raising_enumerate<F>(series, index, [&](const IntSequence& idx, const F& c) {
    auto it = finals.find(idx);
    if (it == finals.end())
      finals.emplace(idx, c);
    else
      it->second = it->second + c;
  });
  for (const auto& [idx, c] : finals) {
    if (is_zero(c)) continue;
    SymFunc<F> term{Basis::p, 0, {}};
    term.add(Partition(), F(1));
    for (std::size_t pos = 0; pos < idx.size() && !term.coeffs.empty(); ++pos)
      term = multiply_p(term, gens(pos, idx[pos]));
    result = result + term.scaled(c);
  }
  return result;
}

template <class F>
GeneratorFamily<F> h_family() {
  return [](std::size_t, int n) { return h_p<F>(n); };
}

// (1 - R)/(1 - q R) = 1 - (1 - q) sum_{k>=1} q^{k-1} R^k
template <class F>
PairSeries<F> milne_pair_series(const F& q) {
  return [q](std::size_t, std::size_t, int k) {
    if (k == 0) return F(1);
    return (q - F(1)) * power(q, k - 1);
  };
}

// Milne function through the three constructions.
template <class F>
SymFunc<F> milne_kostka(const Partition& lambda, const F& q) {
  return to_basis(single<F>(Basis::Milne, lambda), Basis::s, q);
}

// Plethystic route p_r -> p_r/(1 - q^r) applied to Q_lambda; result in p-basis.
template <class F>
SymFunc<F> milne_plethysm(const Partition& lambda, const F& q) {
  SymFunc<F> Q = to_p(single<F>(Basis::HL_Q, lambda), q);
  return plethystic_scale<F>(Q, [&](int r) {
    F d = F(1) - power(q, r);
    if (is_zero(d)) throw DivisionByZero("plethystic substitution is singular at this q");
    return F(1) / d;
  });
}

template <class F>
SymFunc<F> milne_raising(const IntSequence& seq, const F& q) {
  return raising_apply<F>(milne_pair_series(q), seq, h_family<F>());
}

// Reduce a general index sequence to partitions via the reordering identity; returns coefficients of Q'_mu.
template <class F>
std::map<Partition, F> milne_reorder(const IntSequence& seq, const F& q) {
  std::map<Partition, F> out;
  std::function<void(IntSequence, F)> rec = [&](IntSequence s, F c) {
    if (is_zero(c)) return;
    while (!s.empty() && s.back() == 0) s.pop_back();
    std::size_t inv = s.size();
    for (std::size_t i = 0; i + 1 < s.size(); ++i)
      if (s[i] < s[i + 1]) {
        inv = i;
        break;
      }
    if (inv == s.size()) {
      if (!s.empty() && s.back() < 0) return;
      Partition p;
      p.parts = s;
      auto it = out.find(p);
      if (it == out.end())
        out.emplace(p, c);
      else
        it->second = it->second + c;
      return;
    }
    int m = s[inv], n = s[inv + 1];
    auto with = [&](int a, int b) {
      IntSequence t = s;
      t[inv] = a;
      t[inv + 1] = b;
      return t;
    };
    if (n == m + 1) {
      rec(with(n, m), c * q);
      return;
    }
    // Q_(m,n) = q Q_(n,m) - Q_(n-1,m+1) + q Q_(m+1,n-1)
    rec(with(n, m), c * q);
    rec(with(n - 1, m + 1), F(0) - c);
    rec(with(m + 1, n - 1), c * q);
  };
  rec(seq, F(1));
  for (auto it = out.begin(); it != out.end();)
    it = is_zero(it->second) ? out.erase(it) : std::next(it);
  return out;
}

template <class F>
SymFunc<F> milne(const IntSequence& seq, const F& q) {
  int total = 0;
  for (int x : seq) total += x;
  SymFunc<F> r{Basis::s, std::max(total, 0), {}};
  for (const auto& [mu, c] : milne_reorder(seq, q)) r = r + milne_kostka(mu, q).scaled(c);
  return r;
}

// ---------------------------------------------------------------------------
// Evaluation at finitely many variables

template <class F>
F specialize_vars(const SymFunc<F>& f, const std::vector<F>& values, const F& q) {
  SymFunc<F> g = to_p(f, q);
  std::map<int, F> psum;
  auto p_r = [&](int r) {
    auto it = psum.find(r);
    if (it != psum.end()) return it->second;
    F s(0);
    for (const auto& x : values) s = s + power(x, r);
    psum.emplace(r, s);
    return s;
  };
  F total(0);
  for (const auto& [rho, c] : g.coeffs) {
    F t = c;
    for (int part : rho.parts) t = t * p_r(part);
    total = total + t;
  }
  return total;
}

// m_lambda in l(lambda) variables as a combination of Q_mu: mu -> M_{lambda mu}(q)/b_mu(q).
template <class F>
std::map<Partition, F> monomial_in_HLQ(const Partition& lambda, const F& q) {
  int n = lambda.weight();
  const auto& T = classical(n);
  Matrix<F> K = kostka(n, q);
  Matrix<F> K1 = kostka(n, F(1));
  Matrix<F> M = matmul(unitriangular_inverse(K1), K);
  std::map<Partition, F> out;
  std::size_t i = T.index.at(lambda);
  for (std::size_t j = 0; j < T.parts.size(); ++j) {
    if (is_zero(M[i][j]) || T.parts[j].length() != lambda.length()) continue;
    F b = b_of(T.parts[j], q);
    if (is_zero(b)) throw BasisError("b_mu(q) vanishes for partition " + T.parts[j].to_string(), T.parts[j]);
    out.emplace(T.parts[j], M[i][j] / b);
  }
  return out;
}

// M(q) = K(1)^{-1} K(q)
template <class F>
Matrix<F> m_matrix(int n, const F& q) {
  return matmul(unitriangular_inverse(kostka(n, F(1))), kostka(n, q));
}

// Render an expression as text: "basis: c*[partition] + ...".
template <class F>
std::string to_string(const SymFunc<F>& f) {
  using dva::to_string;
  if (f.coeffs.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [k, v] : f.coeffs) {
    if (!first) s += " + ";
    first = false;
    s += "(" + to_string(v) + ")*" + basis_name(f.basis) + "[" + k.to_string() + "]";
  }
  return s;
}

}  // namespace dva::sym
