#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dva/exactfield.hpp"

namespace dva {

// Weakly decreasing list of positive parts.  operator< is the basis order used
// everywhere: smaller weight first, then reverse-lexicographic (larger first).
struct Partition {
  std::vector<int> parts;

  Partition() = default;
  Partition(std::initializer_list<int> p);
  explicit Partition(std::vector<int> p);  // sorts and drops zero parts

  int weight() const;
  int length() const { return static_cast<int>(parts.size()); }
  bool empty() const { return parts.empty(); }
  int largest() const { return parts.empty() ? 0 : parts.front(); }
  int multiplicity(int i) const;
  std::map<int, int> multiplicities() const;
  Partition conjugate() const;
  Partition without_first() const;
  Partition with_part(int k) const;  // add a part, keeping order
  Partition minus_part(int k) const; // remove one copy of k (must exist)
  Partition union_with(const Partition& o) const;

  std::string to_string() const;
  static Partition parse(const std::string& s);

  bool operator==(const Partition& o) const { return parts == o.parts; }
  bool operator!=(const Partition& o) const { return parts != o.parts; }
  bool operator<(const Partition& o) const;
};

// Arbitrary integer sequence (generalized indices).
using IntSequence = std::vector<int>;

struct PartitionConstraints {
  std::optional<int> max_multiplicity;
  std::optional<int> exclude_parts_divisible_by;
  std::optional<int> max_length;
};

// All partitions of n in reverse-lexicographic order.
std::vector<Partition> partitions_of(int n, const PartitionConstraints& c = {});
long long partition_count(int n);

bool dominates(const Partition& lambda, const Partition& mu);

enum class StatKind { z, n_stat, ht_op };
Integer z_lambda(const Partition& lambda);
long n_stat(const Partition& lambda);
long ht_op(const Partition& lambda);
Integer stat(StatKind kind, const Partition& lambda);

// (x;q)_M
template <class F>
F q_pochhammer(const F& x, const F& q, int M) {
  F r(1), qk(1);
  for (int k = 1; k <= M; ++k) {
    r = r * (F(1) - x * qk);
    qk = qk * q;
  }
  return r;
}

// b_lambda(q) = prod_i (q;q)_{m_i}
template <class F>
F b_poly(const Partition& lambda, const F& q) {
  F r(1);
  for (const auto& [part, m] : lambda.multiplicities()) r = r * q_pochhammer(q, q, m);
  return r;
}

// Gaussian binomial via the q-Pascal rule (no division, valid at roots of unity).
template <class F>
F q_binomial(int n, int k, const F& q) {
  if (k < 0 || k > n) return F(0);
  std::vector<F> row(static_cast<std::size_t>(k) + 1, F(0));
  row[0] = F(1);
  for (int m = 1; m <= n; ++m) {
    for (int j = std::min(m, k); j >= 1; --j)
      row[static_cast<std::size_t>(j)] = row[static_cast<std::size_t>(j - 1)] + power(q, j) * row[static_cast<std::size_t>(j)];
  }
  return row[static_cast<std::size_t>(k)];
}

// (q)_N / prod (q)_{m_i}; the multiplicities must sum to N.
template <class F>
F q_multinomial(int N, const std::vector<int>& mults, const F& q) {
  int s = 0;
  for (int m : mults) {
    if (m < 0) throw std::invalid_argument("negative multiplicity");
    s += m;
  }
  if (s != N) throw std::invalid_argument("multiplicities do not sum to N");
  F r(1);
  int acc = 0;
  for (int m : mults) {
    acc += m;
    r = r * q_binomial(acc, m, q);
  }
  return r;
}

// Multiplicity vector (m_1, m_2, ...) of a partition, optionally with m_0 = N - l(lambda) first.
std::vector<int> multiplicity_vector(const Partition& lambda, std::optional<int> n_slots = std::nullopt);

enum class CharKind { verma, reduced_N, q2_r, qN_rs, fermionic_N, witten_q_minus1, M_doubleprime };

struct CharParams {
  int N = 0;
  int r = 0;
  int s = 0;
  int M = 0;
  int m0 = 0;
};

// Integer coefficients to order L; witten_q_minus1 gives the coefficient of h.
std::vector<Integer> char_series(CharKind kind, const CharParams& params, int L);
// Same counts by direct enumeration of the constrained partitions.
std::vector<Integer> char_series_bruteforce(CharKind kind, const CharParams& params, int L);

}  // namespace dva
