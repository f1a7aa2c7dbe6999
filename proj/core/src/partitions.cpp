#include "dva/partitions.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace dva {

Partition::Partition(std::initializer_list<int> p) : Partition(std::vector<int>(p)) {}

Partition::Partition(std::vector<int> p) {
  for (int x : p) {
    if (x < 0) throw std::invalid_argument("partition parts must be nonnegative");
    if (x > 0) parts.push_back(x);
  }
  std::sort(parts.begin(), parts.end(), std::greater<int>());
}

int Partition::weight() const {
  int s = 0;
  for (int x : parts) s += x;
  return s;
}

int Partition::multiplicity(int i) const {
  return static_cast<int>(std::count(parts.begin(), parts.end(), i));
}

std::map<int, int> Partition::multiplicities() const {
  std::map<int, int> m;
  for (int x : parts) ++m[x];
  return m;
}

Partition Partition::conjugate() const {
  Partition c;
  for (int j = 1; j <= largest(); ++j) {
    int k = 0;
    for (int x : parts)
      if (x >= j) ++k;
    c.parts.push_back(k);
  }
  return c;
}

Partition Partition::without_first() const {
  Partition r;
  if (!parts.empty()) r.parts.assign(parts.begin() + 1, parts.end());
  return r;
}

Partition Partition::with_part(int k) const {
  Partition r = *this;
  if (k <= 0) return r;
  auto it = std::find_if(r.parts.begin(), r.parts.end(), [k](int x) { return x < k; });
  r.parts.insert(it, k);
  return r;
}

Partition Partition::minus_part(int k) const {
  Partition r = *this;
  auto it = std::find(r.parts.begin(), r.parts.end(), k);
  if (it == r.parts.end()) throw std::invalid_argument("part not present");
  r.parts.erase(it);
  return r;
}

Partition Partition::union_with(const Partition& o) const {
  std::vector<int> v = parts;
  v.insert(v.end(), o.parts.begin(), o.parts.end());
  return Partition(std::move(v));
}

std::string Partition::to_string() const {
  if (parts.empty()) return "-";
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(parts[i]);
  }
  return s;
}

Partition Partition::parse(const std::string& s) {
  if (s == "-" || s.empty()) return Partition();
  std::vector<int> v;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    int x = 0;
    try {
      x = std::stoi(tok, &used);
    } catch (const std::exception&) {
      throw ParseError("bad partition '" + s + "'");
    }
    if (used != tok.size() || x <= 0) throw ParseError("bad partition '" + s + "'");
    v.push_back(x);
  }
  if (!std::is_sorted(v.begin(), v.end(), std::greater<int>()))
    throw ParseError("partition parts must be weakly decreasing: '" + s + "'");
  Partition r;
  r.parts = std::move(v);
  return r;
}

bool Partition::operator<(const Partition& o) const {
  int a = weight(), b = o.weight();
  if (a != b) return a < b;
  // Reverse lexicographic: (n) comes first.
  return std::lexicographical_compare(o.parts.begin(), o.parts.end(), parts.begin(), parts.end());
}

std::vector<Partition> partitions_of(int n, const PartitionConstraints& c) {
  std::vector<Partition> out;
  if (n < 0) return out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int rest, int maxpart) {
    if (rest == 0) {
      Partition p;
      p.parts = cur;
      out.push_back(std::move(p));
      return;
    }
    if (c.max_length && static_cast<int>(cur.size()) >= *c.max_length) return;
    for (int k = std::min(rest, maxpart); k >= 1; --k) {
      if (c.exclude_parts_divisible_by && k % *c.exclude_parts_divisible_by == 0) continue;
      if (c.max_multiplicity) {
        int m = 0;
        for (auto it = cur.rbegin(); it != cur.rend() && *it == k; ++it) ++m;
        if (m >= *c.max_multiplicity) continue;
      }
      cur.push_back(k);
      rec(rest - k, k);
      cur.pop_back();
    }
  };
  rec(n, n);
  return out;
}

long long partition_count(int n) {
  if (n < 0) return 0;
  std::vector<long long> a(static_cast<std::size_t>(n) + 1, 0);
  a[0] = 1;
  for (int k = 1; k <= n; ++k)
    for (int j = k; j <= n; ++j) a[static_cast<std::size_t>(j)] += a[static_cast<std::size_t>(j - k)];
  return a[static_cast<std::size_t>(n)];
}

bool dominates(const Partition& lambda, const Partition& mu) {
  if (lambda.weight() != mu.weight()) return false;
  int sa = 0, sb = 0;
  std::size_t L = std::max(lambda.parts.size(), mu.parts.size());
  for (std::size_t i = 0; i < L; ++i) {
    sa += i < lambda.parts.size() ? lambda.parts[i] : 0;
    sb += i < mu.parts.size() ? mu.parts[i] : 0;
    if (sa < sb) return false;
  }
  return true;
}

Integer z_lambda(const Partition& lambda) {
  Integer z = 1;
  for (const auto& [i, m] : lambda.multiplicities()) {
    Integer f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(m));
    Integer pw;
    mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(i), static_cast<unsigned long>(m));
    z *= f * pw;
  }
  return z;
}

long n_stat(const Partition& lambda) {
  long s = 0;
  for (std::size_t i = 0; i < lambda.parts.size(); ++i) s += static_cast<long>(i) * lambda.parts[i];
  return s;
}

long ht_op(const Partition& lambda) {
  long l = lambda.length();
  return n_stat(lambda) - l * (l - 1) / 2;
}

Integer stat(StatKind kind, const Partition& lambda) {
  switch (kind) {
    case StatKind::z: return z_lambda(lambda);
    case StatKind::n_stat: return Integer(n_stat(lambda));
    case StatKind::ht_op: return Integer(ht_op(lambda));
  }
  throw std::invalid_argument("unknown statistic");
}

std::vector<int> multiplicity_vector(const Partition& lambda, std::optional<int> n_slots) {
  std::vector<int> m;
  if (n_slots) {
    if (*n_slots < lambda.length()) throw std::invalid_argument("more parts than slots");
    m.push_back(*n_slots - lambda.length());
  }
  for (int i = 1; i <= lambda.largest(); ++i) m.push_back(lambda.multiplicity(i));
  return m;
}

namespace {

using IntSeries = std::vector<Integer>;

IntSeries mul(const IntSeries& a, const IntSeries& b) {
  IntSeries r(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; i + j < r.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

// 1 + x^n + ... + x^{n k}
IntSeries geometric(int n, int k, int L) {
  IntSeries r(static_cast<std::size_t>(L) + 1, 0);
  for (int j = 0; j <= k && n * j <= L; ++j) r[static_cast<std::size_t>(n * j)] += 1;
  return r;
}

// 1/(1 - x^n)
IntSeries inverse_one_minus(int n, int L) { return geometric(n, L / n + 1, L); }

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

std::vector<Integer> char_series(CharKind kind, const CharParams& pr, int L) {
  require(L >= 0, "order must be nonnegative");
  IntSeries r(static_cast<std::size_t>(L) + 1, 0);
  r[0] = 1;
  switch (kind) {
    case CharKind::verma:
      for (int n = 1; n <= L; ++n) r = mul(r, inverse_one_minus(n, L));
      return r;
    case CharKind::reduced_N:
      require(pr.N >= 2, "reduced_N needs N >= 2");
      for (int n = 1; n <= L; ++n) r = mul(r, inverse_one_minus(n, L));
      for (int n = pr.N; n <= L; n += pr.N) {
        IntSeries f(static_cast<std::size_t>(L) + 1, 0);
        f[0] = 1;
        f[static_cast<std::size_t>(n)] = -1;
        r = mul(r, f);
      }
      return r;
    case CharKind::q2_r:
      require(pr.r >= 1, "q2_r needs r >= 1");
      for (int n = 1; n <= L; ++n)
        if (n != pr.r) r = mul(r, geometric(n, 1, L));
      return r;
    case CharKind::qN_rs:
      require(pr.N >= 2 && pr.r >= 1 && pr.s >= 1 && pr.s <= pr.N - 1, "qN_rs needs N >= 2, r >= 1, 1 <= s <= N-1");
      r = geometric(pr.r, pr.N - 1 - pr.s, L);
      for (int n = 1; n <= L; ++n)
        if (n != pr.r) r = mul(r, geometric(n, pr.N - 1, L));
      return r;
    case CharKind::fermionic_N:
      require(pr.N >= 2, "fermionic_N needs N >= 2");
      for (int n = 1; n <= L; ++n) r = mul(r, geometric(n, pr.N - 1, L));
      return r;
    case CharKind::witten_q_minus1:
      for (int n = 1; n <= L; ++n) {
        IntSeries f(static_cast<std::size_t>(L) + 1, 0);
        f[0] = 1;
        f[static_cast<std::size_t>(n)] = -1;
        r = mul(r, f);
      }
      return r;
    case CharKind::M_doubleprime: {
      require(pr.M >= 2 && pr.m0 >= 0 && pr.m0 < pr.M, "M_doubleprime needs M >= 2, 0 <= m0 < M");
      for (int n = 1; n <= L; ++n) r = mul(r, geometric(n, 1, L));
      bool single = pr.m0 == 0 || 2 * pr.m0 == pr.M;
      std::vector<int> removed;
      for (int n = 1; pr.m0 + n * pr.M <= L; ++n) removed.push_back(pr.m0 + n * pr.M);
      if (!single)
        for (int n = 1; pr.M - pr.m0 + n * pr.M <= L; ++n) removed.push_back(pr.M - pr.m0 + n * pr.M);
      for (int k : removed) {
        // divide by 1 + x^k
        IntSeries inv(static_cast<std::size_t>(L) + 1, 0);
        for (int j = 0; j * k <= L; ++j) inv[static_cast<std::size_t>(j * k)] = (j % 2) ? -1 : 1;
        r = mul(r, inv);
      }
      return r;
    }
  }
  throw std::invalid_argument("unknown character kind");
}

std::vector<Integer> char_series_bruteforce(CharKind kind, const CharParams& pr, int L) {
  require(L >= 0, "order must be nonnegative");
  std::vector<Integer> out;
  for (int n = 0; n <= L; ++n) {
    Integer count = 0;
    for (const auto& lam : partitions_of(n)) {
      auto mult = lam.multiplicities();
      auto max_mult = [&](int cap) {
        for (const auto& [i, m] : mult)
          if (m > cap) return false;
        return true;
      };
      switch (kind) {
        case CharKind::verma: count += 1; break;
        case CharKind::reduced_N: {
          bool ok = true;
          for (int x : lam.parts) ok = ok && (x % pr.N != 0);
          if (ok) count += 1;
          break;
        }
        case CharKind::q2_r:
          if (max_mult(1) && lam.multiplicity(pr.r) == 0) count += 1;
          break;
        case CharKind::qN_rs:
          if (max_mult(pr.N - 1) && lam.multiplicity(pr.r) <= pr.N - 1 - pr.s) count += 1;
          break;
        case CharKind::fermionic_N:
          if (max_mult(pr.N - 1)) count += 1;
          break;
        case CharKind::witten_q_minus1:
          if (max_mult(1)) count += (lam.length() % 2) ? -1 : 1;
          break;
        case CharKind::M_doubleprime: {
          if (!max_mult(1)) break;
          bool single = pr.m0 == 0 || 2 * pr.m0 == pr.M;
          bool ok = true;
          for (int x : lam.parts) {
            if (x - pr.m0 >= pr.M && (x - pr.m0) % pr.M == 0) ok = false;
            if (!single && x - (pr.M - pr.m0) >= pr.M && (x - (pr.M - pr.m0)) % pr.M == 0) ok = false;
          }
          if (ok) count += 1;
          break;
        }
      }
    }
    out.push_back(count);
  }
  return out;
}

}  // namespace dva
