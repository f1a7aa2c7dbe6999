#include "dva/symfunc.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <shared_mutex>
#include <sstream>

namespace dva::sym {

namespace fs = std::filesystem;

std::string basis_name(Basis b) {
  switch (b) {
    case Basis::m: return "m";
    case Basis::e: return "e";
    case Basis::h: return "h";
    case Basis::s: return "s";
    case Basis::p: return "p";
    case Basis::HL_P: return "P";
    case Basis::HL_Q: return "Q";
    case Basis::Milne: return "Qp";
  }
  return "?";
}

Basis parse_basis(const std::string& s) {
  for (Basis b : {Basis::m, Basis::e, Basis::h, Basis::s, Basis::p, Basis::HL_P, Basis::HL_Q, Basis::Milne})
    if (basis_name(b) == s) return b;
  if (s == "HL_P") return Basis::HL_P;
  if (s == "HL_Q") return Basis::HL_Q;
  if (s == "milne" || s == "Milne") return Basis::Milne;
  throw ParseError("unknown basis '" + s + "'");
}

bool is_q_basis(Basis b) { return b == Basis::HL_P || b == Basis::HL_Q || b == Basis::Milne; }

namespace {

constexpr int kCacheVersion = 1;

std::shared_mutex g_mu;
std::map<int, std::shared_ptr<const ClassicalTables>> g_classical;
std::map<int, std::shared_ptr<const Matrix<RatFunc>>> g_kostka;
std::optional<std::string> g_cache_override;

using RMat = Matrix<Rational>;

std::map<Partition, Rational> p_product(const std::map<Partition, Rational>& a, const std::map<Partition, Rational>& b) {
  std::map<Partition, Rational> r;
  for (const auto& [x, c] : a)
    for (const auto& [y, d] : b) {
      Rational v = c * d;
      auto key = x.union_with(y);
      auto it = r.find(key);
      if (it == r.end())
        r.emplace(key, v);
      else
        it->second += v;
    }
  for (auto it = r.begin(); it != r.end();) it = sgn(it->second) == 0 ? r.erase(it) : std::next(it);
  return r;
}

std::map<Partition, Rational> one_row(int n, bool elementary) {
  std::map<Partition, Rational> r;
  if (n < 0) return r;
  for (const auto& mu : partitions_of(n)) {
    Rational c = Rational(1) / Rational(z_lambda(mu));
    if (elementary && (n - mu.length()) % 2) c = -c;
    r.emplace(mu, c);
  }
  return r;
}

std::map<Partition, Rational> one_row_product(const std::vector<int>& rows, bool elementary) {
  std::map<Partition, Rational> r{{Partition(), Rational(1)}};
  for (int k : rows) r = p_product(r, one_row(k, elementary));
  return r;
}

// Jacobi-Trudi determinant over the smaller of the two forms.
std::map<Partition, Rational> schur_p(const Partition& lambda) {
  Partition conj = lambda.conjugate();
  bool use_e = conj.length() < lambda.length();
  const Partition& shape = use_e ? conj : lambda;
  int l = shape.length();
  std::vector<int> perm(static_cast<std::size_t>(l));
  for (int i = 0; i < l; ++i) perm[static_cast<std::size_t>(i)] = i;
  std::map<Partition, Rational> total;
  do {
    std::vector<int> rows;
    bool zero = false;
    for (int i = 0; i < l; ++i) {
      int k = shape.parts[static_cast<std::size_t>(i)] - i + perm[static_cast<std::size_t>(i)];
      if (k < 0) {
        zero = true;
        break;
      }
      rows.push_back(k);
    }
    if (zero) continue;
    int inversions = 0;
    for (int i = 0; i < l; ++i)
      for (int j = i + 1; j < l; ++j)
        if (perm[static_cast<std::size_t>(i)] > perm[static_cast<std::size_t>(j)]) ++inversions;
    for (const auto& [k, v] : one_row_product(rows, use_e)) {
      Rational c = inversions % 2 ? Rational(-v) : v;
      auto it = total.find(k);
      if (it == total.end())
        total.emplace(k, c);
      else
        it->second += c;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  for (auto it = total.begin(); it != total.end();) it = sgn(it->second) == 0 ? total.erase(it) : std::next(it);
  return total;
}

// Number of maps from the parts of mu onto the rows of lambda with row sums lambda_i.
long count_fillings(const std::vector<int>& mu, std::size_t at, std::vector<int>& room) {
  if (at == mu.size()) {
    for (int r : room)
      if (r) return 0;
    return 1;
  }
  long total = 0;
  for (auto& r : room) {
    if (r < mu[at]) continue;
    r -= mu[at];
    total += count_fillings(mu, at + 1, room);
    r += mu[at];
  }
  return total;
}

RMat rows_in_p(const std::vector<Partition>& parts, const std::map<Partition, std::size_t>& index,
               const std::function<std::map<Partition, Rational>(const Partition&)>& expand) {
  RMat M = zero_matrix<Rational>(parts.size(), parts.size());
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (const auto& [k, v] : expand(parts[i])) M[i][index.at(k)] = v;
  return M;
}

std::optional<fs::path> cache_path(const std::string& name) {
  std::string dir = cache_dir();
  if (dir.empty()) return std::nullopt;
  return fs::path(dir) / name;
}

// Cache files: header, degree, partition list, then one canonical string per entry in row-major order.
std::optional<std::vector<std::string>> read_cache(const std::string& name, const std::string& kind, int n,
                                                   const std::vector<Partition>& parts) {
  auto path = cache_path(name);
  if (!path) return std::nullopt;
  std::ifstream in(*path);
  if (!in) return std::nullopt;
  std::string line;
  auto next = [&]() -> bool { return static_cast<bool>(std::getline(in, line)); };
  if (!next() || line != "dva-cache " + std::to_string(kCacheVersion)) return std::nullopt;
  if (!next() || line != "kind " + kind) return std::nullopt;
  if (!next() || line != "degree " + std::to_string(n)) return std::nullopt;
  if (!next() || line != "partitions " + std::to_string(parts.size())) return std::nullopt;
  for (const auto& p : parts)
    if (!next() || line != p.to_string()) return std::nullopt;
  if (!next() || line != "entries " + std::to_string(parts.size() * parts.size())) return std::nullopt;
  std::vector<std::string> entries;
  while (entries.size() < parts.size() * parts.size() && next()) entries.push_back(line);
  if (entries.size() != parts.size() * parts.size()) return std::nullopt;
  return entries;
}

void write_cache(const std::string& name, const std::string& kind, int n, const std::vector<Partition>& parts,
                 const std::vector<std::string>& entries) {
  auto path = cache_path(name);
  if (!path) return;
  std::error_code ec;
  fs::create_directories(path->parent_path(), ec);
  if (ec) return;
  std::ostringstream os;
  os << "dva-cache " << kCacheVersion << "\nkind " << kind << "\ndegree " << n << "\npartitions " << parts.size() << "\n";
  for (const auto& p : parts) os << p.to_string() << "\n";
  os << "entries " << entries.size() << "\n";
  for (const auto& e : entries) os << e << "\n";
  // Publish atomically: write a private temporary and rename over the target.
  fs::path tmp = *path;
  tmp += ".tmp" + std::to_string(std::hash<std::string>{}(os.str()) % 1000003);
  {
    std::ofstream out(tmp);
    if (!out) return;
    out << os.str();
  }
  fs::rename(tmp, *path, ec);
  if (ec) fs::remove(tmp, ec);
}

template <class T>
std::vector<std::string> flatten(const Matrix<T>& M) {
  std::vector<std::string> out;
  for (const auto& row : M)
    for (const auto& x : row) out.push_back(dva::to_string(x));
  return out;
}

template <class T>
std::optional<Matrix<T>> unflatten(const std::vector<std::string>& e, std::size_t n) {
  Matrix<T> M = zero_matrix<T>(n, n);
  try {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if constexpr (std::is_same_v<T, Rational>) {
          Rational r(e[i * n + j]);
          r.canonicalize();
          M[i][j] = r;
        } else {
          M[i][j] = RatFunc::parse(e[i * n + j]);
        }
      }
  } catch (const std::exception&) {
    return std::nullopt;
  }
  return M;
}

template <class T>
Matrix<T> cached_matrix(const std::string& kind, int n, const std::vector<Partition>& parts,
                        const std::function<Matrix<T>()>& compute) {
  std::string name = kind + "_n" + std::to_string(n) + ".txt";
  if (auto e = read_cache(name, kind, n, parts))
    if (auto M = unflatten<T>(*e, parts.size())) return *M;
  Matrix<T> M = compute();
  write_cache(name, kind, n, parts, flatten(M));
  return M;
}

std::shared_ptr<const ClassicalTables> build_classical(int n) {
  auto T = std::make_shared<ClassicalTables>();
  T->n = n;
  T->parts = partitions_of(n);
  for (std::size_t i = 0; i < T->parts.size(); ++i) T->index[T->parts[i]] = i;
  const auto& parts = T->parts;
  const auto& index = T->index;
  T->to_p[Basis::h] = cached_matrix<Rational>("h_to_p", n, parts, [&] {
    return rows_in_p(parts, index, [](const Partition& l) { return one_row_product(l.parts, false); });
  });
  T->to_p[Basis::e] = cached_matrix<Rational>("e_to_p", n, parts, [&] {
    return rows_in_p(parts, index, [](const Partition& l) { return one_row_product(l.parts, true); });
  });
  T->to_p[Basis::s] = cached_matrix<Rational>("s_to_p", n, parts, [&] {
    return rows_in_p(parts, index, [](const Partition& l) { return schur_p(l); });
  });
  T->to_p[Basis::m] = cached_matrix<Rational>("m_to_p", n, parts, [&] {
    // p_mu = sum_lambda R_{mu lambda} m_lambda, then invert.
    RMat R = zero_matrix<Rational>(parts.size(), parts.size());
    for (std::size_t i = 0; i < parts.size(); ++i)
      for (std::size_t j = 0; j < parts.size(); ++j) {
        std::vector<int> room = parts[j].parts;
        R[i][j] = count_fillings(parts[i].parts, 0, room);
      }
    return inverse(R);
  });
  for (Basis b : {Basis::m, Basis::e, Basis::h, Basis::s}) T->from_p[b] = inverse(T->to_p[b]);
  return T;
}

// Gram-Schmidt of the Schur basis under <p_l, p_m>_q = delta z_l / prod(1 - q^{l_i}).
Matrix<RatFunc> gram_schmidt_kostka(int n, const std::vector<std::size_t>& order) {
  const auto& T = classical(n);
  std::size_t N = T.parts.size();
  RatFunc q = RatFunc::variable(VQ);
  std::vector<RatFunc> w(N);
  for (std::size_t r = 0; r < N; ++r) {
    RatFunc x(Rational(z_lambda(T.parts[r])));
    for (int part : T.parts[r].parts) x = x / (1 - power(q, part));
    w[r] = x;
  }
  const auto& S = T.to_p.at(Basis::s);
  auto inner = [&](const std::vector<RatFunc>& a, const std::vector<RatFunc>& b) {
    RatFunc s;
    for (std::size_t r = 0; r < N; ++r)
      if (!a[r].is_zero() && !b[r].is_zero()) s = s + a[r] * b[r] * w[r];
    return s;
  };
  Matrix<RatFunc> K = zero_matrix<RatFunc>(N, N);
  std::vector<std::vector<RatFunc>> P(N);
  std::vector<RatFunc> norm(N);
  std::vector<std::size_t> done;
  for (std::size_t lam : order) {
    std::vector<RatFunc> s_row(N);
    for (std::size_t r = 0; r < N; ++r) s_row[r] = RatFunc(S[lam][r]);
    std::vector<RatFunc> v = s_row;
    for (std::size_t mu : done) {
      RatFunc k = inner(s_row, P[mu]) / norm[mu];
      if (k.is_zero()) continue;
      K[lam][mu] = k;
      for (std::size_t r = 0; r < N; ++r)
        if (!P[mu][r].is_zero()) v[r] = v[r] - k * P[mu][r];
    }
    K[lam][lam] = RatFunc(1);
    P[lam] = v;
    norm[lam] = inner(v, v);
    done.push_back(lam);
  }
  return K;
}

}  // namespace

void set_cache_dir(std::optional<std::string> dir) {
  std::unique_lock lock(g_mu);
  g_cache_override = std::move(dir);
}

std::string cache_dir() {
  {
    std::shared_lock lock(g_mu);
    if (g_cache_override) return *g_cache_override;
  }
  if (const char* env = std::getenv("DVA_CACHE_DIR")) return env;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) return std::string(xdg) + "/dva";
  if (const char* home = std::getenv("HOME"); home && *home) return std::string(home) + "/.cache/dva";
  return "";
}

void clear_memory_cache() {
  std::unique_lock lock(g_mu);
  g_classical.clear();
  g_kostka.clear();
}

const ClassicalTables& classical(int n) {
  if (n < 0) throw std::invalid_argument("negative degree");
  {
    std::shared_lock lock(g_mu);
    auto it = g_classical.find(n);
    if (it != g_classical.end()) return *it->second;
  }
  auto built = build_classical(n);
  std::unique_lock lock(g_mu);
  return *g_classical.emplace(n, built).first->second;
}

const Matrix<RatFunc>& kostka_q(int n) {
  {
    std::shared_lock lock(g_mu);
    auto it = g_kostka.find(n);
    if (it != g_kostka.end()) return *it->second;
  }
  const auto& T = classical(n);
  auto K = std::make_shared<const Matrix<RatFunc>>(cached_matrix<RatFunc>("kostka_q", n, T.parts, [&] {
    std::vector<std::size_t> order;
    for (std::size_t i = T.parts.size(); i-- > 0;) order.push_back(i);
    return gram_schmidt_kostka(n, order);
  }));
  std::unique_lock lock(g_mu);
  return *g_kostka.emplace(n, K).first->second;
}

Matrix<RatFunc> kostka_q_alternate_order(int n) {
  const auto& T = classical(n);
  std::vector<std::size_t> order(T.parts.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  // n(lambda) descending is another linear extension of reverse dominance.
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    long na = n_stat(T.parts[a]), nb = n_stat(T.parts[b]);
    if (na != nb) return na > nb;
    return a < b;
  });
  return gram_schmidt_kostka(n, order);
}

Matrix<Rational> kostka_numbers(int n) {
  // s = K(1) m, so K(1) = S_to_p * (m_to_p)^{-1}.
  const auto& T = classical(n);
  return matmul(T.to_p.at(Basis::s), T.from_p.at(Basis::m));
}

}  // namespace dva::sym
