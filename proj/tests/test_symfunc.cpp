#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "dva/random.hpp"
#include "dva/symfunc.hpp"

using namespace dva;
using namespace dva::sym;

namespace {

const RatFunc q = RatFunc::variable(VQ);

SymFunc<RatFunc> one(Basis b, const Partition& l) { return single<RatFunc>(b, l); }

SymFunc<RatFunc> in_p(Basis b, const Partition& l) { return to_p(one(b, l), q); }

const std::vector<Basis> kAll = {Basis::m, Basis::e, Basis::h, Basis::s, Basis::p, Basis::HL_P, Basis::HL_Q, Basis::Milne};

// Q_alpha(x_1..x_n; q) from the symmetrization formula, any integer sequence alpha.
RatFunc q_symmetrized(const IntSequence& alpha, const std::vector<Rational>& x) {
  std::size_t n = alpha.size();
  std::vector<std::size_t> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = i;
  RatFunc total;
  do {
    RatFunc term(1);
    for (std::size_t i = 0; i < n; ++i) term = term * RatFunc(power(x[w[i]], alpha[i]));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        term = term * (RatFunc(x[w[i]]) - q * RatFunc(x[w[j]])) / RatFunc(Rational(x[w[i]] - x[w[j]]));
    total = total + term;
  } while (std::next_permutation(w.begin(), w.end()));
  return total * power(1 - q, static_cast<long>(n));
}

}  // namespace

TEST_CASE("classical basis changes") {
  CHECK(to_basis(one(Basis::h, {2}), Basis::s, q) == one(Basis::s, {2}));
  CHECK(to_basis(one(Basis::p, {2}), Basis::m, q) == one(Basis::m, {2}));
  CHECK(to_basis(one(Basis::s, {1, 1}), Basis::h, q) == one(Basis::h, {1, 1}) - one(Basis::h, {2}));
  CHECK(to_basis(one(Basis::e, {2}), Basis::s, q) == one(Basis::s, {1, 1}));
  // p_mu in m-basis has nonnegative integer coefficients
  for (const auto& mu : partitions_of(5)) {
    auto m = to_basis(one(Basis::p, mu), Basis::m, q);
    for (const auto& [k, v] : m.coeffs) CHECK(v.is_constant());
  }
}

TEST_CASE("basis round trips") {
  for (int n = 0; n <= 6; ++n)
    for (const auto& lam : partitions_of(n))
      for (Basis a : kAll)
        for (Basis b : kAll) {
          if (a == b) continue;
          auto f = one(a, lam);
          CHECK(to_basis(to_basis(f, b, q), a, q) == f);
        }
}

TEST_CASE("scalar products") {
  CHECK(scalar_product(one(Basis::p, {2}), one(Basis::p, {2}), ScalarMode::plain, q) == RatFunc(2));
  CHECK(scalar_product(one(Basis::p, {2}), one(Basis::p, {1, 1}), ScalarMode::plain, q).is_zero());
  CHECK(scalar_product(one(Basis::p, {1}), one(Basis::p, {1}), ScalarMode::q_deformed, q) == 1 / (1 - q));
  CHECK(scalar_product(one(Basis::p, {2}), one(Basis::p, {1}), ScalarMode::plain, q).is_zero());
  for (int n = 1; n <= 5; ++n) {
    auto parts = partitions_of(n);
    for (const auto& l : parts)
      for (const auto& m : parts) {
        RatFunc d = l == m ? RatFunc(1) : RatFunc();
        CHECK(scalar_product(one(Basis::HL_P, l), one(Basis::HL_Q, m), ScalarMode::q_deformed, q) == d);
        CHECK(scalar_product(one(Basis::HL_P, l), one(Basis::Milne, m), ScalarMode::plain, q) == d);
        CHECK(scalar_product(one(Basis::s, l), one(Basis::s, m), ScalarMode::plain, q) == d);
      }
  }
}

TEST_CASE("Kostka-Foulkes matrices") {
  const auto& K2 = kostka_q(2);
  REQUIRE(K2.size() == 2);
  CHECK(K2[0][0] == RatFunc(1));
  CHECK(K2[0][1] == q);
  CHECK(K2[1][0].is_zero());
  CHECK(K2[1][1] == RatFunc(1));
  CHECK(kostka_q(1).size() == 1);
  for (int n = 1; n <= 6; ++n) {
    const auto& K = kostka_q(n);
    auto parts = partitions_of(n);
    auto K1 = kostka_numbers(n);
    for (std::size_t i = 0; i < parts.size(); ++i)
      for (std::size_t j = 0; j < parts.size(); ++j) {
        const RatFunc& k = K[i][j];
        REQUIRE(k.den() == MultiPoly(1));
        for (const auto& t : k.num().terms()) CHECK(sgn(t.coeff) > 0);
        if (i == j) CHECK(k == RatFunc(1));
        if (!k.is_zero()) CHECK(dominates(parts[i], parts[j]));
        Assignment<Rational> at1;
        at1[VQ] = 1;
        CHECK(k.eval(at1) == K1[i][j]);
      }
  }
  for (int n = 1; n <= 5; ++n) CHECK(kostka_q_alternate_order(n) == kostka_q(n));
}

TEST_CASE("Hall-Littlewood endpoints") {
  for (int n = 1; n <= 6; ++n)
    for (const auto& lam : partitions_of(n)) {
      auto P0 = to_p(single<Rational>(Basis::HL_P, lam), Rational(0));
      auto S = to_p(single<Rational>(Basis::s, lam), Rational(0));
      CHECK(P0 == S);
      auto P1 = to_p(single<Rational>(Basis::HL_P, lam), Rational(1));
      auto M = to_p(single<Rational>(Basis::m, lam), Rational(1));
      CHECK(P1 == M);
    }
}

TEST_CASE("Cauchy identity") {
  Sampler s(17);
  for (int n = 1; n <= 4; ++n) {
    std::vector<RatFunc> y = {RatFunc(s.rational()), RatFunc(s.rational()), RatFunc(s.rational())};
    SymFunc<RatFunc> lhs{Basis::p, n, {}};
    for (const auto& lam : partitions_of(n)) {
      RatFunc py = specialize_vars(one(Basis::HL_P, lam), y, q);
      lhs = lhs + in_p(Basis::Milne, lam).scaled(py);
    }
    SymFunc<RatFunc> rhs{Basis::p, n, {}};
    for (const auto& rho : partitions_of(n))
      rhs.add(rho, specialize_vars(one(Basis::p, rho), y, q) / RatFunc(Rational(z_lambda(rho))));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("Milne functions") {
  CHECK(milne({1}, q) == one(Basis::s, {1}));
  CHECK(milne({1, 1}, q) == one(Basis::s, {1, 1}) + one(Basis::s, {2}).scaled(q));
  auto at_minus1 = to_p(milne<Rational>({1, 1}, Rational(-1)), Rational(-1));
  CHECK(at_minus1 == single<Rational>(Basis::p, {2}, Rational(-1)));
  for (int n = 1; n <= 5; ++n)
    for (const auto& lam : partitions_of(n)) {
      auto k = to_p(milne_kostka(lam, q), q);
      CHECK(k == milne_plethysm(lam, q));
      CHECK(k == milne_raising(lam.parts, q));
    }
  for (int a = 0; a <= 4; ++a)
    for (int b = a + 1; b <= 4; ++b) CHECK(to_p(milne({a, b}, q), q) == milne_raising({a, b}, q));
  CHECK(to_p(milne({-1, 2}, q), q) == in_p(Basis::Milne, {1}).scaled(q * q - 1));
  CHECK(to_p(milne({1, 3, 2}, q), q) == milne_raising({1, 3, 2}, q));
  CHECK(milne({2, -1}, q).coeffs.empty());
}

TEST_CASE("raising operator calculus") {
  PairSeries<RatFunc> identity = [](std::size_t, std::size_t, int k) { return k == 0 ? RatFunc(1) : RatFunc(); };
  CHECK(raising_apply(identity, {1, 1}, h_family<RatFunc>()) == in_p(Basis::h, {1, 1}));
  PairSeries<RatFunc> one_minus = [](std::size_t, std::size_t, int k) {
    return k == 0 ? RatFunc(1) : (k == 1 ? RatFunc(-1) : RatFunc());
  };
  CHECK(raising_apply(one_minus, {1, 1}, h_family<RatFunc>()) == in_p(Basis::h, {1, 1}) - in_p(Basis::h, {2}));
  CHECK(milne_raising({2, 1}, q) == in_p(Basis::Milne, {2, 1}));
}

TEST_CASE("roots of unity") {
  for (int N = 2; N <= 3; ++N) {
    CycloQ z = CycloQ::root(N);
    for (int n = 1; n <= 2; ++n) {
      Partition rect(std::vector<int>(static_cast<std::size_t>(N), n));
      auto Qr = to_p(single<CycloQ>(Basis::Milne, rect), z);
      // Q'_{(n^N)} = (-1)^{n(N-1)} h_n(x^N)
      SymFunc<CycloQ> hN{Basis::p, n * N, {}};
      for (const auto& lam : partitions_of(n)) {
        std::vector<int> scaled;
        for (int x : lam.parts) scaled.push_back(N * x);
        Rational c = Rational(1) / Rational(z_lambda(lam));
        if ((n * (N - 1)) % 2) c = -c;
        hN.add(Partition(scaled), CycloQ(c));
      }
      CHECK(Qr == hN);
      for (int d = 0; d <= 3; ++d)
        for (const auto& lam : partitions_of(d)) {
          auto lhs = to_p(single<CycloQ>(Basis::Milne, lam.union_with(rect)), z);
          auto rhs = multiply_p(to_p(single<CycloQ>(Basis::Milne, lam), z), Qr);
          CHECK(lhs == rhs);
        }
    }
    // prod_i H(x q^{i-1}; t) = H(x^N; t^N) to order 6
    for (int m = 0; m <= 6; ++m) {
      SymFunc<CycloQ> lhs{Basis::p, m, {}};
      std::vector<int> parts(static_cast<std::size_t>(N), 0);
      std::function<void(int, int)> rec = [&](int pos, int rest) {
        if (pos == N - 1) {
          parts[static_cast<std::size_t>(pos)] = rest;
          SymFunc<CycloQ> t{Basis::p, 0, {}};
          t.add(Partition(), CycloQ(1));
          CycloQ c(1);
          for (int i = 0; i < N; ++i) {
            t = multiply_p(t, h_p<CycloQ>(parts[static_cast<std::size_t>(i)]));
            c = c * power(z, static_cast<long>(i) * parts[static_cast<std::size_t>(i)]);
          }
          lhs = lhs + t.scaled(c);
          return;
        }
        for (int k = 0; k <= rest; ++k) {
          parts[static_cast<std::size_t>(pos)] = k;
          rec(pos + 1, rest - k);
        }
      };
      rec(0, m);
      SymFunc<CycloQ> rhs{Basis::p, m, {}};
      if (m % N == 0)
        for (const auto& lam : partitions_of(m / N)) {
          std::vector<int> scaled;
          for (int x : lam.parts) scaled.push_back(N * x);
          rhs.add(Partition(scaled), CycloQ(Rational(1) / Rational(z_lambda(lam))));
        }
      CHECK(lhs == rhs);
    }
  }
  CHECK_THROWS_AS(to_basis(single<CycloQ>(Basis::p, {2}), Basis::HL_Q, CycloQ::root(2)), BasisError);
  CHECK_NOTHROW(to_basis(single<CycloQ>(Basis::p, {1, 1}), Basis::HL_Q, CycloQ::root(2)));
}

TEST_CASE("finite-variable specialization") {
  RatFunc z = RatFunc::variable(VP);
  CHECK(specialize_vars(one(Basis::HL_P, {1}), {z, z * q}, q) == (1 + q) * z);
  CHECK(specialize_vars(one(Basis::HL_P, {1, 1}), {z, z * q}, q) == q * z * z);
  CHECK(specialize_vars(one(Basis::m, {2, 1}), {RatFunc(1)}, q).is_zero());
  for (int N = 2; N <= 3; ++N) {
    std::vector<RatFunc> vals;
    for (int i = 0; i < N; ++i) vals.push_back(z * power(q, i));
    for (int n = 1; n <= 4; ++n)
      for (const auto& lam : partitions_of(n)) {
        RatFunc lhs = specialize_vars(one(Basis::HL_P, lam), vals, q);
        RatFunc rhs;
        if (lam.length() <= N)
          rhs = power(q, n_stat(lam)) * q_multinomial(N, multiplicity_vector(lam, N), q) * power(z, n);
        CHECK(lhs == rhs);
      }
  }
}

TEST_CASE("monomials through HL Q functions") {
  auto m11 = monomial_in_HLQ(Partition{1, 1}, q);
  REQUIRE(m11.size() == 1);
  CHECK(m11.at(Partition{1, 1}) == 1 / ((1 - q) * (1 - q * q)));
  auto m2 = monomial_in_HLQ(Partition{2}, q);
  REQUIRE(m2.size() == 1);
  CHECK(m2.at(Partition{2}) == 1 / (1 - q));
  auto m21 = monomial_in_HLQ(Partition{2, 1}, q);
  for (const auto& [mu, c] : m21) CHECK(mu == Partition{2, 1});
  // (q)_2 m_{11}(x1,x2) = Q_{11}(x1,x2)
  std::vector<Rational> x = {Rational(2), Rational(-3, 5)};
  RatFunc m11x = RatFunc(x[0] * x[1]);
  CHECK(q_pochhammer(q, q, 2) * m11x == q_symmetrized({1, 1}, x));
  // symmetrization lemma in l(lambda) variables
  for (int n = 1; n <= 4; ++n)
    for (const auto& lam : partitions_of(n)) {
      std::size_t l = static_cast<std::size_t>(lam.length());
      std::vector<Rational> xs = {Rational(2), Rational(-1, 3), Rational(5, 7), Rational(3)};
      xs.resize(l);
      std::vector<RatFunc> xr(xs.begin(), xs.end());
      IntSequence seq = lam.parts;
      std::sort(seq.begin(), seq.end());
      RatFunc lhs;
      do lhs = lhs + q_symmetrized(seq, xs);
      while (std::next_permutation(seq.begin(), seq.end()));
      auto M = m_matrix(n, q);
      const auto& T = classical(n);
      RatFunc rhs;
      for (std::size_t j = 0; j < T.parts.size(); ++j) {
        const auto& mu = T.parts[j];
        if (mu.length() != lam.length() || M[T.index.at(lam)][j].is_zero()) continue;
        RatFunc Qmu = specialize_vars(one(Basis::HL_Q, mu), xr, q);
        CHECK(Qmu == q_symmetrized(mu.parts, xs));
        rhs = rhs + M[T.index.at(lam)][j] * q_multinomial(lam.length(), multiplicity_vector(mu, lam.length()), q) * Qmu;
      }
      CHECK(lhs == rhs);
    }
}

TEST_CASE("transition matrix disk cache") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "dva_cache_test";
  fs::remove_all(dir);
  set_cache_dir(dir.string());
  clear_memory_cache();
  auto K = kostka_q(4);
  CHECK(fs::exists(dir / "kostka_q_n4.txt"));
  clear_memory_cache();
  CHECK(kostka_q(4) == K);
  // a damaged file is ignored and rewritten
  { std::ofstream(dir / "kostka_q_n4.txt") << "dva-cache 1\nkind kostka_q\ndegree 4\npartitions 2\n"; }
  clear_memory_cache();
  CHECK(kostka_q(4) == K);
  std::ifstream in(dir / "kostka_q_n4.txt");
  std::string first;
  std::getline(in, first);
  CHECK(first == "dva-cache 1");
  set_cache_dir(std::nullopt);
  clear_memory_cache();
  fs::remove_all(dir);
}
