#include <doctest.h>

#include <set>

#include "dva/partitions.hpp"

using namespace dva;

TEST_CASE("partition enumeration") {
  CHECK(partitions_of(4).size() == 5);
  CHECK(partitions_of(0).size() == 1);
  CHECK(partitions_of(0)[0].empty());
  auto r = partitions_of(4, {.exclude_parts_divisible_by = 3});
  REQUIRE(r.size() == 4);
  CHECK(r[0] == Partition{4});
  CHECK(r[1] == Partition{2, 2});
  CHECK(r[2] == Partition{2, 1, 1});
  CHECK(r[3] == Partition{1, 1, 1, 1});
  for (int n = 0; n <= 15; ++n) {
    auto all = partitions_of(n);
    CHECK(static_cast<long long>(all.size()) == partition_count(n));
    std::set<std::vector<int>> seen;
    for (std::size_t i = 0; i < all.size(); ++i) {
      seen.insert(all[i].parts);
      if (i) CHECK_FALSE(all[i] < all[i - 1]);
      if (i) CHECK(all[i - 1] < all[i]);
    }
    CHECK(seen.size() == all.size());
  }
}

TEST_CASE("reverse lex refines dominance") {
  for (int n = 1; n <= 8; ++n) {
    auto all = partitions_of(n);
    for (std::size_t i = 0; i < all.size(); ++i)
      for (std::size_t j = i + 1; j < all.size(); ++j) CHECK_FALSE(dominates(all[j], all[i]));
  }
}

TEST_CASE("statistics") {
  CHECK(z_lambda(Partition{1, 1}) == 2);
  CHECK(ht_op(Partition{2, 1}) == 0);
  CHECK(n_stat(Partition{2, 1, 1}) == 3);
  CHECK(b_poly(Partition{1, 1}, RatFunc::variable(VQ)) ==
        (1 - RatFunc::variable(VQ)) * (1 - power(RatFunc::variable(VQ), 2)));
  CHECK(Partition::parse("3,1,1") == Partition{3, 1, 1});
  CHECK(Partition{3, 1, 1}.to_string() == "3,1,1");
  CHECK(Partition().to_string() == "-");
  CHECK(Partition::parse("-").empty());
  CHECK_THROWS(Partition::parse("1,3"));
}

TEST_CASE("q-analogues") {
  RatFunc q = RatFunc::variable(VQ);
  CHECK(q_pochhammer(q, q, 0) == RatFunc(1));
  CHECK(q_pochhammer(q, q, 3) == (1 - q) * (1 - q * q) * (1 - q * q * q));
  CHECK(q_pochhammer(Rational(-1), Rational(-1), 2) == 0);
  CHECK(q_multinomial(2, {1, 1}, q) == 1 + q);
  CHECK(q_multinomial(3, {1, 1, 1}, q) == (1 + q) * (1 + q + q * q));
  CHECK(q_multinomial(3, {1, 1, 1}, CycloQ::root(3)).is_zero());
  CHECK_THROWS(q_multinomial(3, {1, 1}, q));
  // only a single full slot survives at a primitive root
  for (int N = 2; N <= 4; ++N) {
    CycloQ z = CycloQ::root(N);
    for (int n = 0; n <= 8; ++n)
      for (const auto& lam : partitions_of(n)) {
        if (lam.length() > N) continue;
        auto m = multiplicity_vector(lam, N);
        bool single = false;
        for (int x : m) single = single || x == N;
        CycloQ v = q_multinomial(N, m, z);
        CHECK(v.is_zero() == !single);
      }
  }
}

TEST_CASE("product over partitions equals product over rectangles") {
  for (int n = 1; n <= 8; ++n) {
    Integer lhs = 1, rhs = 1;
    for (const auto& lam : partitions_of(n))
      for (int x : lam.parts) lhs *= x;
    for (int r = 1; r <= n; ++r)
      for (int s = 1; r * s <= n; ++s) {
        Integer f;
        mpz_ui_pow_ui(f.get_mpz_t(), static_cast<unsigned long>(r), static_cast<unsigned long>(partition_count(n - r * s)));
        rhs *= f;
      }
    CHECK(lhs == rhs);
  }
}

TEST_CASE("character series") {
  using V = std::vector<Integer>;
  CHECK(char_series(CharKind::reduced_N, {.N = 3}, 5) == V{1, 1, 2, 2, 4, 5});
  CHECK(char_series(CharKind::fermionic_N, {.N = 3}, 5) == V{1, 1, 2, 2, 4, 5});
  CHECK(char_series(CharKind::q2_r, {.r = 1}, 4) == V{1, 0, 1, 1, 1});
  CHECK_THROWS(char_series(CharKind::reduced_N, {.N = 1}, 4));
  const int L = 20;
  std::vector<std::pair<CharKind, CharParams>> cases = {
      {CharKind::verma, {}},
      {CharKind::reduced_N, {.N = 2}},
      {CharKind::reduced_N, {.N = 4}},
      {CharKind::fermionic_N, {.N = 3}},
      {CharKind::q2_r, {.r = 2}},
      {CharKind::qN_rs, {.N = 3, .r = 2, .s = 1}},
      {CharKind::qN_rs, {.N = 4, .r = 1, .s = 2}},
      {CharKind::witten_q_minus1, {}},
      {CharKind::M_doubleprime, {.M = 3, .m0 = 0}},
      {CharKind::M_doubleprime, {.M = 3, .m0 = 1}},
      {CharKind::M_doubleprime, {.M = 4, .m0 = 2}},
      {CharKind::M_doubleprime, {.M = 4, .m0 = 1}},
  };
  for (const auto& [k, p] : cases) CHECK(char_series(k, p, L) == char_series_bruteforce(k, p, L));
}
