#include <doctest.h>

#include "dva/fock.hpp"
#include "dva/random.hpp"
#include "dvatools/json_io.hpp"

using namespace dva;
using namespace dva::tools;

namespace {

const RatFunc P = RatFunc::variable(VP);
const RatFunc Q = RatFunc::variable(VQ);
const RatFunc H = RatFunc::variable(VH);
const RatFunc A = RatFunc::variable(VA);

}  // namespace

TEST_CASE("coefficient strings round-trip through the rational-function grammar") {
  Sampler s(17);
  std::vector<RatFunc> samples = {RatFunc(0), RatFunc(Rational(-3, 7)), P * Q / (H + RatFunc(1)),
                                  (P - Q) * (P - Q) / (A * A * H), power<RatFunc>(Q, -3) + RatFunc(Rational(1, 2))};
  for (int i = 0; i < 20; ++i)
    samples.push_back((RatFunc(s.rational()) * P + RatFunc(s.rational()) * Q * H) /
                      (RatFunc(s.rational_avoiding({Rational(0)})) + P * A));
  for (const auto& x : samples) {
    std::string t = coeff_string(x);
    CHECK(RatFunc::parse(t) == x);
    CHECK(coeff_string(RatFunc::parse(t)) == t);
  }
}

TEST_CASE("cyclotomic coefficients are written as reduced polynomials in q") {
  CycloQ z = CycloQ::root(3);
  CycloQ x = z * z + CycloQ(Rational(1, 2));
  CHECK(coeff_string(x) == "(-2*q-1)/(2)");
  Assignment<CycloQ> a;
  a[VQ] = z;
  CHECK(RatFunc::parse(coeff_string(x)).eval(a) == x);
}

TEST_CASE("split_alpha separates powers of a") {
  RatFunc c = (A * A * P + Q + P / A) / (P + RatFunc(1));
  auto parts = split_alpha(c);
  REQUIRE(parts.size() == 3);
  CHECK(parts.at(2) == P / (P + RatFunc(1)));
  CHECK(parts.at(0) == Q / (P + RatFunc(1)));
  CHECK(parts.at(-1) == P / (P + RatFunc(1)));
  RatFunc sum;
  for (const auto& [e, x] : parts) sum = sum + x * power<RatFunc>(A, e);
  CHECK(sum == c);
  CHECK_THROWS_AS(split_alpha(RatFunc(1) / (A + RatFunc(1))), std::invalid_argument);
}

TEST_CASE("vector JSON round-trips") {
  alg::VermaVector<RatFunc> v;
  v.level = 3;
  v.add(Partition::parse("2,1"), P / (Q - H));
  v.add(Partition::parse("3"), RatFunc(Rational(-5, 2)));
  json j = vector_json(v);
  auto back = vector_from_json<RatFunc>(json::parse(j.dump()), [](const RatFunc& c) { return c; });
  CHECK(back == v);
  j["terms"][0]["partition"] = "2";
  CHECK_THROWS_AS(vector_from_json<RatFunc>(j, [](const RatFunc& c) { return c; }), std::invalid_argument);
}
