#pragma once

#include <json.hpp>
#include <map>
#include <string>

#include "dva/fock.hpp"
#include "dva/symfunc.hpp"
#include "dva/verma.hpp"

namespace dva::tools {

using json = nlohmann::ordered_json;

// Coefficient strings in the canonical rational-function grammar.  Cyclotomic values are
// written as polynomials in q, the primitive root, reduced modulo its cyclotomic polynomial.
inline std::string coeff_string(const Rational& x) { return RatFunc(x).to_string(); }
inline std::string coeff_string(const RatFunc& x) { return x.to_string(); }

template <class B>
RatFunc cyclo_as_ratfunc(const Cyclo<B>& x) {
  RatFunc r;
  RatFunc q = RatFunc::variable(VQ);
  for (std::size_t i = 0; i < x.coeffs().size(); ++i) r = r + RatFunc(x.coeffs()[i]) * power(q, static_cast<long>(i));
  return r;
}

template <class B>
std::string coeff_string(const Cyclo<B>& x) {
  return cyclo_as_ratfunc(x).to_string();
}

inline std::string partition_string(const Partition& p) { return p.to_string(); }

inline Partition parse_partition(const std::string& s) {
  if (s.empty()) return Partition{};
  return Partition::parse(s);
}

template <class F>
json vector_json(const alg::VermaVector<F>& v) {
  json terms = json::array();
  for (const auto& [k, c] : v.terms) terms.push_back({{"partition", partition_string(k)}, {"coeff", coeff_string(c)}});
  return {{"level", v.level}, {"terms", terms}};
}

// Splits a coefficient into powers of a = q^alpha; the remaining factors are free of a.
inline std::map<int, RatFunc> split_alpha(const RatFunc& c) {
  std::map<int, RatFunc> out;
  const MultiPoly& den = c.den();
  int shift = 0;
  if (den.has_var(VA)) {
    shift = den.terms().front().exp[VA];
    for (const auto& t : den.terms())
      if (t.exp[VA] != shift) throw std::invalid_argument("coefficient is not a Laurent polynomial in a: " + c.to_string());
  }
  Exponent unshift{};
  unshift[VA] = -shift;
  MultiPoly d = den.shifted(unshift);
  std::map<int, std::vector<MultiPoly::Term>> groups;
  for (const auto& t : c.num().terms()) {
    MultiPoly::Term u = t;
    int e = u.exp[VA];
    u.exp[VA] = 0;
    groups[e - shift].push_back(u);
  }
  for (auto& [e, ts] : groups) out.emplace(e, RatFunc(MultiPoly::from_terms(std::move(ts)), d));
  return out;
}

template <class F>
json fock_json(const fock::FockVector<F>& v) {
  json terms = json::array();
  for (const auto& [k, c] : v.terms) {
    if constexpr (std::is_same_v<F, RatFunc>) {
      for (const auto& [e, part] : split_alpha(c))
        terms.push_back({{"partition", partition_string(k)}, {"alpha_power", e}, {"coeff", coeff_string(part)}});
    } else {
      terms.push_back({{"partition", partition_string(k)}, {"alpha_power", 0}, {"coeff", coeff_string(c)}});
    }
  }
  return {{"level", v.level}, {"terms", terms}};
}

template <class F>
json matrix_json(const Matrix<F>& m) {
  json rows = json::array();
  for (const auto& row : m) {
    json r = json::array();
    for (const auto& x : row) r.push_back(coeff_string(x));
    rows.push_back(r);
  }
  return rows;
}

inline json basis_json(const std::vector<Partition>& parts) {
  json b = json::array();
  for (const auto& p : parts) b.push_back(partition_string(p));
  return b;
}

template <class F>
json symfunc_json(const sym::SymFunc<F>& f) {
  json terms = json::array();
  for (const auto& [k, c] : f.coeffs) terms.push_back({{"partition", partition_string(k)}, {"coeff", coeff_string(c)}});
  return {{"basis", sym::basis_name(f.basis)}, {"degree", f.deg}, {"terms", terms}};
}

template <class F>
json series_json(const std::vector<F>& s) {
  json a = json::array();
  for (const auto& x : s) a.push_back(coeff_string(x));
  return a;
}

// Reads {level, terms: [{partition, coeff}]}, converting each coefficient with conv.
template <class F, class Conv>
alg::VermaVector<F> vector_from_json(const json& j, Conv conv) {
  alg::VermaVector<F> v;
  v.level = j.at("level").get<int>();
  for (const auto& t : j.at("terms")) {
    Partition k = parse_partition(t.at("partition").get<std::string>());
    if (k.weight() != v.level) throw std::invalid_argument("term " + k.to_string() + " is not at the stated level");
    v.add(k, conv(RatFunc::parse(t.at("coeff").get<std::string>())));
  }
  return v;
}

}  // namespace dva::tools
