#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "dva/dva.hpp"
#include "dva/fock.hpp"
#include "dva/random.hpp"
#include "dvatools/json_io.hpp"
#include "dvatools/suites.hpp"

using namespace dva;
using namespace dva::alg;
using dva::tools::json;

namespace {

constexpr int kExitVerdict = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Report body and whether the verdict was positive.
struct Outcome {
  json body;
  bool ok = true;
};

Rational parse_rational(const std::string& s) {
  try {
    Rational r(s);
    if (sgn(r.get_den()) == 0) throw UsageError("zero denominator in '" + s + "'");
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw UsageError("not a rational number: '" + s + "'");
  }
}

std::vector<int> parse_ints(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw UsageError("not an integer list: '" + s + "'");
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Algebra context

struct AlgOpts {
  std::string variant = "generic";
  int N = 0;
  std::optional<std::string> p, q, h;
  int truncation = 16;
};

Variant parse_variant(const std::string& s) {
  if (s == "generic") return Variant::generic;
  if (s == "q-root") return Variant::q_root;
  if (s == "q-minus-1") return Variant::q_minus1;
  if (s == "t-infinity") return Variant::t_infinity;
  throw UsageError("unknown variant '" + s + "'");
}

struct Resolved {
  Variant variant;
  int N = 0;
  std::optional<Rational> p, q, h;
  bool cyclotomic() const { return variant == Variant::q_root || (variant == Variant::t_infinity && N > 0); }
  bool exact() const {
    switch (variant) {
      case Variant::generic: return p && q && h;
      case Variant::q_root: return p && h;
      case Variant::q_minus1: return p && h;
      case Variant::t_infinity: return h && (q || N > 0);
    }
    return false;
  }
};

Resolved resolve(const AlgOpts& o) {
  Resolved r;
  r.variant = parse_variant(o.variant);
  r.N = o.N;
  if (o.p) r.p = parse_rational(*o.p);
  if (o.q) r.q = parse_rational(*o.q);
  if (o.h) r.h = parse_rational(*o.h);
  switch (r.variant) {
    case Variant::generic:
      if (r.N) throw UsageError("--N is not used by the generic variant");
      break;
    case Variant::q_root:
      if (r.N < 2) throw UsageError("the q-root variant needs --N >= 2");
      if (r.q) throw UsageError("q is fixed to a primitive N-th root; do not pass --q");
      break;
    case Variant::q_minus1:
      if (r.q) throw UsageError("q is fixed to -1; do not pass --q");
      if (r.N) throw UsageError("--N is not used by the q-minus-1 variant");
      break;
    case Variant::t_infinity:
      if (r.p) throw UsageError("p does not enter the t-infinity variant");
      if (r.N && r.q) throw UsageError("pass either --q or --N for the t-infinity variant, not both");
      if (r.N == 1) throw UsageError("--N must be at least 2");
      break;
  }
  return r;
}

json params_json(const Resolved& r) {
  const char* names[] = {"generic", "q-root", "q-minus-1", "t-infinity"};
  json j = {{"variant", names[static_cast<int>(r.variant)]}};
  if (r.N) j["N"] = r.N;
  if (r.variant != Variant::t_infinity) j["p"] = r.p ? dva::tools::coeff_string(*r.p) : "p";
  if (r.variant == Variant::generic || (r.variant == Variant::t_infinity && !r.N)) j["q"] = r.q ? dva::tools::coeff_string(*r.q) : "q";
  if (r.variant == Variant::q_root || (r.variant == Variant::t_infinity && r.N)) j["q"] = "primitive root of order " + std::to_string(r.N);
  if (r.variant == Variant::q_minus1) j["q"] = "-1";
  j["h"] = r.h ? dva::tools::coeff_string(*r.h) : "h";
  j["field"] = r.exact() ? (r.cyclotomic() ? "cyclotomic rationals" : "rationals") : (r.cyclotomic() ? "cyclotomic rational functions" : "rational functions");
  return j;
}

template <class F>
F value_or_symbol(const std::optional<Rational>& v, Var var) {
  if (v) return F(*v);
  if constexpr (std::is_same_v<F, Rational> || std::is_same_v<F, CycloQ>)
    throw std::logic_error("symbolic value requested in an exact field");
  else
    return F(RatFunc::variable(var));
}

template <class F>
Algebra<F> build_algebra(const Resolved& r, int truncation) {
  F p = r.variant == Variant::t_infinity ? F(1) : value_or_symbol<F>(r.p, VP);
  F h = value_or_symbol<F>(r.h, VH);
  switch (r.variant) {
    case Variant::generic: return make_generic<F>(p, value_or_symbol<F>(r.q, VQ), h, truncation);
    case Variant::q_minus1: return make_q_minus1<F>(p, h);
    case Variant::q_root:
      if constexpr (std::is_same_v<F, CycloQ> || std::is_same_v<F, CycloRF>)
        return make_q_root<F>(r.N, p, h, truncation);
      else
        throw std::logic_error("q-root variant needs a cyclotomic field");
    case Variant::t_infinity:
      if (r.N) {
        if constexpr (std::is_same_v<F, CycloQ> || std::is_same_v<F, CycloRF>)
          return make_t_infinity<F>(F::root(r.N), h, r.N);
        else
          throw std::logic_error("t-infinity at a root of unity needs a cyclotomic field");
      }
      return make_t_infinity<F>(value_or_symbol<F>(r.q, VQ), h);
  }
  throw std::logic_error("unreachable");
}

// Calls fn.template operator()<F>() with F chosen from the variant and the given values.
template <class Fn>
auto with_field(const Resolved& r, Fn&& fn) {
  if (r.cyclotomic()) {
    if (r.exact()) return fn.template operator()<CycloQ>();
    return fn.template operator()<CycloRF>();
  }
  if (r.exact()) return fn.template operator()<Rational>();
  return fn.template operator()<RatFunc>();
}

// Converts a parsed coefficient into F at the resolved values (q becomes the root when cyclotomic).
template <class F>
F convert(const RatFunc& c, const Resolved& r) {
  Assignment<F> a;
  if constexpr (std::is_same_v<F, RatFunc>) {
    a[VP] = r.p ? RatFunc(*r.p) : RatFunc::variable(VP);
    a[VQ] = r.variant == Variant::q_minus1 ? RatFunc(-1) : (r.q ? RatFunc(*r.q) : RatFunc::variable(VQ));
    a[VH] = r.h ? RatFunc(*r.h) : RatFunc::variable(VH);
  } else {
    if (r.p) a[VP] = F(*r.p);
    if (r.h) a[VH] = F(*r.h);
    if (r.q) a[VQ] = F(*r.q);
    if constexpr (std::is_same_v<F, CycloQ> || std::is_same_v<F, CycloRF>) {
      if (r.N) a[VQ] = F::root(r.N);
      if constexpr (std::is_same_v<F, CycloRF>) {
        if (!r.p) a[VP] = F(RatFunc::variable(VP));
        if (!r.h) a[VH] = F(RatFunc::variable(VH));
      }
    }
    if (r.variant == Variant::q_minus1) a[VQ] = F(-1);
  }
  return c.eval(a);
}

template <class F>
std::string cs(const F& x) {
  return dva::tools::coeff_string(x);
}

// ---------------------------------------------------------------------------
// Commands

Outcome cmd_f_series(const Resolved& r, int order, int truncation) {
  return with_field(r, [&]<class F>() {
    auto a = build_algebra<F>(r, std::max(truncation, order));
    json f = json::array(), c = json::array();
    for (int n = 0; n <= order; ++n) f.push_back(cs(a.f(n)));
    for (int n = 1; n <= order; ++n) c.push_back(cs(a.c(n)));
    return Outcome{{{"command", "f-series"}, {"params", params_json(r)}, {"order", order}, {"f", f}, {"c", c}}, true};
  });
}

Outcome cmd_gram(const Resolved& r, int level, int truncation) {
  return with_field(r, [&]<class F>() {
    Verma<F> V(build_algebra<F>(r, std::max(truncation, level + 2)));
    auto G = gram(V, level);
    return Outcome{{{"command", "gram"},
                    {"params", params_json(r)},
                    {"level", level},
                    {"basis", dva::tools::basis_json(partitions_of(level))},
                    {"gram", dva::tools::matrix_json(G)},
                    {"det", cs(determinant(G))}},
                   true};
  });
}

// Fills unspecified values from the sampler.
std::vector<Resolved> specializations(const Resolved& base, int samples, std::uint64_t seed, bool needs_q) {
  Sampler s(seed);
  std::vector<Resolved> out;
  bool all_given = base.exact();
  int count = all_given ? 1 : samples;
  for (int i = 0; i < count; ++i) {
    Resolved r = base;
    if (r.variant != Variant::t_infinity && !r.p) r.p = s.rational_avoiding({Rational(1), Rational(-1)});
    if (needs_q && !r.q && !r.N) r.q = s.rational_avoiding({Rational(1), Rational(-1)});
    if (!r.h) r.h = s.rational_avoiding({Rational(0)});
    out.push_back(r);
  }
  return out;
}

template <class DetFn>
Outcome determinant_report(const std::string& command, const Resolved& base, int level, int samples, std::uint64_t seed,
                           bool needs_q, DetFn det_and_formula) {
  json specs = json::array();
  std::optional<std::string> ratio;
  bool constant = true;
  json first;
  for (const auto& r : specializations(base, samples, seed, needs_q)) {
    auto [det, formula, rat] = det_and_formula(r);
    json s = params_json(r);
    s["det"] = det;
    s["formula"] = formula;
    s["ratio"] = rat;
    if (!ratio)
      ratio = rat;
    else
      constant = constant && *ratio == rat;
    if (first.is_null()) first = s;
    specs.push_back(s);
  }
  json body = {{"command", command},
               {"level", level},
               {"empirical_det", first["det"]},
               {"formula", first["formula"]},
               {"ratio_constant", constant ? json(*ratio) : json(nullptr)},
               {"specializations", specs}};
  return Outcome{body, constant};
}

Outcome cmd_kacdet(const Resolved& base, int level, int samples, std::uint64_t seed) {
  if (base.variant != Variant::generic && base.variant != Variant::t_infinity)
    throw UsageError("kacdet takes the generic or t-infinity variant; use quotient-det at roots of unity");
  if (base.variant == Variant::t_infinity && base.N) throw UsageError("kacdet at t-infinity takes --q, not --N");
  return determinant_report("kacdet", base, level, samples, seed, true, [&](const Resolved& r) {
    Verma<Rational> V(build_algebra<Rational>(r, level + 2));
    Rational det = determinant(gram(V, level));
    Rational formula = r.variant == Variant::generic ? kac_formula(level, *r.p, *r.q, *r.h) : kac_formula_tinf(level, *r.q);
    return std::tuple{cs(det), cs(formula), cs(Rational(det / formula))};
  });
}

Outcome cmd_quotient_det(const Resolved& base, int level, int samples, std::uint64_t seed) {
  if (base.variant == Variant::q_minus1)
    return determinant_report("quotient-det", base, level, samples, seed, false, [&](const Resolved& r) {
      Verma<Rational> V(build_algebra<Rational>(r, level + 2));
      Rational det = determinant(quotient_gram(V, level)), formula = quotient_formula_qminus1(level, *r.p, *r.h);
      return std::tuple{cs(det), cs(formula), cs(Rational(det / formula))};
    });
  if (base.variant == Variant::q_root)
    return determinant_report("quotient-det", base, level, samples, seed, false, [&](const Resolved& r) {
      Verma<CycloQ> V(build_algebra<CycloQ>(r, level + 2));
      CycloQ p(*r.p), h(*r.h);
      CycloQ det = determinant(quotient_gram(V, level)), formula = quotient_formula_root(r.N, level, p, CycloQ::root(r.N), h);
      return std::tuple{cs(det), cs(formula), cs(det / formula)};
    });
  throw UsageError("quotient-det takes the q-root or q-minus-1 variant");
}

json read_json_arg(const std::string& arg) {
  std::string text = arg;
  if (!arg.empty() && arg[0] == '@') {
    std::ifstream in(arg.substr(1));
    if (!in) throw UsageError("cannot read " + arg.substr(1));
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("malformed vector JSON: ") + e.what());
  }
}

struct SingularSource {
  std::optional<std::string> vector;
  std::vector<int> appendix;  // N d
  std::vector<int> power;     // m N
};

Outcome cmd_singular(Resolved r, const SingularSource& src, int truncation) {
  int sources = (src.vector ? 1 : 0) + (!src.appendix.empty() ? 1 : 0) + (!src.power.empty() ? 1 : 0);
  if (sources != 1) throw UsageError("singular needs exactly one of --vector, --appendix-b, --power");
  if (!src.appendix.empty()) {
    if (r.variant != Variant::generic && r.variant != Variant::q_root) throw UsageError("--appendix-b fixes the q-root variant");
    if (r.N && r.N != src.appendix[0]) throw UsageError("--N contradicts --appendix-b");
    r.variant = Variant::q_root;
    r.N = src.appendix[0];
    r.q.reset();
  }
  return with_field(r, [&]<class F>() {
    int level = 0;
    VermaVector<F> v;
    if (src.vector) {
      json j = read_json_arg(*src.vector);
      try {
        v = dva::tools::vector_from_json<F>(j, [&](const RatFunc& c) { return convert<F>(c, r); });
      } catch (const std::exception& e) {
        throw UsageError(std::string("invalid vector: ") + e.what());
      }
    } else if (!src.appendix.empty()) {
      F p = value_or_symbol<F>(r.p, VP), h = value_or_symbol<F>(r.h, VH);
      if constexpr (std::is_same_v<F, CycloQ> || std::is_same_v<F, CycloRF>)
        v = build_appB<F>(src.appendix[0], src.appendix[1], p, h);
    }
    level = src.power.empty() ? v.level : src.power[0] * src.power[1];
    Verma<F> V(build_algebra<F>(r, std::max(truncation, level + 2)));
    if (!src.power.empty()) v = V.act_word(std::vector<int>(static_cast<std::size_t>(src.power[1]), -src.power[0]));
    auto verdict = singular_check(V, v);
    json images = json::array();
    for (int k = 1; k <= v.level; ++k) images.push_back({{"mode", k}, {"image", dva::tools::vector_json(V.act(k, v))}});
    json body = {{"command", "singular"},
                 {"params", params_json(r)},
                 {"vector", dva::tools::vector_json(v)},
                 {"verdict", verdict.singular ? "singular" : "not singular"},
                 {"positive_mode_images", images}};
    if (!verdict.singular) body["witness_mode"] = verdict.witness;
    return Outcome{body, verdict.singular};
  });
}

Outcome cmd_center(Resolved r, int m, int level, int kmax, std::uint64_t seed) {
  if (r.variant != Variant::t_infinity && r.variant != Variant::generic) throw UsageError("center-check runs in the t-infinity variant");
  if (r.N < 2) throw UsageError("center-check needs --N >= 2");
  r.variant = Variant::t_infinity;
  if (!r.h) {
    Sampler s(seed);
    r.h = s.rational_avoiding({Rational(0)});
  }
  Verma<CycloQ> V(build_algebra<CycloQ>(r, 16));
  std::vector<int> ks;
  for (int k = -kmax; k <= kmax; ++k) ks.push_back(k);
  auto res = center_witness(V, r.N, m, ks, level);
  json body = {{"command", "center-check"}, {"params", params_json(r)}, {"m", m}, {"level", level}, {"modes", ks}};
  body["verdict"] = res.central ? "central" : "not central";
  if (!res.central) {
    body["witness"] = {{"mode", res.k}, {"state", res.state.to_string()}, {"commutator", dva::tools::vector_json(res.residue)}};
    if (m == 0 && r.N == 3 && res.k == -2 && res.state == Partition{}) {
      auto pred = t0_cubed_prediction(CycloQ::root(3), CycloQ(*r.h));
      body["predicted_commutator"] = dva::tools::vector_json(pred);
      body["difference"] = dva::tools::vector_json(res.residue - pred);
    }
  }
  return Outcome{body, res.central};
}

template <class F>
F q_value(const std::optional<std::string>& q, int N) {
  if (N) {
    if constexpr (std::is_same_v<F, CycloQ> || std::is_same_v<F, CycloRF>) return F::root(N);
  }
  if (q) return F(parse_rational(*q));
  if constexpr (std::is_same_v<F, RatFunc> || std::is_same_v<F, CycloRF>) return F(RatFunc::variable(VQ));
  throw std::logic_error("no value for q");
}

// Runs fn<F>(q) with F = RatFunc for symbolic or rational q, CycloQ when --N is given.
template <class Fn>
auto with_q(const std::optional<std::string>& q, int N, Fn&& fn) {
  if (q && N) throw UsageError("pass either --q or --N, not both");
  if (N == 1 || N < 0) throw UsageError("--N must be at least 2");
  if (N) return fn.template operator()<CycloQ>(CycloQ::root(N));
  return fn.template operator()<RatFunc>(q_value<RatFunc>(q, 0));
}

Outcome cmd_hl(const std::string& lambda, const std::string& basis, const std::string& target, const std::optional<std::string>& q, int N) {
  return with_q(q, N, [&]<class F>(F qv) {
    auto f = sym::single<F>(sym::parse_basis(basis), dva::tools::parse_partition(lambda));
    auto g = sym::to_basis(f, sym::parse_basis(target), qv);
    return Outcome{{{"command", "hl"}, {"input", dva::tools::symfunc_json(f)}, {"expansion", dva::tools::symfunc_json(g)}}, true};
  });
}

Outcome cmd_kostka(int degree, const std::optional<std::string>& q, int N) {
  return with_q(q, N, [&]<class F>(F qv) {
    auto K = sym::kostka(degree, qv);
    return Outcome{{{"command", "kostka"},
                    {"degree", degree},
                    {"basis", dva::tools::basis_json(partitions_of(degree))},
                    {"matrix", dva::tools::matrix_json(K)}},
                   true};
  });
}

Outcome cmd_milne(const std::string& seq_text, const std::optional<std::string>& q, int N) {
  IntSequence seq = parse_ints(seq_text);
  return with_q(q, N, [&]<class F>(F qv) {
    auto schur = sym::milne(seq, qv);
    bool nonneg = std::all_of(seq.begin(), seq.end(), [](int x) { return x >= 0; });
    json body = {{"command", "milne"}, {"sequence", seq}, {"schur", dva::tools::symfunc_json(schur)}};
    auto in_p = sym::to_p(schur, qv);
    body["power_sums"] = dva::tools::symfunc_json(in_p);
    bool ok = true;
    if (nonneg) {
      fock::FreeField<F> ff(fock::make_tinf_osc(qv));
      auto image = fock::milne_image(ff, seq);
      body["free_field_image"] = dva::tools::symfunc_json(image);
      ok = image == in_p;
      body["agree"] = ok;
    }
    return Outcome{body, ok};
  });
}

std::pair<CharKind, std::string> parse_char_kind(const std::string& s) {
  if (s == "verma") return {CharKind::verma, s};
  if (s == "reduced") return {CharKind::reduced_N, s};
  if (s == "fermionic") return {CharKind::fermionic_N, s};
  if (s == "q2") return {CharKind::q2_r, s};
  if (s == "qN") return {CharKind::qN_rs, s};
  if (s == "witten") return {CharKind::witten_q_minus1, s};
  if (s == "mpp") return {CharKind::M_doubleprime, s};
  throw UsageError("unknown character kind '" + s + "'");
}

Outcome cmd_char(const std::string& kind, const CharParams& params, int order) {
  auto [k, name] = parse_char_kind(kind);
  std::vector<Integer> a, b;
  try {
    a = char_series(k, params, order);
    b = char_series_bruteforce(k, params, order);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  json ca = json::array(), cb = json::array();
  for (const auto& x : a) ca.push_back(x.get_str());
  for (const auto& x : b) cb.push_back(x.get_str());
  return Outcome{{{"command", "char"}, {"kind", name}, {"order", order}, {"coefficients", ca}, {"enumeration", cb}, {"agree", a == b}},
                 a == b};
}

struct FockOpts {
  std::optional<std::string> q, w, a, sqrt_q;
  bool tinf = false;
};

Outcome cmd_iota(const std::string& word_text, const FockOpts& o) {
  std::vector<int> word = parse_ints(word_text);
  auto val = [](const std::optional<std::string>& s, Var v) { return s ? RatFunc(parse_rational(*s)) : RatFunc::variable(v); };
  RatFunc q = val(o.q, VQ);
  json body = {{"command", "iota"}, {"word", word}};
  if (o.tinf) {
    fock::FreeField<RatFunc> ff(fock::make_tinf_osc(q));
    auto v = ff.iota_word(word);
    body["mode"] = "t-infinity";
    body["image"] = dva::tools::fock_json(v);
    body["symmetric_function"] = dva::tools::symfunc_json(fock::jmap(v));
  } else {
    fock::FreeField<RatFunc> ff(fock::make_osc(q, val(o.w, VW), val(o.a, VA)));
    body["mode"] = "generic";
    body["h_alpha"] = cs(fock::h_alpha(ff.osc()));
    body["image"] = dva::tools::fock_json(ff.iota_word(word));
  }
  return Outcome{body, true};
}

Outcome cmd_pi_matrix(int level, const FockOpts& o) {
  if (o.q && o.sqrt_q) throw UsageError("pass either --q or --sqrt-q, not both");
  auto val = [](const std::optional<std::string>& s, Var v) { return s ? RatFunc(parse_rational(*s)) : RatFunc::variable(v); };
  RatFunc w = val(o.w, VW), a = val(o.a, VA);
  std::optional<RatFunc> u;
  RatFunc q = val(o.q, VQ);
  if (o.sqrt_q) {
    u = RatFunc(parse_rational(*o.sqrt_q));
    q = *u * *u;
  }
  fock::FreeField<RatFunc> ff(fock::make_osc(q, w, a));
  auto M = fock::pi_matrix(ff, level);
  RatFunc det = determinant(M);
  json body = {{"command", "pi-matrix"},
               {"level", level},
               {"basis", dva::tools::basis_json(partitions_of(level))},
               {"matrix", dva::tools::matrix_json(M)},
               {"det", cs(det)}};
  if (u) {
    RatFunc formula = fock::pi_det_formula(level, w, *u, a);
    body["formula"] = cs(formula);
    body["ratio"] = cs(det / formula);
  }
  return Outcome{body, true};
}

Outcome cmd_suite(const std::string& name, std::uint64_t seed) {
  if (!dva::tools::has_suite(name)) throw UsageError("unknown suite '" + name + "'");
  auto r = dva::tools::run_suite(name, seed);
  json checks = json::array();
  for (const auto& c : r.checks) {
    json j = {{"name", c.name}, {"pass", c.pass}};
    if (!c.detail.empty()) j["detail"] = c.detail;
    checks.push_back(j);
  }
  return Outcome{{{"command", "identity-suite"}, {"suite", name}, {"passed", r.passed()}, {"failed", r.failed()}, {"checks", checks}}, r.pass()};
}

Outcome cmd_suite_list() {
  json list = json::array();
  for (const auto& s : dva::tools::suites()) list.push_back({{"name", s.name}, {"summary", s.summary}});
  return Outcome{{{"command", "identity-suite"}, {"suites", list}}, true};
}

// ---------------------------------------------------------------------------
// Text rendering: one "key: value" line per scalar, nested blocks indented.

void render_text(std::ostream& os, const json& j, int indent, const std::string& key);

void render_scalar(std::ostream& os, const json& j) {
  if (j.is_string())
    os << j.get<std::string>();
  else
    os << j.dump();
}

bool all_scalars(const json& j) {
  return std::all_of(j.begin(), j.end(), [](const json& x) { return x.is_primitive(); });
}

void render_text(std::ostream& os, const json& j, int indent, const std::string& key) {
  std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  if (j.is_object()) {
    if (!key.empty()) os << pad << key << ":\n";
    for (auto it = j.begin(); it != j.end(); ++it) render_text(os, it.value(), key.empty() ? indent : indent + 1, it.key());
  } else if (j.is_array()) {
    if (all_scalars(j)) {
      os << pad << key << ": [";
      bool first = true;
      for (const auto& x : j) {
        if (!first) os << ", ";
        first = false;
        render_scalar(os, x);
      }
      os << "]\n";
    } else {
      os << pad << key << ":\n";
      int i = 0;
      for (const auto& x : j) render_text(os, x, indent + 1, "[" + std::to_string(i++) + "]");
    }
  } else {
    os << pad << key << ": ";
    render_scalar(os, j);
    os << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations for the deformed Virasoro algebra"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "text";
  std::uint64_t seed = 0;
  std::optional<std::string> cache_dir;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", seed, "Seed for sampled specializations");
  app.add_option("--cache-dir", cache_dir, "Transition-matrix cache directory (default: $DVA_CACHE_DIR or the user cache)");

  AlgOpts alg;
  auto add_alg = [&](CLI::App* c) {
    c->add_option("--variant", alg.variant, "generic | q-root | q-minus-1 | t-infinity");
    c->add_option("--N", alg.N, "Order of the root of unity");
    c->add_option("--p", alg.p, "Rational value of p (symbolic when omitted)");
    c->add_option("--q", alg.q, "Rational value of q (symbolic when omitted)");
    c->add_option("--h", alg.h, "Rational value of h (symbolic when omitted)");
    c->add_option("--truncation", alg.truncation, "Order to which f(x) is precomputed");
  };
  int level = 1, order = 6, samples = 5;

  auto* f_series = app.add_subcommand("f-series", "Structure series f(x) and central terms c_n");
  add_alg(f_series);
  f_series->add_option("--order", order, "Highest coefficient");

  auto* gram_cmd = app.add_subcommand("gram", "Shapovalov form at a level");
  add_alg(gram_cmd);
  gram_cmd->add_option("--level", level)->required();

  auto* kacdet = app.add_subcommand("kacdet", "Gram determinant against the Kac product formula");
  add_alg(kacdet);
  kacdet->add_option("--level", level)->required();
  kacdet->add_option("--samples", samples, "Sampled specializations when values are left open");

  auto* qdet = app.add_subcommand("quotient-det", "Quotient Gram determinant against its product formula");
  add_alg(qdet);
  qdet->add_option("--level", level)->required();
  qdet->add_option("--samples", samples, "Sampled specializations when values are left open");

  SingularSource src;
  auto* singular = app.add_subcommand("singular", "Check that a vector is annihilated by all positive modes");
  add_alg(singular);
  singular->add_option("--vector", src.vector, "Vector JSON, or @file");
  singular->add_option("--appendix-b", src.appendix, "Explicit singular vector: N d")->expected(2);
  singular->add_option("--power", src.power, "(T_{-m})^N |h>: m N")->expected(2);

  int m = 1, kmax = 3;
  int center_level = 6;
  auto* center = app.add_subcommand("center-check", "Centrality of (T_m)^N at t -> infinity, q a primitive N-th root");
  add_alg(center);
  center->add_option("--m", m)->required();
  center->add_option("--level", center_level, "Largest state level tested");
  center->add_option("--kmax", kmax, "Test modes |k| <= kmax");

  std::string lambda, basis = "P", target = "s";
  std::optional<std::string> sq;
  int sN = 0;
  auto* hl = app.add_subcommand("hl", "Expand a symmetric function in another basis");
  hl->add_option("--lambda", lambda, "Partition, e.g. 2,1")->required();
  hl->add_option("--basis", basis, "m e h s p P Q Qp");
  hl->add_option("--to", target, "Target basis");
  hl->add_option("--q", sq, "Rational q (symbolic when omitted)");
  hl->add_option("--N", sN, "q a primitive N-th root");

  int degree = 2;
  auto* kostka = app.add_subcommand("kostka", "Kostka-Foulkes matrix K(q)");
  kostka->add_option("--degree", degree)->required();
  kostka->add_option("--q", sq, "Rational q (symbolic when omitted)");
  kostka->add_option("--N", sN, "q a primitive N-th root");

  std::string seq;
  auto* milne = app.add_subcommand("milne", "Milne function of an index sequence, with its free-field image");
  milne->add_option("--seq", seq, "Index sequence, e.g. 1,2")->required();
  milne->add_option("--q", sq, "Rational q (symbolic when omitted)");
  milne->add_option("--N", sN, "q a primitive N-th root");

  std::string kind;
  CharParams cp;
  auto* chr = app.add_subcommand("char", "Character series");
  chr->add_option("--kind", kind, "verma reduced fermionic q2 qN witten mpp")->required();
  chr->add_option("--N", cp.N);
  chr->add_option("--r", cp.r);
  chr->add_option("--s", cp.s);
  chr->add_option("--M", cp.M);
  chr->add_option("--m0", cp.m0);
  chr->add_option("--order", order);

  FockOpts fo;
  std::string word;
  auto add_fock = [&](CLI::App* c) {
    c->add_option("--q", fo.q, "Rational q (symbolic when omitted)");
    c->add_option("--w", fo.w, "Rational w = p^{1/2} (symbolic when omitted)");
    c->add_option("--a", fo.a, "Rational a = q^alpha (symbolic when omitted)");
  };
  auto* iota = app.add_subcommand("iota", "Free-field image of T_{w1}...T_{wk}|h>");
  add_fock(iota);
  iota->add_option("--word", word, "Mode word, e.g. -2,-1")->required();
  iota->add_flag("--tinf", fo.tinf, "Use the t -> infinity realization");

  auto* pim = app.add_subcommand("pi-matrix", "Transition matrix from PBW monomials to oscillator monomials");
  add_fock(pim);
  pim->add_option("--level", level)->required();
  pim->add_option("--sqrt-q", fo.sqrt_q, "Rational u with q = u^2; adds the product formula and ratio");

  std::string suite;
  bool list = false;
  auto* ids = app.add_subcommand("identity-suite", "Run a named invariant family");
  ids->add_option("name", suite, "Suite name");
  ids->add_flag("--list", list, "List suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (cache_dir)
    sym::set_cache_dir(*cache_dir);

  Outcome out;
  try {
    if (f_series->parsed()) {
      if (order < 0) throw UsageError("--order must be nonnegative");
      out = cmd_f_series(resolve(alg), order, alg.truncation);
    } else if (gram_cmd->parsed()) {
      if (level < 0) throw UsageError("--level must be nonnegative");
      out = cmd_gram(resolve(alg), level, alg.truncation);
    } else if (kacdet->parsed()) {
      if (level < 1) throw UsageError("--level must be positive");
      out = cmd_kacdet(resolve(alg), level, samples, seed);
    } else if (qdet->parsed()) {
      if (level < 1) throw UsageError("--level must be positive");
      out = cmd_quotient_det(resolve(alg), level, samples, seed);
    } else if (singular->parsed()) {
      // (T_{-m})^2 is singular at q = -1; (T_{-m})^N for N > 2 at t -> infinity with q an N-th root.
      if (!src.power.empty() && alg.variant == "generic" && !alg.N && !alg.q) {
        if (src.power[1] == 2) {
          alg.variant = "q-minus-1";
        } else {
          alg.variant = "t-infinity";
          alg.N = src.power[1];
        }
      }
      out = cmd_singular(resolve(alg), src, alg.truncation);
    } else if (center->parsed()) {
      if (alg.variant == "generic") alg.variant = "t-infinity";
      out = cmd_center(resolve(alg), m, center_level, kmax, seed);
    } else if (hl->parsed()) {
      out = cmd_hl(lambda, basis, target, sq, sN);
    } else if (kostka->parsed()) {
      out = cmd_kostka(degree, sq, sN);
    } else if (milne->parsed()) {
      out = cmd_milne(seq, sq, sN);
    } else if (chr->parsed()) {
      out = cmd_char(kind, cp, order);
    } else if (iota->parsed()) {
      out = cmd_iota(word, fo);
    } else if (pim->parsed()) {
      out = cmd_pi_matrix(level, fo);
    } else if (ids->parsed()) {
      if (list) out = cmd_suite_list();
      else if (suite.empty()) throw UsageError("identity-suite needs a suite name or --list");
      else out = cmd_suite(suite, seed);
    }
  } catch (const UsageError& e) {
    std::cerr << "dva: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "dva: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "dva: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "dva: computation failed: " << e.what() << "\n";
    return kExitVerdict;
  }

  if (format == "json")
    std::cout << out.body.dump(2) << "\n";
  else
    render_text(std::cout, out.body, 0, "");
  return out.ok ? 0 : kExitVerdict;
}
