#include "hardy/serialize.hpp"

#include "instantiate.hpp"

#include <sstream>

namespace hardy {

template <class R>
Json json_real(const R& x) {
  if (x == 0) return num::format(R(0));  // no "-0"
  return num::format(x);
}

template <class R>
R real_from_json(const Json& j) {
  if (j.is_string()) return num::parse<R>(j.get<std::string>());
  if (j.is_number_integer()) return R(j.get<long long>());
  if (j.is_number()) {
    // Go through the shortest round-trip text so 0.1 means 0.1 at any precision.
    std::ostringstream os;
    os.precision(17);
    os << j.get<double>();
    return num::parse<R>(os.str());
  }
  throw domain_error("expected a number, got " + j.dump());
}

template <class R>
Json json_complex(const Complex<R>& z) {
  return Json::array({json_real(z.re), json_real(z.im)});
}

template <class R>
Complex<R> complex_from_json(const Json& j) {
  if (j.is_array()) {
    if (j.size() != 2) throw domain_error("complex pair must have two entries: " + j.dump());
    return {real_from_json<R>(j[0]), real_from_json<R>(j[1])};
  }
  if (j.is_object()) {
    return {real_from_json<R>(j.at("re")), j.contains("im") ? real_from_json<R>(j.at("im")) : R(0)};
  }
  if (j.is_string()) {
    try {
      return parse_complex<R>(j.get<std::string>());
    } catch (const std::exception&) {
      throw domain_error("bad complex literal '" + j.get<std::string>() + "'");
    }
  }
  return {real_from_json<R>(j), R(0)};
}

template <class R>
Json json_of(const LogMonomialSum<R>& f) {
  Json terms = Json::array();
  for (const auto& t : f.terms()) {
    Json e;
    e["re"] = json_real(t.coeff.re);
    e["im"] = json_real(t.coeff.im);
    e["s_re"] = json_real(t.s.re);
    e["s_im"] = json_real(t.s.im);
    e["logpow"] = t.logpow;
    terms.push_back(std::move(e));
  }
  Json out;
  out["terms"] = std::move(terms);
  return out;
}

template <class R>
LogMonomialSum<R> log_monomial_from_json(const Json& j, const Context<R>& ctx) {
  try {
    std::vector<Term<R>> terms;
    for (const auto& e : j.at("terms")) {
      Term<R> t;
      t.coeff = {real_from_json<R>(e.at("re")), e.contains("im") ? real_from_json<R>(e.at("im")) : R(0)};
      t.s = {real_from_json<R>(e.at("s_re")), e.contains("s_im") ? real_from_json<R>(e.at("s_im")) : R(0)};
      t.logpow = e.value("logpow", 0);
      if (t.logpow < 0) throw domain_error("logpow must be nonnegative");
      require_half_plane(t.s, ctx);
      terms.push_back(t);
    }
    return LogMonomialSum<R>(std::move(terms), ctx);
  } catch (const Json::exception& e) {
    throw domain_error(std::string("malformed log-monomial JSON: ") + e.what());
  }
}

template <class R>
Json json_of(const ExponentMultiset<R>& s) {
  Json out = Json::array();
  for (const auto& e : s.entries()) {
    Json x;
    x["s"] = format(e.s);
    x["mult"] = e.mult;
    out.push_back(std::move(x));
  }
  return out;
}

template <class R>
ExponentMultiset<R> exponents_from_json(const Json& j, const Context<R>& ctx) {
  try {
    std::vector<ExponentEntry<R>> entries;
    for (const auto& e : j) {
      ExponentEntry<R> x;
      if (e.is_object()) {
        x.s = complex_from_json<R>(e.at("s"));
        x.mult = e.value("mult", 1);
      } else {
        x.s = complex_from_json<R>(e);
      }
      require_half_plane(x.s, ctx);
      entries.push_back(x);
    }
    return ExponentMultiset<R>(std::move(entries), ctx);
  } catch (const Json::exception& e) {
    throw domain_error(std::string("malformed exponent list: ") + e.what());
  }
}

template <class R>
Json json_of(const CMatrix<R>& a) {
  bool real = true;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k)
      if (a(i, k).im != 0) real = false;
  Json out = Json::array();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < a.cols(); ++k) row.push_back(real ? json_real(a(i, k).re) : json_complex(a(i, k)));
    out.push_back(std::move(row));
  }
  return out;
}

namespace {

template <class R>
Json json_poly(const Poly<R>& p) {
  Json out = Json::array();
  for (const auto& c : p) out.push_back(json_complex(c));
  return out;
}

template <class R>
Json json_reals(const std::vector<R>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(json_real(x));
  return out;
}

template <class R>
Json json_complexes(const std::vector<Complex<R>>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(json_complex(x));
  return out;
}

}  // namespace

template <class R>
Json json_of(const RationalFn<R>& a) {
  Json out;
  out["num"] = json_poly(a.num);
  out["den"] = json_poly(a.den);
  return out;
}

template <class R>
RationalFn<R> rational_fn_from_json(const Json& j) {
  RationalFn<R> a;
  try {
    for (const auto& c : j.at("num")) a.num.push_back(complex_from_json<R>(c));
    for (const auto& c : j.at("den")) a.den.push_back(complex_from_json<R>(c));
  } catch (const Json::exception& e) {
    throw domain_error(std::string("malformed rational function: ") + e.what());
  }
  if (degree(a.den) < 0) throw domain_error("rational function has zero denominator");
  return a;
}

template <class R>
Json json_of(const PartialFractionForm<R>& pf) {
  Json poles = Json::array();
  for (const auto& p : pf.poles) {
    Json x;
    x["lambda"] = json_complex(p.lambda);
    x["mult"] = p.mult;
    x["coeffs"] = json_complexes(p.coeffs);
    poles.push_back(std::move(x));
  }
  Json out;
  out["poles"] = std::move(poles);
  out["residual"] = json_real(pf.residual);
  return out;
}

template <class R>
Json json_of(const ScalingResult<R>& s) {
  Json out;
  out["C_N"] = json_real(s.c);
  out["gamma"] = json_complexes(s.gamma);
  out["min_eig_at_C"] = json_real(s.min_eig_at_c);
  out["kernel_dim"] = s.kernel_dim;
  out["degenerate"] = s.degenerate;
  out["bisection_trace"] = json_reals(s.min_eig_trace);
  return out;
}

template <class R>
MomentSequence<R> moments_from_json(const Json& j) {
  const Json& arr = j.is_object() ? j.at("m") : j;
  if (!arr.is_array()) throw domain_error("moments must be an array");
  MomentSequence<R> m;
  for (const auto& x : arr) m.m.push_back(complex_from_json<R>(x));
  if (m.m.empty()) throw domain_error("moment sequence is empty");
  return m;
}

template <class R>
Json json_of(const SubspaceSpec<R>& spec) {
  Json out;
  out["variant"] = to_string(spec.variant);
  switch (spec.variant) {
    case SpecVariant::Monomial: out["exponents"] = json_of(spec.exponents); break;
    case SpecVariant::Wandering: out["u"] = json_of(spec.u); break;
    case SpecVariant::Moments: out["m"] = json_complexes(spec.moments); break;
    case SpecVariant::Truncation: out["a"] = json_real(spec.a); break;
  }
  return out;
}

template <class R>
SubspaceSpec<R> subspace_spec_from_json(const Json& j, const Context<R>& ctx) {
  SubspaceSpec<R> spec;
  try {
    const std::string v = j.at("variant").get<std::string>();
    if (v == "monomial") {
      spec.variant = SpecVariant::Monomial;
      spec.exponents = exponents_from_json<R>(j.at("exponents"), ctx);
      if (spec.exponents.empty()) throw domain_error("monomial spec needs at least one exponent");
    } else if (v == "wandering") {
      spec.variant = SpecVariant::Wandering;
      spec.u = log_monomial_from_json<R>(j.at("u"), ctx);
    } else if (v == "moments") {
      spec.variant = SpecVariant::Moments;
      spec.moments = moments_from_json<R>(j.at("m")).m;
    } else if (v == "truncation") {
      spec.variant = SpecVariant::Truncation;
      spec.a = real_from_json<R>(j.at("a"));
      if (!(spec.a > 0 && spec.a < 1)) throw domain_error("truncation parameter a must lie in (0,1)");
    } else {
      throw domain_error("unknown subspace variant '" + v + "'");
    }
  } catch (const Json::exception& e) {
    throw domain_error(std::string("malformed subspace spec: ") + e.what());
  }
  return spec;
}

template <class R>
std::vector<TestFunction<R>> tests_from_json(const Json& j, const Context<R>& ctx) {
  std::vector<TestFunction<R>> out;
  if (!j.is_array()) throw domain_error("test functions must be a JSON array");
  int k = 0;
  for (const auto& e : j) {
    TestFunction<R> t;
    t.g = log_monomial_from_json<R>(e.contains("fn") ? e.at("fn") : e, ctx);
    if (e.contains("cutoff")) t.cutoff = real_from_json<R>(e.at("cutoff"));
    if (t.cutoff < 0 || t.cutoff >= R(1)) throw domain_error("test-function cutoff must lie in [0, 1)");
    t.label = e.value("label", "test_" + std::to_string(k));
    out.push_back(std::move(t));
    ++k;
  }
  return out;
}

template <class R>
Json json_of(const ApproxRecord<R>& rec, const std::vector<TestFunction<R>>& tests) {
  Json out;
  out["N"] = rec.n;
  out["bits"] = precision_bits<R>();
  out["C_N"] = json_real(rec.scaling.c);
  out["scaling"] = json_of(rec.scaling);
  out["moments"] = json_complexes(rec.moments.m);
  out["values"] = json_complexes(rec.values);
  Json supp = Json::array();
  for (auto i : rec.support) supp.push_back(i);
  out["support"] = std::move(supp);
  out["alpha"] = json_of(rec.alpha);
  out["partial_fractions"] = json_of(rec.pf);
  out["exponents_full"] = json_of(rec.exponents.full);
  out["exponents"] = json_of(rec.exponents.reduced);
  out["num_exponents"] = rec.exponents.reduced.dimension();
  out["u_N"] = json_of(rec.u_n);
  out["interpolation_residual"] = json_real(rec.interpolation_residual);
  out["moment_residuals"] = json_reals(rec.moment_residuals);
  out["max_moment_residual"] = json_real(rec.max_moment_residual);
  out["alpha_at_minus1"] = json_complex(rec.alpha_at_minus1);
  out["max_abs_alpha"] = json_real(rec.max_abs_alpha);
  Json dist = Json::array();
  for (std::size_t k = 0; k < rec.distances.size(); ++k) {
    Json d;
    d["label"] = k < tests.size() ? tests[k].label : "test_" + std::to_string(k);
    d["dist"] = json_real(rec.distances[k]);
    dist.push_back(std::move(d));
  }
  out["distances"] = std::move(dist);
  out["warnings"] = rec.warnings;
  return out;
}

Json json_of(const StageFailure& f) {
  Json out;
  out["N"] = f.n;
  out["kind"] = to_string(f.kind);
  out["stage"] = f.stage;
  out["message"] = f.message;
  if (f.required_bits) out["required_bits"] = f.required_bits;
  return out;
}

std::string report_csv(const Json& report) {
  std::vector<std::string> labels;
  const auto& recs = report.at("records");
  for (const auto& r : recs)
    for (const auto& d : r.at("distances")) {
      const auto l = d.at("label").get<std::string>();
      if (std::find(labels.begin(), labels.end(), l) == labels.end()) labels.push_back(l);
    }
  std::ostringstream os;
  os << "N,C_N,num_exponents,max_moment_residual";
  for (const auto& l : labels) os << ",dist:" << l;
  os << "\n";
  for (const auto& r : recs) {
    os << r.at("N").get<int>() << "," << r.at("C_N").get<std::string>() << "," << r.at("num_exponents").get<int>()
       << "," << r.at("max_moment_residual").get<std::string>();
    for (const auto& l : labels) {
      os << ",";
      for (const auto& d : r.at("distances"))
        if (d.at("label").get<std::string>() == l) os << d.at("dist").get<std::string>();
    }
    os << "\n";
  }
  return os.str();
}

#define HARDY_INST_ALL(R)                                                                          \
  template Json json_real(const R&);                                                               \
  template R real_from_json<R>(const Json&);                                                       \
  template Json json_complex(const Complex<R>&);                                                   \
  template Complex<R> complex_from_json<R>(const Json&);                                           \
  template Json json_of(const LogMonomialSum<R>&);                                                 \
  template LogMonomialSum<R> log_monomial_from_json(const Json&, const Context<R>&);                \
  template Json json_of(const ExponentMultiset<R>&);                                               \
  template ExponentMultiset<R> exponents_from_json(const Json&, const Context<R>&);                 \
  template Json json_of(const CMatrix<R>&);                                                        \
  template MomentSequence<R> moments_from_json<R>(const Json&);

#define HARDY_INST_FLOAT(R)                                                                        \
  template Json json_of(const RationalFn<R>&);                                                     \
  template RationalFn<R> rational_fn_from_json<R>(const Json&);                                    \
  template Json json_of(const PartialFractionForm<R>&);                                            \
  template Json json_of(const ScalingResult<R>&);                                                  \
  template Json json_of(const SubspaceSpec<R>&);                                                   \
  template SubspaceSpec<R> subspace_spec_from_json(const Json&, const Context<R>&);                \
  template std::vector<TestFunction<R>> tests_from_json(const Json&, const Context<R>&);           \
  template Json json_of(const ApproxRecord<R>&, const std::vector<TestFunction<R>>&);

HARDY_FOR_ALL(HARDY_INST_ALL)
HARDY_FOR_FLOATS(HARDY_INST_FLOAT)

}  // namespace hardy
