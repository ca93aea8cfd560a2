#include "hardy/driver.hpp"

#include <algorithm>
#include <limits>

namespace hardy {

template <class R>
Context<R> make_context(const Overrides& o) {
  auto ctx = Context<R>::defaults();
  auto real = [&](const char* key, R& field) {
    auto it = o.find(key);
    if (it == o.end()) return;
    R v = num::parse<R>(it->second);
    if (!(v > 0)) throw domain_error(std::string(key) + " must be positive");
    field = v;
  };
  real("psd_tol", ctx.psd_scale);
  real("root_cluster_tol", ctx.root_cluster_tol);
  real("membership_tol", ctx.membership_tol);
  real("exponent_merge_tol", ctx.exponent_merge_tol);
  if (auto it = o.find("k_max"); it != o.end()) {
    ctx.k_max = std::stoi(it->second);
    if (ctx.k_max < 0) throw domain_error("k_max must be nonnegative");
  }
  return ctx;
}

template Context<double> make_context<double>(const Overrides&);
template Context<Float128> make_context<Float128>(const Overrides&);
template Context<Float256> make_context<Float256>(const Overrides&);
template Context<Float512> make_context<Float512>(const Overrides&);

bool valid_bits(int bits) { return bits == 53 || bits == 128 || bits == 256 || bits == 512; }

int exit_code_for(ErrorKind kind) {
  return kind == ErrorKind::IllConditioned || kind == ErrorKind::Convergence ? 3 : 2;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    const std::string item = text.substr(pos, comma - pos);
    pos = comma + 1;
    if (item.empty()) continue;
    try {
      const auto dots = item.find("..");
      if (dots == std::string::npos) {
        out.push_back(std::stoi(item));
      } else {
        const int lo = std::stoi(item.substr(0, dots));
        const int hi = std::stoi(item.substr(dots + 2));
        if (hi < lo) throw domain_error("empty range '" + item + "'");
        for (int k = lo; k <= hi; ++k) out.push_back(k);
      }
    } catch (const std::logic_error&) {
      throw domain_error("cannot parse integer list '" + text + "'");
    }
  }
  if (out.empty()) throw domain_error("empty integer list");
  return out;
}

namespace {

template <class R>
struct PrecisionState {
  std::optional<SubspaceSpec<R>> spec;
  std::optional<WanderingVector<R>> wandering;
  std::vector<TestFunction<R>> tests;
};

// Runs one N at precision R; returns the record JSON or rethrows.
template <class R>
Json run_one(PrecisionState<R>& st, const Json& spec_json, const Json& tests_json, int n, const Overrides& o,
             Json& report) {
  const auto ctx = make_context<R>(o);
  if (!st.spec) {
    st.spec = subspace_spec_from_json<R>(spec_json, ctx);
    if (!tests_json.is_null()) st.tests = tests_from_json<R>(tests_json, ctx);
    try {
      st.wandering = wandering_vector(*st.spec, ctx);
    } catch (const Error& e) {
      throw e.with_stage("wandering");
    }
    if (report["k0"].is_null() && st.wandering->k0 >= 0) report["k0"] = st.wandering->k0;
    if (report["wandering"].is_null() && st.wandering->materialized) {
      report["wandering"] = json_of(st.wandering->u);
      auto diag = validate_wandering(st.wandering->u, 4, ctx);
      report["wandering_check"] = {{"max_violation", json_real(diag.max_violation)}, {"warning", diag.warning}};
    }
  }
  auto rec = approximate_one(*st.spec, *st.wandering, n, st.tests, ctx);
  return json_of(rec, st.tests);
}

int next_bits(int bits) {
  if (bits < 128) return 128;
  if (bits < 256) return 256;
  return 512;
}

}  // namespace

Json run_approximation(const Json& spec, const std::vector<int>& ns, const Json& tests, const RunOptions& opt) {
  if (opt.bits != 0 && !valid_bits(opt.bits)) throw domain_error("bits must be one of 53, 128, 256, 512");
  Json report;
  report["spec"] = spec;
  report["k0"] = nullptr;
  report["wandering"] = nullptr;
  report["records"] = Json::array();
  report["failures"] = Json::array();
  report["escalations"] = Json::array();

  PrecisionState<double> s53;
  PrecisionState<Float128> s128;
  PrecisionState<Float256> s256;
  PrecisionState<Float512> s512;
  for (int n : ns) {
    int bits = opt.bits ? opt.bits : default_bits_for(n);
    for (;;) {
      try {
        Json rec;
        switch (bits) {
          case 53: rec = run_one(s53, spec, tests, n, opt.overrides, report); break;
          case 128: rec = run_one(s128, spec, tests, n, opt.overrides, report); break;
          case 256: rec = run_one(s256, spec, tests, n, opt.overrides, report); break;
          default: rec = run_one(s512, spec, tests, n, opt.overrides, report); break;
        }
        report["records"].push_back(std::move(rec));
        break;
      } catch (const Error& e) {
        // Spec-level problems are not tied to one N.
        if (e.stage() == "wandering" || e.stage().empty()) throw;
        const bool retry = opt.escalate && bits < 512 &&
                           (e.kind() == ErrorKind::IllConditioned || e.kind() == ErrorKind::Convergence);
        if (!retry) {
          report["failures"].push_back(json_of(StageFailure{n, e.kind(), e.stage(), e.what(), e.required_bits()}));
          break;
        }
        const int to = std::max(next_bits(bits), ladder_bits(e.required_bits()));
        report["escalations"].push_back({{"N", n}, {"from", bits}, {"to", to}, {"reason", e.what()}});
        bits = to;
      }
    }
  }
  return report;
}

namespace {

template <class R>
std::vector<Complex<R>> expand(const ExponentMultiset<R>& s) {
  std::vector<Complex<R>> out;
  for (const auto& e : s.entries())
    for (int k = 0; k < e.mult; ++k) out.push_back(e.s);
  return out;
}

// Greedy nearest matching; returns +inf on a size mismatch.
template <class R>
double exponent_error(const ExponentMultiset<R>& truth, const ExponentMultiset<R>& got) {
  auto a = expand(truth);
  auto b = expand(got);
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  std::vector<bool> used(b.size(), false);
  double worst = 0;
  for (const auto& x : a) {
    std::size_t best = b.size();
    double bd = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (used[k]) continue;
      const double d = num::to_double(abs(x - b[k]));
      if (d < bd) {
        bd = d;
        best = k;
      }
    }
    used[best] = true;
    worst = std::max(worst, bd);
  }
  return worst;
}

template <class R>
Json recovery_row(const Json& spec_json, int n, const Overrides& o) {
  const auto ctx = make_context<R>(o);
  auto spec = subspace_spec_from_json<R>(spec_json, ctx);
  auto w = wandering_vector(spec, ctx);
  auto rec = approximate_one(spec, w, n, {}, ctx);
  Json row;
  row["N"] = n;
  row["bits"] = precision_bits<R>();
  row["C_N_minus_1"] = json_real(rec.scaling.c - R(1));
  row["exponents"] = json_of(rec.exponents.reduced);
  const double err = exponent_error(spec.exponents, rec.exponents.reduced);
  row["dimension_match"] = std::isfinite(err);
  if (std::isfinite(err)) {
    row["max_exponent_error"] = num::format(err);
  } else {
    row["max_exponent_error"] = nullptr;
  }
  return row;
}

}  // namespace

Json run_recovery(const Json& spec, int extra, const RunOptions& opt) {
  if (spec.value("variant", "") != "monomial") throw domain_error("recovery experiment needs a monomial spec");
  if (extra < 0) throw domain_error("extra must be nonnegative");
  const auto ctx = Context<double>::defaults();
  const int d = exponents_from_json<double>(spec.at("exponents"), ctx).dimension();
  Json out;
  out["spec"] = spec;
  out["dimension"] = d;
  out["rows"] = Json::array();
  out["failures"] = Json::array();
  for (int n = d; n <= d + extra; ++n) {
    int bits = opt.bits ? opt.bits : std::max(128, default_bits_for(n));
    for (;;) {
      try {
        out["rows"].push_back(with_precision(bits, [&]<class R>() { return recovery_row<R>(spec, n, opt.overrides); }));
        break;
      } catch (const Error& e) {
        const bool retry = opt.escalate && bits < 512 &&
                           (e.kind() == ErrorKind::IllConditioned || e.kind() == ErrorKind::Convergence);
        if (!retry) {
          out["failures"].push_back(json_of(StageFailure{n, e.kind(), e.stage(), e.what(), e.required_bits()}));
          break;
        }
        bits = std::max(next_bits(bits), ladder_bits(e.required_bits()));
      }
    }
  }
  return out;
}

}  // namespace hardy
