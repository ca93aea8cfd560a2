#include "hardy/pipeline.hpp"

#include "hardy/laguerre.hpp"
#include "instantiate.hpp"

#include <algorithm>

namespace hardy {

const char* to_string(SpecVariant v) {
  switch (v) {
    case SpecVariant::Monomial: return "monomial";
    case SpecVariant::Wandering: return "wandering";
    case SpecVariant::Moments: return "moments";
    case SpecVariant::Truncation: return "truncation";
  }
  return "unknown";
}

int default_bits_for(int n) {
  if (n <= 8) return 53;
  if (n <= 12) return 128;
  if (n <= 16) return 256;
  return 512;
}

template <class R>
WanderingVector<R> wandering_vector(const SubspaceSpec<R>& spec, const Context<R>& ctx) {
  WanderingVector<R> w;
  switch (spec.variant) {
    case SpecVariant::Monomial: {
      if (spec.exponents.empty()) throw domain_error("monomial spec needs at least one exponent");
      for (int k = 0; k <= ctx.k_max; ++k) {
        auto ek = laguerre_fn(k, ctx);
        auto eta = subtract(ek, project(ek, spec.exponents, ctx), ctx);
        const R n2 = norm_squared(eta, ctx);
        if (n2 > 0 && num::sqrt(n2) > ctx.membership_tol) {
          w.k0 = k;
          w.materialized = true;
          w.u = scale(eta, Complex<R>(R(1) / num::sqrt(n2)), ctx);
          return w;
        }
      }
      throw Error(ErrorKind::Dense, "space appears dense: e_0..e_" + std::to_string(ctx.k_max) + " all lie in Mult(S)");
    }
    case SpecVariant::Wandering: {
      const R n2 = norm_squared(spec.u, ctx);
      const R tol = std::max(ctx.membership_tol, R(1000) * num::epsilon<R>());
      if (num::abs(n2 - R(1)) > tol) throw domain_error("wandering vector must have unit norm (got ||u||^2 = " + num::format(n2) + ")");
      for (const auto& t : spec.u.terms()) require_half_plane(t.s, ctx);
      w.materialized = true;
      w.u = spec.u;
      return w;
    }
    case SpecVariant::Moments:
      if (spec.moments.empty()) throw domain_error("moment spec needs at least one moment");
      return w;
    case SpecVariant::Truncation:
      if (!(spec.a > 0 && spec.a < 1)) throw domain_error("truncation point must lie in (0, 1)");
      return w;
  }
  return w;
}

template <class R>
MomentSequence<R> spec_moments(const SubspaceSpec<R>& spec, const WanderingVector<R>& w, int n,
                               const Context<R>& ctx) {
  MomentSequence<R> m;
  if (n < 0) throw domain_error("N must be nonnegative");
  if (w.materialized) {
    for (int i = 0; i <= n; ++i) {
      m.m.push_back(inner_product(LogMonomialSum<R>::monomial(Complex<R>(R(i))), w.u, ctx));
    }
    return m;
  }
  if (spec.variant == SpecVariant::Moments) {
    if (static_cast<int>(spec.moments.size()) < n + 1) {
      throw domain_error("N = " + std::to_string(n) + " needs " + std::to_string(n + 1) + " moments, got " +
                         std::to_string(spec.moments.size()));
    }
    m.m.assign(spec.moments.begin(), spec.moments.begin() + n + 1);
    return m;
  }
  // u = chi_[0,a] / sqrt(a): m_i = a^{i+1} / ((i+1) sqrt a).
  const R ra = num::sqrt(spec.a);
  R pw = spec.a;
  for (int i = 0; i <= n; ++i) {
    m.m.push_back(Complex<R>(pw / (R(i + 1) * ra)));
    pw *= spec.a;
  }
  return m;
}

template <class R>
WanderingDiagnostics<R> validate_wandering(const LogMonomialSum<R>& u, int k, const Context<R>& ctx) {
  WanderingDiagnostics<R> d;
  LogMonomialSum<R> v = u;
  for (int j = 0; j <= k; ++j) {
    const Complex<R> ip = inner_product(v, u, ctx) - Complex<R>(R(j == 0 ? 1 : 0));
    const R viol = abs(ip);
    d.violations.push_back(viol);
    d.max_violation = std::max(d.max_violation, viol);
    v = apply_shift(v, ctx);
  }
  const R tol = std::max(ctx.membership_tol, R(1000) * num::epsilon<R>());
  d.warning = d.max_violation > tol;
  return d;
}

namespace {

[[noreturn]] void rethrow_at(const Error& e, const char* stage) {
  throw e.with_stage(stage);
}

// 100 points spread over Re s > -1/2.
template <class R>
std::vector<Complex<R>> contractivity_grid() {
  static const int sig[10] = {-49, -40, -25, 0, 50, 100, 200, 400, 800, 1600};
  static const int tau[10] = {0, 50, -50, 100, -100, 300, -300, 1000, -1000, 10000};
  std::vector<Complex<R>> g;
  for (int a : sig)
    for (int b : tau) g.emplace_back(R(a) / R(100), R(b) / R(100));
  return g;
}

}  // namespace

template <class R>
ApproxRecord<R> approximate_one(const SubspaceSpec<R>& spec, const WanderingVector<R>& w, int n,
                                const std::vector<TestFunction<R>>& tests, const Context<R>& ctx) {
  ApproxRecord<R> rec;
  rec.n = n;
  try {
    rec.moments = spec_moments(spec, w, n, ctx);
  } catch (const Error& e) {
    rethrow_at(e, "moments");
  }
  try {
    rec.scaling = max_scaling_constant(rec.moments, ctx);
  } catch (const Error& e) {
    rethrow_at(e, "scaling");
  }
  if (rec.scaling.degenerate) {
    rec.warnings.push_back("kernel of the critical Pick matrix has dimension " +
                           std::to_string(rec.scaling.kernel_dim));
  }
  const R c = rec.scaling.c;
  for (int i = 0; i <= n; ++i) rec.values.push_back(rec.moments.m[i] * (c * R(i + 1)));
  try {
    rec.support = gamma_support(rec.scaling.gamma);
    rec.alpha = build_alpha(rec.scaling.gamma, rec.values, ctx);
  } catch (const Error& e) {
    rethrow_at(e, "build_alpha");
  }
  try {
    rec.pf = partial_fractions_over_splus1(rec.alpha, ctx);
  } catch (const Error& e) {
    rethrow_at(e, "partial_fractions");
  }
  try {
    rec.u_n = inverse_laplace_uN(rec.pf, ctx);
  } catch (const Error& e) {
    rethrow_at(e, "inverse_laplace");
  }
  try {
    rec.exponents = exponent_multiset_from_poles(rec.pf, ctx);
  } catch (const Error& e) {
    rethrow_at(e, "exponents");
  }

  try {
    for (auto i : rec.support) {
      const R err = abs(eval(rec.alpha, Complex<R>(R(static_cast<long>(i)))) - rec.values[i]);
      rec.interpolation_residual = std::max(rec.interpolation_residual, err);
    }
    for (int i = 0; i <= n; ++i) {
      const Complex<R> mi = inner_product(LogMonomialSum<R>::monomial(Complex<R>(R(i))), rec.u_n, ctx);
      const R r = abs(mi - rec.moments.m[i]);
      rec.moment_residuals.push_back(r);
      rec.max_moment_residual = std::max(rec.max_moment_residual, r);
    }
    rec.alpha_at_minus1 = eval(rec.alpha, Complex<R>(R(-1)));
    for (const auto& s : contractivity_grid<R>()) rec.max_abs_alpha = std::max(rec.max_abs_alpha, abs(eval(rec.alpha, s)));
    if (rec.max_abs_alpha > R(1) + R(1) / R(100000000)) {
      rec.warnings.push_back("alpha_N exceeds 1 on the contractivity grid: " + num::format(rec.max_abs_alpha));
    }
    if (rec.pf.residual > num::sqrt(num::epsilon<R>())) {
      rec.warnings.push_back("partial fraction residual " + num::format(rec.pf.residual));
    }
    for (const auto& t : tests) rec.distances.push_back(dist_to_space(t, rec.exponents.reduced, ctx));
  } catch (const Error& e) {
    rethrow_at(e, "diagnostics");
  }
  return rec;
}

template <class R>
ApproximationReport<R> approximate(const SubspaceSpec<R>& spec, const std::vector<int>& ns,
                                   const std::vector<TestFunction<R>>& tests, const Context<R>& ctx) {
  ApproximationReport<R> rep;
  try {
    rep.wandering = wandering_vector(spec, ctx);
  } catch (const Error& e) {
    throw e.with_stage("wandering");
  }
  for (int n : ns) {
    try {
      rep.records.push_back(approximate_one(spec, rep.wandering, n, tests, ctx));
    } catch (const Error& e) {
      rep.failures.push_back({n, e.kind(), e.stage(), e.what(), e.required_bits()});
    }
  }
  return rep;
}

template <class R>
std::vector<std::vector<R>> convergence_diagnostics(const ApproximationReport<R>& report,
                                                    const std::vector<TestFunction<R>>& tests,
                                                    const Context<R>& ctx) {
  std::vector<std::vector<R>> table;
  for (const auto& t : tests) {
    std::vector<R> row;
    for (const auto& rec : report.records) row.push_back(dist_to_space(t, rec.exponents.reduced, ctx));
    table.push_back(std::move(row));
  }
  return table;
}

#define HARDY_INST_FLOAT(R)                                                                                    \
  template WanderingVector<R> wandering_vector(const SubspaceSpec<R>&, const Context<R>&);                     \
  template MomentSequence<R> spec_moments(const SubspaceSpec<R>&, const WanderingVector<R>&, int,              \
                                          const Context<R>&);                                                  \
  template WanderingDiagnostics<R> validate_wandering(const LogMonomialSum<R>&, int, const Context<R>&);       \
  template ApproxRecord<R> approximate_one(const SubspaceSpec<R>&, const WanderingVector<R>&, int,             \
                                           const std::vector<TestFunction<R>>&, const Context<R>&);            \
  template ApproximationReport<R> approximate(const SubspaceSpec<R>&, const std::vector<int>&,                 \
                                              const std::vector<TestFunction<R>>&, const Context<R>&);         \
  template std::vector<std::vector<R>> convergence_diagnostics(const ApproximationReport<R>&,                  \
                                                               const std::vector<TestFunction<R>>&,            \
                                                               const Context<R>&);

HARDY_FOR_FLOATS(HARDY_INST_FLOAT)

}  // namespace hardy
