#pragma once

// End-to-end approximation of an H-invariant subspace by monomial spaces:
// wandering vector -> moments -> C_N, gamma -> alpha_N -> u_N, Mult_N.

#include "hardy/errors.hpp"
#include "hardy/monomial_geometry.hpp"
#include "hardy/pick.hpp"
#include "hardy/rational.hpp"

#include <string>
#include <vector>

namespace hardy {

enum class SpecVariant { Monomial, Wandering, Moments, Truncation };

const char* to_string(SpecVariant v);

/// The subspace to approximate. Only the fields of the active variant are used.
///   Monomial:   M = Mult(exponents)
///   Wandering:  M^perp generated by the unit vector u
///   Moments:    m_i = <x^i, u> given directly
///   Truncation: M = { f : f = 0 on [0, a] }
template <class R>
struct SubspaceSpec {
  SpecVariant variant = SpecVariant::Monomial;
  ExponentMultiset<R> exponents;
  LogMonomialSum<R> u;
  std::vector<Complex<R>> moments;
  R a{0};
};

template <class R>
struct WanderingVector {
  int k0 = -1;               // first Laguerre index outside Mult(S) (monomial specs)
  bool materialized = false;  // false for moment-only specs
  LogMonomialSum<R> u;
};

/// Throws Dense when every e_k (k <= ctx.k_max) lies in Mult(S).
template <class R>
WanderingVector<R> wandering_vector(const SubspaceSpec<R>& spec, const Context<R>& ctx);

/// m_0..m_n.
template <class R>
MomentSequence<R> spec_moments(const SubspaceSpec<R>& spec, const WanderingVector<R>& w, int n,
                               const Context<R>& ctx);

template <class R>
struct WanderingDiagnostics {
  std::vector<R> violations;  // |<(1-H*)^k u, u> - delta_k0|
  R max_violation{0};
  bool warning = false;
};

template <class R>
WanderingDiagnostics<R> validate_wandering(const LogMonomialSum<R>& u, int k, const Context<R>& ctx);

/// Everything computed for one N.
template <class R>
struct ApproxRecord {
  int n = 0;
  MomentSequence<R> moments;
  ScalingResult<R> scaling;
  std::vector<Complex<R>> values;  // C_N (i+1) m_i
  std::vector<std::size_t> support;
  RationalFn<R> alpha;
  PartialFractionForm<R> pf;
  PoleExponents<R> exponents;
  LogMonomialSum<R> u_n;
  R interpolation_residual{0};      // max |alpha_N(i) - values_i| on supp gamma
  std::vector<R> moment_residuals;  // |<x^i, u_N> - m_i|
  R max_moment_residual{0};
  Complex<R> alpha_at_minus1;
  R max_abs_alpha{0};               // over the contractivity grid
  std::vector<R> distances;         // per test function
  std::vector<std::string> warnings;
};

/// Runs every stage for one N; failures are rethrown with the stage name.
template <class R>
ApproxRecord<R> approximate_one(const SubspaceSpec<R>& spec, const WanderingVector<R>& w, int n,
                                const std::vector<TestFunction<R>>& tests, const Context<R>& ctx);

struct StageFailure {
  int n = 0;
  ErrorKind kind = ErrorKind::Domain;
  std::string stage;
  std::string message;
  int required_bits = 0;
};

template <class R>
struct ApproximationReport {
  WanderingVector<R> wandering;
  std::vector<ApproxRecord<R>> records;  // in the order requested
  std::vector<StageFailure> failures;
};

/// Append-only sweep at one precision: a failing N is recorded and skipped.
template <class R>
ApproximationReport<R> approximate(const SubspaceSpec<R>& spec, const std::vector<int>& ns,
                                   const std::vector<TestFunction<R>>& tests, const Context<R>& ctx);

/// dist(f, Mult_N) with rows = test functions, columns = records.
template <class R>
std::vector<std::vector<R>> convergence_diagnostics(const ApproximationReport<R>& report,
                                                    const std::vector<TestFunction<R>>& tests,
                                                    const Context<R>& ctx);

/// Starting precision for a given N: 53 up to 8, then 128, 256, 512.
int default_bits_for(int n);

}  // namespace hardy
