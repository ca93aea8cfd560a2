#pragma once

// Pick matrices for operators commuting with H, PSD verdicts, and the
// largest scaling constant C_N that keeps the moment Pick matrix PSD.

#include "hardy/context.hpp"
#include "hardy/linalg.hpp"

#include <vector>

namespace hardy {

template <class R>
struct PickSystem {
  std::vector<Complex<R>> points;  // s_i, distinct, in the half plane
  std::vector<Complex<R>> values;  // alpha(s_i)
  R bound{1};                      // M > 0
};

/// ((M^2 - conj(alpha_i) alpha_j) / (1 + conj(s_i) + s_j))_{ij}
template <class R>
CMatrix<R> pick_matrix(const PickSystem<R>& sys, const Context<R>& ctx);

template <class R>
struct PsdReport {
  bool psd = false;
  R min_eigenvalue;  // Jacobi estimate (equals min_pivot in exact mode)
  R min_pivot;
  R tol;
};

/// Verdict from pivoted LDL^* at tolerance tol, plus an eigenvalue estimate.
template <class R>
PsdReport<R> is_psd(const CMatrix<R>& a, const R& tol);

/// Default tolerance d * eps * ||A|| scaled by ctx.psd_scale.
template <class R>
R default_psd_tol(const CMatrix<R>& a, const Context<R>& ctx);

/// m[i] = <x^i, u>, i = 0..N.
template <class R>
struct MomentSequence {
  std::vector<Complex<R>> m;
  int n() const { return static_cast<int>(m.size()) - 1; }
};

template <class R>
struct ScalingResult {
  R c;                          // C_N
  std::vector<Complex<R>> gamma;  // unit kernel vector, first nonzero entry real positive
  std::vector<R> min_eig_trace;   // smallest LDL pivot at each bisection step
  R min_eig_at_c;               // smallest eigenvalue of K - C_N^2 B
  int kernel_dim = 1;
  bool degenerate = false;      // kernel dimension > 1
};

/// K - c2 B with K(i,j) = 1/(1+i+j), B(i,j) = conj(beta_i) beta_j / (1+i+j),
/// beta_i = (i+1) m_i.
template <class R>
CMatrix<R> scaled_moment_pick(const MomentSequence<R>& m, const R& c2);

/// Largest C with K - C^2 B PSD, by bisection on C^2 with LDL PSD tests,
/// then a Rayleigh-quotient refinement at the kernel vector.
template <class R>
ScalingResult<R> max_scaling_constant(const MomentSequence<R>& m, const Context<R>& ctx);

/// Mantissa bits the scaling step needs for N+1 moments (Hilbert conditioning).
int scaling_bits_needed(int n);

}  // namespace hardy
