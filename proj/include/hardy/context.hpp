#pragma once

#include "hardy/scalar.hpp"

namespace hardy {

/// Tolerances for one precision setting. Passed explicitly to every
/// operation that has to decide equality, rank or convergence.
template <class R>
struct Context {
  R exponent_merge_tol;   // exponents closer than this are the same exponent
  R half_plane_margin;    // Re s must exceed -1/2 + margin
  R psd_scale;            // psd_tol = psd_scale * d * eps * ||A||
  R root_cluster_tol;     // roots closer than this are one multiple root
  R membership_tol;       // dist(e_k, S) below this means e_k is in Mult(S)
  R bisection_tol;        // relative width for C_N^2 bisection
  int k_max = 32;         // Laguerre index search bound for k0

  static Context defaults() {
    Context c;
    c.half_plane_margin = R(1) / R(1000000000000LL);  // 1e-12
    c.psd_scale = R(8);
    c.k_max = 32;
    if constexpr (is_exact_v<R>) {
      c.exponent_merge_tol = R(0);
      c.root_cluster_tol = R(0);
      c.membership_tol = R(0);
      c.bisection_tol = R(0);
    } else {
      constexpr int bits = precision_bits<R>();
      c.membership_tol = R(1) / R(1000000000);
      if constexpr (bits <= 53) {
        c.exponent_merge_tol = R(1) / R(1000000000);
        c.root_cluster_tol = R(1) / R(1000000);
      } else {
        c.exponent_merge_tol = num::ldexp(R(1), -bits / 2);
        c.root_cluster_tol = num::ldexp(R(1), -bits / 4);
      }
      c.bisection_tol = num::ldexp(R(1), -bits / 3);
    }
    return c;
  }

  /// Absolute PSD tolerance for a d x d matrix with max-entry magnitude scale.
  R psd_tol(std::size_t d, const R& scale) const {
    return psd_scale * R(static_cast<long>(d)) * num::epsilon<R>() * scale;
  }
};

}  // namespace hardy
