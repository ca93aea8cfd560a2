#pragma once

// Precision dispatch and the JSON-level drivers used by the command line:
// multi-precision approximation sweeps with automatic escalation, and the
// recovery and roots-of-unity experiments.

#include "hardy/serialize.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hardy {

/// Tolerance overrides as decimal strings, parsed at the working precision.
/// Keys: psd_tol (multiplier on d * eps * ||A||), root_cluster_tol,
/// membership_tol, exponent_merge_tol, k_max.
using Overrides = std::map<std::string, std::string>;

template <class R>
Context<R> make_context(const Overrides& o);

bool valid_bits(int bits);

/// Calls f.template operator()<R>() with R the backend for `bits`.
template <class F>
decltype(auto) with_precision(int bits, F&& f) {
  switch (bits) {
    case 53: return f.template operator()<double>();
    case 128: return f.template operator()<Float128>();
    case 256: return f.template operator()<Float256>();
    case 512: return f.template operator()<Float512>();
  }
  throw domain_error("bits must be one of 53, 128, 256, 512 (got " + std::to_string(bits) + ")");
}

/// Process exit status for an error kind: 3 for precision problems, 2 otherwise.
int exit_code_for(ErrorKind kind);

struct RunOptions {
  int bits = 0;          // 0: choose per N from the default ladder
  bool escalate = true;  // retry ill-conditioned / non-converged N at higher precision
  Overrides overrides;
};

/// Report JSON: {"spec", "k0", "wandering", "records", "failures", "escalations"}.
Json run_approximation(const Json& spec, const std::vector<int>& ns, const Json& tests, const RunOptions& opt);

/// Monomial spec of dimension d: runs N = d .. d+extra and reports C_N - 1 and
/// the largest exponent error against the input multiset.
Json run_recovery(const Json& spec, int extra, const RunOptions& opt);

/// Parses "1..12", "3", "1,2,5" or a mix like "1..4,8".
std::vector<int> parse_int_list(const std::string& text);

}  // namespace hardy
