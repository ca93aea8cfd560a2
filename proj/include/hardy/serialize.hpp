#pragma once

// JSON and CSV encodings. Reals are written as decimal strings with
// serial_digits<R>() significant digits (or "p/q" in exact mode) so that
// nothing is lost through a double; readers accept strings or JSON numbers.

#include "hardy/pipeline.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace hardy {

using Json = nlohmann::ordered_json;

template <class R>
Json json_real(const R& x);
template <class R>
R real_from_json(const Json& j);

/// [re, im]
template <class R>
Json json_complex(const Complex<R>& z);
/// Accepts [re, im], {"re":..,"im":..}, "a+bi" or a plain number.
template <class R>
Complex<R> complex_from_json(const Json& j);

/// {"terms":[{"re","im","s_re","s_im","logpow"}]}
template <class R>
Json json_of(const LogMonomialSum<R>& f);
template <class R>
LogMonomialSum<R> log_monomial_from_json(const Json& j, const Context<R>& ctx);

/// [{"s":"1","mult":1}]
template <class R>
Json json_of(const ExponentMultiset<R>& s);
template <class R>
ExponentMultiset<R> exponents_from_json(const Json& j, const Context<R>& ctx);

template <class R>
Json json_of(const CMatrix<R>& a);

template <class R>
Json json_of(const RationalFn<R>& a);
template <class R>
RationalFn<R> rational_fn_from_json(const Json& j);

template <class R>
Json json_of(const PartialFractionForm<R>& pf);

template <class R>
Json json_of(const ScalingResult<R>& s);

/// {"m":[...]} or a bare array.
template <class R>
MomentSequence<R> moments_from_json(const Json& j);

template <class R>
Json json_of(const SubspaceSpec<R>& spec);
template <class R>
SubspaceSpec<R> subspace_spec_from_json(const Json& j, const Context<R>& ctx);

/// [{"label":..., "fn":{terms...}, "cutoff":0.25}]; cutoff optional.
template <class R>
std::vector<TestFunction<R>> tests_from_json(const Json& j, const Context<R>& ctx);

template <class R>
Json json_of(const ApproxRecord<R>& rec, const std::vector<TestFunction<R>>& tests);

Json json_of(const StageFailure& f);

/// One CSV row per record: N, C_N, num_exponents, max_moment_residual, dist:<label>...
std::string report_csv(const Json& report);

}  // namespace hardy
