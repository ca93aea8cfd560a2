#pragma once

#include <stdexcept>
#include <string>

namespace hardy {

enum class ErrorKind {
  Domain,          // argument outside the mathematical domain
  IllConditioned,  // working precision too small for the requested size
  Convergence,     // iterative solver did not converge; retry at higher precision
  Degenerate,      // kernel or subspace degenerates (e.g. empty Mult_N)
  Anomaly,         // alpha(-1) == 0 on a path where that cannot happen
  Dense,           // every probed Laguerre vector lies in the space
  Unbounded,       // all moments vanish, scaling constant is infinite
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, int required_bits = 0)
      : std::runtime_error(what), kind_(kind), required_bits_(required_bits) {}

  ErrorKind kind() const { return kind_; }
  /// Mantissa bits suggested for a retry; 0 when not applicable.
  int required_bits() const { return required_bits_; }
  const std::string& stage() const { return stage_; }

  Error with_stage(const std::string& stage) const {
    Error e(kind_, stage + ": " + what(), required_bits_);
    e.stage_ = stage;
    return e;
  }

 private:
  ErrorKind kind_;
  int required_bits_;
  std::string stage_;
};

inline Error domain_error(const std::string& what) { return {ErrorKind::Domain, what}; }
inline Error ill_conditioned(const std::string& what, int bits) {
  return {ErrorKind::IllConditioned, what, bits};
}

/// Smallest supported precision (from 53/128/256/512) that is >= bits.
int ladder_bits(int bits);

}  // namespace hardy
