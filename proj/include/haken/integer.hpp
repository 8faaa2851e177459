#pragma once

#include <gmpxx.h>

#include <Eigen/Core>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace haken {

/// Unbounded integer used for every matrix entry and twist exponent.
using Integer = mpz_class;

enum class ErrorCode {
  MalformedInput,
  NotSingleTwist,
  UnknownCurve,
  KindMismatch,
  InapplicableWitness,
  CheckFailed,
  InvalidPlan,
  Io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline Integer parse_integer(std::string_view text) {
  std::string s(text);
  if (!s.empty() && s.front() == '+') s.erase(0, 1);
  Integer out;
  if (s.empty() || out.set_str(s, 10) != 0) {
    throw Error(ErrorCode::MalformedInput, "not an integer: '" + std::string(text) + "'");
  }
  return out;
}

inline std::string to_string(const Integer& v) { return v.get_str(); }

inline int sign(const Integer& v) { return sgn(v); }

}  // namespace haken

namespace Eigen {

template <>
struct NumTraits<mpz_class> : GenericNumTraits<mpz_class> {
  using Real = mpz_class;
  using NonInteger = mpz_class;
  using Nested = mpz_class;
  using Literal = mpz_class;
  enum {
    IsInteger = 1,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100
  };
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
