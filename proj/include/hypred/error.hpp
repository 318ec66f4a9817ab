#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hypred {

/// Failure categories shared by every module. The CLI maps these onto exit codes.
enum class Errc {
  NonPrimeModulus,
  ZeroInput,
  OutOfRange,
  EvenPrime,
  NotNormalized,
  PrimeTooSmall,
  GenusMismatch,
  InvalidCurve,
  NotClosed,
  MissingEvenPrime,
  UnsupportedField,
  NotAConstellation,
  InvalidArgument,
  Parse,
  Checkpoint,
  Invariant,  // an internal consistency check failed
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace hypred
