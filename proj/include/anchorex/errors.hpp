#pragma once

#include <stdexcept>
#include <string>

namespace anchorex {

// Bad configuration or malformed input. CLI maps this to exit code 2.
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical breakdown during an otherwise valid computation. CLI exit code 3.
struct NumericalError : std::runtime_error {
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

// Gram matrix too degenerate to orthonormalize, even with jitter.
struct SingularGram : NumericalError {
  explicit SingularGram(const std::string& msg) : NumericalError(msg) {}
};

// A basis required to be orthogonal on the sample region is not.
struct NotOrthogonalOnOmega : ValidationError {
  explicit NotOrthogonalOnOmega(const std::string& msg) : ValidationError(msg) {}
};

// Dykstra iterates stall with a large constraint violation.
struct EmptyIntersectionSuspected : NumericalError {
  explicit EmptyIntersectionSuspected(const std::string& msg) : NumericalError(msg) {}
};

inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumerical = 3;

}  // namespace anchorex
