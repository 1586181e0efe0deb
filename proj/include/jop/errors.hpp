#pragma once

#include <stdexcept>
#include <string>

namespace jop {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// poly
struct ZeroPolynomial : Error {
  using Error::Error;
};

// measure
struct NonIntegrable : Error {
  using Error::Error;
};
struct ConvergenceFailure : Error {
  using Error::Error;
};
struct InsufficientMoments : Error {
  using Error::Error;
};

// forms
struct IndexOutOfRange : Error {
  using Error::Error;
};
struct UnsupportedDimension : Error {
  using Error::Error;
};

// mep
struct NotK2 : Error {
  using Error::Error;
};
struct CholeskyFailure : Error {
  using Error::Error;
};
struct IncompleteSystem : Error {
  using Error::Error;
};
struct DegenerateVector : Error {
  using Error::Error;
};
struct DuplicateRoots : Error {
  using Error::Error;
};

// gs
struct UnderdeterminedSystem : Error {
  using Error::Error;
};

// classical
struct ComplexEigenvalues : Error {
  using Error::Error;
};
struct DivisionRemainder : Error {
  using Error::Error;
};

// cli
struct ConfigError : Error {
  using Error::Error;
};

} // namespace jop
