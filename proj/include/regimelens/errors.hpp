#pragma once

#include <stdexcept>
#include <string>

namespace regimelens {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : Error {
  using Error::Error;
};

struct ValidationError : Error {
  using Error::Error;
};

struct InsufficientDataError : Error {
  using Error::Error;
};

struct SingularMatrixError : Error {
  using Error::Error;
};

struct DomainError : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

struct LookupError : Error {
  using Error::Error;
};

}  // namespace regimelens
