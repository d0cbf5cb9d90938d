#pragma once

#include <stdexcept>
#include <string>

namespace nrl {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// grid or component mismatch between operands
struct ShapeError : Error {
  using Error::Error;
};

struct DomainError : Error {
  using Error::Error;
};

struct ConvergenceError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

}  // namespace nrl
