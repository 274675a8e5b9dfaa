#pragma once

#include <stdexcept>
#include <string>

namespace nhrm {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RangeError : Error {
  using Error::Error;
};

struct BracketError : Error {
  using Error::Error;
};

struct ConvergenceError : Error {
  using Error::Error;
};

struct ShapeError : Error {
  using Error::Error;
};

struct IntegrationError : Error {
  using Error::Error;
};

struct SamplingError : Error {
  using Error::Error;
};

struct SeriesError : Error {
  using Error::Error;
};

struct SearchError : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

}  // namespace nhrm
