#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qg3d {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Zero mode of q is not zero: the periodic elliptic problem has no solution.
class NonZeroMean : public Error {
public:
  using Error::Error;
};

class GridMismatch : public Error {
public:
  using Error::Error;
};

/// The integrator produced NaN or Inf; `time` is the start of the failing step.
class NonFinite : public Error {
public:
  NonFinite(const std::string& what, double time) : Error(what), time_(time) {}
  double time() const noexcept { return time_; }

private:
  double time_;
};

class ZeroMode : public Error {
public:
  using Error::Error;
};

class EmptyBand : public Error {
public:
  using Error::Error;
};

class InsufficientHistory : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t line, std::string key)
      : Error(what), line_(line), key_(std::move(key)) {}
  std::size_t line() const noexcept { return line_; }
  const std::string& key() const noexcept { return key_; }

private:
  std::size_t line_;
  std::string key_;
};

class ValidationError : public Error {
public:
  using Error::Error;
};

class IoError : public Error {
public:
  using Error::Error;
};

class FormatError : public Error {
public:
  using Error::Error;
};

}  // namespace qg3d
