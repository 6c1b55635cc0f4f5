#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pcops {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand dimensions disagree.
class DimError : public Error {
 public:
  using Error::Error;
};

/// A NaN or infinity appeared in a point or intermediate value.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// A parameter lies outside its admissible window.
class ParamError : public Error {
 public:
  using Error::Error;
};

/// A certificate does not support the requested derivation.
class CertError : public Error {
 public:
  using Error::Error;
};

/// The requested certificate conversion is not an equivalence.
class ConversionError : public Error {
 public:
  using Error::Error;
};

/// A checker received input that does not meet its preconditions.
class InputError : public Error {
 public:
  using Error::Error;
};

class NoConvergenceError : public Error {
 public:
  NoConvergenceError(const std::string& what, double best_residual, std::size_t iterations)
      : Error(what), best_residual_(best_residual), iterations_(iterations) {}

  double best_residual() const noexcept { return best_residual_; }
  std::size_t iterations() const noexcept { return iterations_; }

 private:
  double best_residual_;
  std::size_t iterations_;
};

/// Reading or writing a file failed; the message names the path and the OS error.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Experiment configuration could not be parsed or validated. `field` is a
/// dotted path into the document; `line` is 0 when not known.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& what, std::size_t line = 0)
      : Error(what), field_(std::move(field)), line_(line) {}

  const std::string& field() const noexcept { return field_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string field_;
  std::size_t line_;
};

}  // namespace pcops
