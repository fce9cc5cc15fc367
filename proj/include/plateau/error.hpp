#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace plateau {

// Base for every error raised by the library. The CLI maps the concrete type
// onto a process exit status.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Numerical failures: rank deficiency, underdetermined systems, blowup.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class UnderdeterminedError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class RankDeficientError : public NumericalError {
 public:
  RankDeficientError(const std::string& what, double condition_ratio)
      : NumericalError(what), condition_ratio_(condition_ratio) {}
  double condition_ratio() const noexcept { return condition_ratio_; }

 private:
  double condition_ratio_;
};

class BlowupError : public NumericalError {
 public:
  BlowupError(const std::string& what, std::size_t step)
      : NumericalError(what), step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

// No |Δ^k ε| upturn was found within the search cap.
class NoPlateauError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace plateau
