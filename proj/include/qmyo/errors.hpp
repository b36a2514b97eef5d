#pragma once

#include <stdexcept>
#include <string>

namespace qmyo {

/// Process exit status associated with each error family.
enum class ExitCode : int { Ok = 0, Usage = 1, Data = 2, Numeric = 3 };

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual ExitCode exit_code() const noexcept = 0;
};

class UsageError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::Usage; }
};

// Malformed or insufficient input data.
class DataError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::Data; }
};

class EmptyInputError : public DataError {
 public:
  using DataError::DataError;
};

class InsufficientSamplesError : public DataError {
 public:
  using DataError::DataError;
};

class DimensionError : public DataError {
 public:
  using DataError::DataError;
};

class ParseError : public DataError {
 public:
  using DataError::DataError;
};

class SchemaError : public DataError {
 public:
  using DataError::DataError;
};

class InsufficientTrainingError : public DataError {
 public:
  using DataError::DataError;
};

class MalformedBlockError : public DataError {
 public:
  using DataError::DataError;
};

class ConfigError : public DataError {
 public:
  using DataError::DataError;
};

// Numerically unusable model or undefined quantity.
class NumericError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::Numeric; }
};

class ZeroSignalError : public NumericError {
 public:
  using NumericError::NumericError;
};

class DegeneratePrototypeError : public NumericError {
 public:
  using NumericError::NumericError;
};

class DegenerateOperatorsError : public NumericError {
 public:
  using NumericError::NumericError;
};

class UndefinedDenominatorError : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace qmyo
