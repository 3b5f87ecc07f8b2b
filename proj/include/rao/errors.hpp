#pragma once

#include <stdexcept>
#include <string>

namespace rao {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed configuration: dimension mismatch, out-of-range parameters, bad files.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class InvalidSmoothingRadius : public Error {
 public:
  using Error::Error;
};

class InvalidRiskLevel : public Error {
 public:
  using Error::Error;
};

class EmptySample : public Error {
 public:
  using Error::Error;
};

class InvalidConfidence : public Error {
 public:
  using Error::Error;
};

class InvalidBatchSize : public Error {
 public:
  using Error::Error;
};

class BudgetExceedsHorizon : public Error {
 public:
  using Error::Error;
};

/// A point outside the region an operation is defined on.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Failure inside a noise sequence (sampling, quantile lookup).
class EnvironmentError : public Error {
 public:
  using Error::Error;
};

}  // namespace rao
