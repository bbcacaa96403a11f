#pragma once

#include <stdexcept>
#include <string>

#include "gesp/types.hpp"

namespace gesp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand lengths or matrix shapes do not agree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the operation's domain (k > n, p out of range, zero norm, ...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Input is well-formed but carries no usable information (e.g. all-zero measurements).
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& what, ComplexVec last_iterate, double residual)
      : Error(what), last_iterate_(std::move(last_iterate)), residual_(residual) {}

  const ComplexVec& last_iterate() const { return last_iterate_; }
  double residual() const { return residual_; }

 private:
  ComplexVec last_iterate_;
  double residual_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace gesp
