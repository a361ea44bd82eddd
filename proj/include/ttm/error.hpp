// Copyright 2026 The thermo-transfer Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace ttm {

enum class ErrorCode {
  domain = 1,       // parameter outside the model or operation domain
  convergence = 2,  // iterative procedure did not reach its tolerance
  resource = 3,     // size budget exceeded
  assembly = 4,     // non-finite kernel value while building a matrix
  numeric = 5,      // overflow or eigensolver breakdown
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorCode::domain, what) {}
};

// Carries the residual the procedure had reached when it gave up.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : Error(ErrorCode::convergence, what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

class ResourceError : public Error {
 public:
  explicit ResourceError(const std::string& what) : Error(ErrorCode::resource, what) {}
};

class AssemblyError : public Error {
 public:
  AssemblyError(const std::string& what, std::size_t row, std::size_t col)
      : Error(ErrorCode::assembly, what), row_(row), col_(col) {}
  std::size_t row() const noexcept { return row_; }
  std::size_t col() const noexcept { return col_; }

 private:
  std::size_t row_, col_;
};

class NumericError : public Error {
 public:
  explicit NumericError(const std::string& what) : Error(ErrorCode::numeric, what) {}
};

}  // namespace ttm
