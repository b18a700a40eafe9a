#pragma once

#include <stdexcept>
#include <string>

namespace switchover {

enum class ErrorCode {
  invalid_argument = 1,
  numerical = 2,
  topology = 3,
  degenerate = 4,
  io = 5,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what)
      : Error(ErrorCode::invalid_argument, what) {}
};

/// Iterative method failed to reach its tolerance.
class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what)
      : Error(ErrorCode::numerical, what) {}
};

/// No consistent steepest-descent chain could be assembled.
class TopologyError : public Error {
 public:
  explicit TopologyError(const std::string& what)
      : Error(ErrorCode::topology, what) {}
};

/// Second derivative of the action vanishes (coalescing saddles).
class DegenerateSaddle : public Error {
 public:
  explicit DegenerateSaddle(const std::string& what)
      : Error(ErrorCode::degenerate, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorCode::io, what) {}
};

}  // namespace switchover
