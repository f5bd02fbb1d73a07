#pragma once

#include <stdexcept>
#include <string>

namespace curvekit {

// Failure classes map one-to-one onto CLI exit codes.
enum class ErrorKind {
  Parse,       // malformed input text
  Infeasible,  // precondition or parameter violated
  Numerical,   // solver or factorization failure
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace curvekit
