#pragma once

#include <stdexcept>
#include <string>

namespace riesz {

// Library error with a coarse machine-readable code. The C API maps the
// code to riesz_status; messages pass through verbatim.
class Error : public std::runtime_error {
 public:
  enum class Code {
    invalid_argument,  // bad inputs, precondition violations
    grid,              // grid too coarse / too large / degenerate
    numeric,           // non-convergence, residual failure
    overflow,          // 64-bit exponent arithmetic overflow
    infeasible,        // a requested schedule/check cannot be completed
  };

  Error(Code code, const std::string& what) : std::runtime_error(what), code_(code) {}

  Code code() const { return code_; }

 private:
  Code code_;
};

[[noreturn]] inline void fail(Error::Code code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace riesz
