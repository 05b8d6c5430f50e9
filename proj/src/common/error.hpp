#pragma once

#include <stdexcept>
#include <string>

namespace urnflow {

enum class ErrorCode {
  bad_argument,  // caller violated an operation precondition
  io,            // scheme file missing or unreadable
  parse,         // malformed syntax or schema violation
  infeasible,    // a step moves more balls than its source holds
  empty_draw,    // draw requested from an urn with no balls
  unsupported,   // operation needs integer urn compositions
  cap_exceeded,  // enumeration outcome cap hit
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace urnflow
