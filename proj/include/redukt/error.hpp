#pragma once

#include <stdexcept>
#include <string>

namespace redukt {

enum class ErrorCode {
  Malformed,
  UnknownElement,
  InvalidStructure,
  ArityLimitExceeded,
  ExplosionGuard,
  SchemaMismatch,
  UnboundVariable,
  ParseError,
  NotACongruence,
  NotSetRespecting,
  MissingOrder,
  NotInFragment,
  NotWellFormed,
  SemanticsViolation,
  LiftFailure,
  BadParameters,
  BadGadget,
  NodeGraphTooLarge,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace redukt
