#pragma once

#include <stdexcept>
#include <string>

namespace dgcat {

enum class ErrorCode {
  ReduciblePolynomial,
  NonMonic,
  DivisionByZero,
  TowerMismatch,
  DegreeBoundExceeded,
  ShapeMismatch,
  NotAComplex,
  FieldMismatch,
  AlgebraMismatch,
  NotClosed,
  WrongDegree,
  ActionMismatch,
  WindowNotGuaranteed,
  SizeBoundExceeded,
  NotAPrefixTower,
  MalformedStep,
  SyntaxError,
  UnknownReference,
  ValidationError,
  TamperedReport,
};

const char* to_string(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace dgcat
