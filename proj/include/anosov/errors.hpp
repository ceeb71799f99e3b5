#pragma once

#include <stdexcept>
#include <string>

namespace anosov {

// Base for every error this library raises on purpose. The `code()` string is
// stable and machine-readable; what() carries the human-readable detail.
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& msg)
      : std::runtime_error(code + ": " + msg), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

private:
  std::string code_;
};

#define ANOSOV_ERROR(NAME)                                        \
  class NAME : public Error {                                     \
  public:                                                         \
    explicit NAME(const std::string& msg) : Error(#NAME, msg) {}  \
  }

ANOSOV_ERROR(FieldMismatch);
ANOSOV_ERROR(DivisionByZero);
ANOSOV_ERROR(NotIrreducible);
ANOSOV_ERROR(DegenerateKernel);
ANOSOV_ERROR(IndexOutOfRange);
ANOSOV_ERROR(OrientationNotPositive);
ANOSOV_ERROR(LambdaNotExpanding);
ANOSOV_ERROR(BudgetExhausted);
ANOSOV_ERROR(FrontierIncomplete);
ANOSOV_ERROR(DepthExceeded);
ANOSOV_ERROR(NotComparable);
ANOSOV_ERROR(TypeMismatch);
ANOSOV_ERROR(MoveNotApplicable);
ANOSOV_ERROR(GermNotContained);
ANOSOV_ERROR(MergeConflict);
ANOSOV_ERROR(NotMatched);
ANOSOV_ERROR(InputError);

#undef ANOSOV_ERROR

}  // namespace anosov
