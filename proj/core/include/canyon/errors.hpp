#pragma once

#include <stdexcept>
#include <string>

namespace canyon {

// Base for every failure raised by the library. `kind()` is a stable tag
// used in reports and by the CLI to pick exit codes.
class Error : public std::runtime_error {
public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

private:
  std::string kind_;
};

#define CANYON_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                       \
  public:                                                           \
    explicit Name(const std::string& what) : Error(#Name, what) {}  \
  };

class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t pos)
      : Error("ParseError", what + " at position " + std::to_string(pos)),
        pos_(pos) {}
  std::size_t position() const noexcept { return pos_; }

private:
  std::size_t pos_;
};

CANYON_DEFINE_ERROR(PreconditionViolation)
CANYON_DEFINE_ERROR(VanishingGradient)
CANYON_DEFINE_ERROR(NotMiniRegular)
CANYON_DEFINE_ERROR(ExhaustedCandidates)
CANYON_DEFINE_ERROR(InsufficientTruncation)
CANYON_DEFINE_ERROR(IndeterminateAtTruncation)
CANYON_DEFINE_ERROR(NoDots)
CANYON_DEFINE_ERROR(SolverDivergence)
CANYON_DEFINE_ERROR(NoMaximumFound)
CANYON_DEFINE_ERROR(FitUnstable)
CANYON_DEFINE_ERROR(SheetTrackingLoss)
CANYON_DEFINE_ERROR(DegenerateLevel)
CANYON_DEFINE_ERROR(NotDegenerateDirection)
CANYON_DEFINE_ERROR(NonIsolatedSingularity)
CANYON_DEFINE_ERROR(MultipleRootOfF)
CANYON_DEFINE_ERROR(OracleNotApplicable)
CANYON_DEFINE_ERROR(IoError)

#undef CANYON_DEFINE_ERROR

}  // namespace canyon
