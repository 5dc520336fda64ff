#pragma once

#include <stdexcept>
#include <string>

namespace cklab {

enum class ErrorCode {
  NonSquare,
  BadEntry,
  ZeroRow,
  ZeroColumn,
  TooSmall,
  NotAdmissible,
  EmptyWord,
  LengthZero,
  DepthTooLarge,
  LevelMismatch,
  PrefixTooShort,
  TruncationTooSmall,
  DimensionMismatch,
  NotPureDegree,
  LevelExceedsTruncation,
  NoConvergence,
  NotInjective,
  BlockOutOfRange,
  ConditionIHolds,
  ConditionIFails,
  UnsupportedShape,
  UnknownCommand,
  BadInput,
};

const char* error_code_name(ErrorCode code);

/// Single exception type for all domain errors.  `index` carries the
/// offending row/column/block when the code refers to one, else -1.
class CkError : public std::runtime_error {
 public:
  CkError(ErrorCode code, std::string message, int index = -1)
      : std::runtime_error(std::move(message)), code_(code), index_(index) {}

  ErrorCode code() const { return code_; }
  int index() const { return index_; }

 private:
  ErrorCode code_;
  int index_;
};

}  // namespace cklab
