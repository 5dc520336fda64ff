#include "cklab/errors.hpp"

namespace cklab {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::BadEntry: return "BadEntry";
    case ErrorCode::ZeroRow: return "ZeroRow";
    case ErrorCode::ZeroColumn: return "ZeroColumn";
    case ErrorCode::TooSmall: return "TooSmall";
    case ErrorCode::NotAdmissible: return "NotAdmissible";
    case ErrorCode::EmptyWord: return "EmptyWord";
    case ErrorCode::LengthZero: return "LengthZero";
    case ErrorCode::DepthTooLarge: return "DepthTooLarge";
    case ErrorCode::LevelMismatch: return "LevelMismatch";
    case ErrorCode::PrefixTooShort: return "PrefixTooShort";
    case ErrorCode::TruncationTooSmall: return "TruncationTooSmall";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotPureDegree: return "NotPureDegree";
    case ErrorCode::LevelExceedsTruncation: return "LevelExceedsTruncation";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NotInjective: return "NotInjective";
    case ErrorCode::BlockOutOfRange: return "BlockOutOfRange";
    case ErrorCode::ConditionIHolds: return "ConditionIHolds";
    case ErrorCode::ConditionIFails: return "ConditionIFails";
    case ErrorCode::UnsupportedShape: return "UnsupportedShape";
    case ErrorCode::UnknownCommand: return "UnknownCommand";
    case ErrorCode::BadInput: return "BadInput";
  }
  return "Unknown";
}

}  // namespace cklab
