#include "lcmv/error.hpp"

namespace lcmv {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::kKindMismatch: return "KIND_MISMATCH";
    case ErrorCode::kRingMismatch: return "RING_MISMATCH";
    case ErrorCode::kEmptyArrangement: return "EMPTY_ARRANGEMENT";
    case ErrorCode::kZeroIdeal: return "ZERO_IDEAL";
    case ErrorCode::kNotExtended: return "NOT_EXTENDED";
    case ErrorCode::kPrecondition: return "PRECONDITION";
    case ErrorCode::kInternalSignError: return "INTERNAL_SIGN_ERROR";
    case ErrorCode::kUncertifiedDifferential: return "UNCERTIFIED_DIFFERENTIAL";
    case ErrorCode::kDegenerationNotCertified: return "DEGENERATION_NOT_CERTIFIED";
    case ErrorCode::kMissingOracle: return "MISSING_ORACLE";
    case ErrorCode::kBoxTooSmall: return "BOX_TOO_SMALL";
    case ErrorCode::kUnsupportedForOracle: return "UNSUPPORTED_FOR_ORACLE";
    case ErrorCode::kInputError: return "INPUT_ERROR";
  }
  return "UNKNOWN";
}

}  // namespace lcmv
