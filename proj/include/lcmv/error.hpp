#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lcmv {

enum class ErrorCode {
  kInvalidArgument,
  kKindMismatch,
  kRingMismatch,
  kEmptyArrangement,
  kZeroIdeal,
  kNotExtended,
  kPrecondition,
  kInternalSignError,
  kUncertifiedDifferential,
  kDegenerationNotCertified,
  kMissingOracle,
  kBoxTooSmall,
  kUnsupportedForOracle,
  kInputError,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace lcmv
