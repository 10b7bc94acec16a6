#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ridgeclass {

enum class ErrorCode {
  FileNotFound,
  UnsupportedFormat,
  CorruptHeader,
  RegionOutOfBounds,
  ParseError,
  InvalidFingerNumber,
  InvalidGender,
  EmptyDataset,
  EmptyMatrix,
  TooManyLevels,
  NonFiniteInput,
  ShapeMismatch,
  IoError,
  FormatVersionMismatch,
  ChecksumMismatch,
  LengthMismatch,
  KTooLarge,
  InvalidSpec,
  InvalidArgument,
  InsufficientData,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (tests, the CLI exit-code mapping) can branch without parsing text.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }
  /// Message without the code prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace ridgeclass
