#include "ridgeclass/error.hpp"

namespace ridgeclass {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::FileNotFound: return "FileNotFound";
    case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::CorruptHeader: return "CorruptHeader";
    case ErrorCode::RegionOutOfBounds: return "RegionOutOfBounds";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidFingerNumber: return "InvalidFingerNumber";
    case ErrorCode::InvalidGender: return "InvalidGender";
    case ErrorCode::EmptyDataset: return "EmptyDataset";
    case ErrorCode::EmptyMatrix: return "EmptyMatrix";
    case ErrorCode::TooManyLevels: return "TooManyLevels";
    case ErrorCode::NonFiniteInput: return "NonFiniteInput";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::FormatVersionMismatch: return "FormatVersionMismatch";
    case ErrorCode::ChecksumMismatch: return "ChecksumMismatch";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::KTooLarge: return "KTooLarge";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InsufficientData: return "InsufficientData";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), detail_(what) {}

}  // namespace ridgeclass
