#include "unigeo/error.hpp"

namespace unigeo {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::NotFinite: return "NotFinite";
    case ErrorCode::InvalidGauge: return "InvalidGauge";
    case ErrorCode::RankTooLarge: return "RankTooLarge";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::InvalidPath: return "InvalidPath";
    case ErrorCode::GapTooLarge: return "GapTooLarge";
    case ErrorCode::NondegeneracyRequired: return "NondegeneracyRequired";
    case ErrorCode::NotProjection: return "NotProjection";
    case ErrorCode::RankMismatch: return "RankMismatch";
    case ErrorCode::NotOrthonormal: return "NotOrthonormal";
    case ErrorCode::NotCodiagonal: return "NotCodiagonal";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace unigeo
