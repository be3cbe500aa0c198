#include "isomlab/error.hpp"

namespace isomlab {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidDimension: return "InvalidDimension";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotTraceless: return "NotTraceless";
    case ErrorCode::NotSkewSymmetric: return "NotSkewSymmetric";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::NotOrthogonal: return "NotOrthogonal";
    case ErrorCode::NotSpecialOrthogonal: return "NotSpecialOrthogonal";
    case ErrorCode::SpecMismatch: return "SpecMismatch";
    case ErrorCode::InvalidNormSpec: return "InvalidNormSpec";
    case ErrorCode::DegeneratePoint: return "DegeneratePoint";
    case ErrorCode::SingularMap: return "SingularMap";
    case ErrorCode::NotIsometry: return "NotIsometry";
    case ErrorCode::NotInClassifiedForm: return "NotInClassifiedForm";
    case ErrorCode::RecoveryFailed: return "RecoveryFailed";
    case ErrorCode::NotAdjointImage: return "NotAdjointImage";
    case ErrorCode::InconclusiveDimension: return "InconclusiveDimension";
  }
  return "Unknown";
}

}  // namespace isomlab
