#include "eqbox/error.hpp"

namespace eqbox {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::SizeMismatch: return "SizeMismatch";
    case Errc::InvalidDiagonal: return "InvalidDiagonal";
    case Errc::NonSymmetric: return "NonSymmetric";
    case Errc::TriangleViolation: return "TriangleViolation";
    case Errc::ZeroMass: return "ZeroMass";
    case Errc::MassNotNormalized: return "MassNotNormalized";
    case Errc::DuplicatePoint: return "DuplicatePoint";
    case Errc::NotLipschitz: return "NotLipschitz";
    case Errc::MarginalMismatch: return "MarginalMismatch";
    case Errc::NegativeEntry: return "NegativeEntry";
    case Errc::NotPermutation: return "NotPermutation";
    case Errc::NotIsometry: return "NotIsometry";
    case Errc::NotMeasurePreserving: return "NotMeasurePreserving";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::KappaOutOfRange: return "KappaOutOfRange";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::GridIncompatible: return "GridIncompatible";
    case Errc::EmptyRelation: return "EmptyRelation";
    case Errc::SpaceMismatch: return "SpaceMismatch";
    case Errc::ParseError: return "ParseError";
    case Errc::TooLarge: return "TooLarge";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace eqbox
