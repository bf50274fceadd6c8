#include "schatten/error.hpp"

namespace schatten {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::NotDescending: return "NotDescending";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::InvalidP: return "InvalidP";
    case ErrorCode::InvalidDim: return "InvalidDim";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NegativeEntry: return "NegativeEntry";
    case ErrorCode::DomainViolation: return "DomainViolation";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::SingularResolvent: return "SingularResolvent";
    case ErrorCode::SeriesDivergent: return "SeriesDivergent";
    case ErrorCode::QuadratureNoConvergence: return "QuadratureNoConvergence";
    case ErrorCode::UnknownFixture: return "UnknownFixture";
    case ErrorCode::InvalidProbe: return "InvalidProbe";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace schatten
