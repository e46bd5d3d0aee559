#include "anosov/error.hpp"

namespace anosov {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DegenerateConic: return "DegenerateConic";
    case ErrorCode::PointOnChartLine: return "PointOnChartLine";
    case ErrorCode::CoincidentPoints: return "CoincidentPoints";
    case ErrorCode::NotCollinear: return "NotCollinear";
    case ErrorCode::InvalidSignature: return "InvalidSignature";
    case ErrorCode::TypeOutOfRange: return "TypeOutOfRange";
    case ErrorCode::ZeroParameter: return "ZeroParameter";
    case ErrorCode::RelationViolation: return "RelationViolation";
    case ErrorCode::InvalidWord: return "InvalidWord";
    case ErrorCode::EvenSignature: return "EvenSignature";
    case ErrorCode::FormNotFound: return "FormNotFound";
    case ErrorCode::NotHyperbolic: return "NotHyperbolic";
    case ErrorCode::BracketingFailed: return "BracketingFailed";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::ComplexCoxeter: return "ComplexCoxeter";
    case ErrorCode::ConicDegenerate: return "ConicDegenerate";
    case ErrorCode::OrderViolation: return "OrderViolation";
    case ErrorCode::ChartCrossing: return "ChartCrossing";
    case ErrorCode::NoContraction: return "NoContraction";
    case ErrorCode::NotInBarbotRange: return "NotInBarbotRange";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

}  // namespace anosov
