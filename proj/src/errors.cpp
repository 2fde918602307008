#include "monge/errors.hpp"

namespace monge {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NonRectangular: return "NonRectangular";
    case ErrorKind::DegenerateConfiguration: return "DegenerateConfiguration";
    case ErrorKind::NearParallel: return "NearParallel";
    case ErrorKind::NotOnLine: return "NotOnLine";
    case ErrorKind::CoincidesWithVertex: return "CoincidesWithVertex";
    case ErrorKind::EqualWeights: return "EqualWeights";
    case ErrorKind::DependentVertices: return "DependentVertices";
    case ErrorKind::NotHomothetic: return "NotHomothetic";
    case ErrorKind::RatioNotGreaterThanOne: return "RatioNotGreaterThanOne";
    case ErrorKind::NonUniqueHomothety: return "NonUniqueHomothety";
    case ErrorKind::UnboundedShape: return "UnboundedShape";
    case ErrorKind::InfeasibleShape: return "InfeasibleShape";
    case ErrorKind::DegenerateShape: return "DegenerateShape";
    case ErrorKind::GeometryMismatch: return "GeometryMismatch";
    case ErrorKind::AntipodalPoints: return "AntipodalPoints";
    case ErrorKind::ArcOrderViolation: return "ArcOrderViolation";
    case ErrorKind::NotTimelike: return "NotTimelike";
    case ErrorKind::NotSpacelike: return "NotSpacelike";
    case ErrorKind::ParameterOutOfRange: return "ParameterOutOfRange";
    case ErrorKind::ExactModeUnsupported: return "ExactModeUnsupported";
  }
  return "Unknown";
}

}  // namespace monge
