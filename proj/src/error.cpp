#include "roundness/error.hpp"

namespace roundness {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::DuplicateIndex: return "DuplicateIndex";
    case ErrorCode::DisconnectedGraph: return "DisconnectedGraph";
    case ErrorCode::NotATree: return "NotATree";
    case ErrorCode::InvalidMetric: return "InvalidMetric";
    case ErrorCode::InvalidQuad: return "InvalidQuad";
    case ErrorCode::AsymmetricInput: return "AsymmetricInput";
    case ErrorCode::NonzeroDiagonal: return "NonzeroDiagonal";
    case ErrorCode::KernelNotNegative: return "KernelNotNegative";
    case ErrorCode::SpecMismatch: return "SpecMismatch";
    case ErrorCode::EmptyAfterClosure: return "EmptyAfterClosure";
    case ErrorCode::NotGenerating: return "NotGenerating";
    case ErrorCode::BallTooLarge: return "BallTooLarge";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::DegenerateConstruction: return "DegenerateConstruction";
    case ErrorCode::UnsupportedOrder: return "UnsupportedOrder";
  }
  return "Unknown";
}

}  // namespace roundness
