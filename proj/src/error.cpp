#include "mbkrg/error.hpp"

namespace mbkrg {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::LoopEdge: return "LoopEdge";
    case ErrorCode::VertexOutOfRange: return "VertexOutOfRange";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::TooManyVertices: return "TooManyVertices";
    case ErrorCode::BadParameters: return "BadParameters";
    case ErrorCode::EmptyLandmarkSet: return "EmptyLandmarkSet";
    case ErrorCode::SameVertex: return "SameVertex";
    case ErrorCode::SizeCapExceeded: return "SizeCapExceeded";
    case ErrorCode::PairsOverlap: return "PairsOverlap";
    case ErrorCode::AlphaCapExceeded: return "AlphaCapExceeded";
    case ErrorCode::CycleTooSmall: return "CycleTooSmall";
    case ErrorCode::UndefinedForLoser: return "UndefinedForLoser";
    case ErrorCode::NotCovered: return "NotCovered";
    case ErrorCode::NotATree: return "NotATree";
    case ErrorCode::HypothesesViolated: return "HypothesesViolated";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IOFailure: return "IOFailure";
  }
  return "Unknown";
}

}  // namespace mbkrg
