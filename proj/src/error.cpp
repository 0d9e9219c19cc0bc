#include "tagcn/error.hpp"

namespace tagcn {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::IsolatedVertex: return "IsolatedVertex";
    case ErrorCode::NonFiniteValue: return "NonFiniteValue";
    case ErrorCode::NegativeWeight: return "NegativeWeight";
    case ErrorCode::NonPositiveDegree: return "NonPositiveDegree";
    case ErrorCode::DirectedLaplacian: return "DirectedLaplacian";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::PathLengthTooLarge: return "PathLengthTooLarge";
    case ErrorCode::NotDiagonalizable: return "NotDiagonalizable";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::NotStronglyConnected: return "NotStronglyConnected";
    case ErrorCode::DegenerateDominantEigenvalue: return "DegenerateDominantEigenvalue";
    case ErrorCode::ZeroProjection: return "ZeroProjection";
    case ErrorCode::WrongOperatorKind: return "WrongOperatorKind";
    case ErrorCode::InvalidRate: return "InvalidRate";
    case ErrorCode::EmptyMask: return "EmptyMask";
    case ErrorCode::StaleState: return "StaleState";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::EmptyList: return "EmptyList";
    case ErrorCode::FormatError: return "FormatError";
    case ErrorCode::SplitOverlap: return "SplitOverlap";
    case ErrorCode::LabelOutOfRange: return "LabelOutOfRange";
    case ErrorCode::EmptySplit: return "EmptySplit";
    case ErrorCode::StatMismatch: return "StatMismatch";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace tagcn
