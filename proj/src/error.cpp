#include "bgbench/error.hpp"

namespace bgbench {

const char* error_code_name(ErrorCode code) {
    switch (code) {
    case ErrorCode::UnsupportedMagic: return "UnsupportedMagic";
    case ErrorCode::TruncatedRaster: return "TruncatedRaster";
    case ErrorCode::MalformedHeader: return "MalformedHeader";
    case ErrorCode::MissingKey: return "MissingKey";
    case ErrorCode::EmptyFrameList: return "EmptyFrameList";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ChannelMismatch: return "ChannelMismatch";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::InvalidLambda: return "InvalidLambda";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::NegativeCount: return "NegativeCount";
    case ErrorCode::MalformedRow: return "MalformedRow";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::DegenerateSeries: return "DegenerateSeries";
    case ErrorCode::InsufficientOverlap: return "InsufficientOverlap";
    case ErrorCode::InsufficientSequences: return "InsufficientSequences";
    case ErrorCode::IoError: return "IoError";
    }
    return "UnknownError";
}

} // namespace bgbench
