#pragma once

#include <stdexcept>
#include <string>

namespace bgbench {

enum class ErrorCode {
    // codec / imaging
    UnsupportedMagic,
    TruncatedRaster,
    MalformedHeader,
    MissingKey,
    EmptyFrameList,
    ParseError,
    DimensionMismatch,
    ChannelMismatch,
    // parameters
    InvalidParams,
    InvalidLambda,
    // evaluation
    DuplicateId,
    NegativeCount,
    MalformedRow,
    LengthMismatch,
    DegenerateSeries,
    InsufficientOverlap,
    // benchmarking
    InsufficientSequences,
    IoError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

} // namespace bgbench
