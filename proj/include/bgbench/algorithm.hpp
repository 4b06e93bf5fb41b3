#pragma once

#include <string>

#include "bgbench/error.hpp"

namespace bgbench {

enum class Algorithm {
    framediff, // previous-frame differencing
    staticbg,  // fixed reference image subtraction
    mog,       // adaptive Gaussian mixture per pixel
};

inline const char* to_string(Algorithm a) {
    switch (a) {
    case Algorithm::framediff: return "framediff";
    case Algorithm::staticbg: return "staticbg";
    case Algorithm::mog: return "mog";
    }
    return "?";
}

inline Algorithm algorithm_from_string(const std::string& s) {
    if (s == "framediff")
        return Algorithm::framediff;
    if (s == "staticbg")
        return Algorithm::staticbg;
    if (s == "mog")
        return Algorithm::mog;
    throw Error(ErrorCode::ParseError, "unknown algorithm '" + s + "'");
}

} // namespace bgbench
