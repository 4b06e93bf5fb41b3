#pragma once

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <vector>

#include "bgbench/error.hpp"

namespace bgbench {

// Binary map aligned to a frame; nonzero = foreground.
struct ForegroundMask {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> bits; // row-major, 0 or 1

    ForegroundMask() = default;
    ForegroundMask(int w, int h) : width(w), height(h), bits(checked_size(w, h), 0) {}

    // Validates before anything is allocated.
    static std::size_t checked_size(int w, int h) {
        if (w < 1 || h < 1)
            throw Error(ErrorCode::InvalidParams,
                        "bad mask geometry " + std::to_string(w) + "x" + std::to_string(h));
        return static_cast<std::size_t>(w) * h;
    }

    bool at(int row, int col) const {
        return bits[static_cast<std::size_t>(row) * width + col] != 0;
    }
    void set(int row, int col, bool v) {
        bits[static_cast<std::size_t>(row) * width + col] = v ? 1 : 0;
    }

    std::size_t pixel_count() const { return bits.size(); }
    std::size_t foreground_count() const {
        return std::accumulate(bits.begin(), bits.end(), std::size_t{0});
    }

    friend bool operator==(const ForegroundMask& a, const ForegroundMask& b) {
        return a.width == b.width && a.height == b.height && a.bits == b.bits;
    }
};

} // namespace bgbench
