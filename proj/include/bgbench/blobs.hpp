#pragma once

#include <cstdint>
#include <vector>

#include "bgbench/mask.hpp"

namespace bgbench {

// Connected components of a mask, 8-connectivity. Label 0 is background;
// labels 1..L are assigned in row-major first-encounter order with no gaps.
struct BlobLabeling {
    int width = 0;
    int height = 0;
    std::vector<std::uint32_t> labels;  // row-major, 0 = background
    std::vector<std::size_t> areas;     // areas[k - 1] = pixel count of blob k

    std::uint32_t label_at(int row, int col) const {
        return labels[static_cast<std::size_t>(row) * width + col];
    }
    std::size_t blob_count() const { return areas.size(); }
    std::size_t area(std::uint32_t label) const { return areas[label - 1]; }
};

BlobLabeling label_blobs(const ForegroundMask& mask);

// Keeps exactly the pixels of blobs with area >= min_area.
ForegroundMask filter_small_blobs(const BlobLabeling& labeling, std::size_t min_area);

} // namespace bgbench
