#pragma once

#include "bgbench/mask.hpp"

namespace bgbench {

// Square structuring element, centered. Size must be odd.
struct StructuringElement {
    int size = 3;
};

// Pixels outside the mask count as false for both operations.
ForegroundMask erode(const ForegroundMask& mask, StructuringElement se);
ForegroundMask dilate(const ForegroundMask& mask, StructuringElement se);

// Opening: erode then dilate. Removes speckles smaller than the element.
ForegroundMask open(const ForegroundMask& mask, StructuringElement se);

} // namespace bgbench
