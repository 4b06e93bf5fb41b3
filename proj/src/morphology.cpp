#include "bgbench/morphology.hpp"

namespace bgbench {

namespace {

void check_se(StructuringElement se) {
    if (se.size < 1 || se.size % 2 == 0)
        throw Error(ErrorCode::InvalidParams,
                    "structuring element size must be odd and >= 1, got " +
                        std::to_string(se.size));
}

} // namespace

ForegroundMask erode(const ForegroundMask& mask, StructuringElement se) {
    check_se(se);
    const int half = se.size / 2;
    ForegroundMask out(mask.width, mask.height);
    for (int r = 0; r < mask.height; ++r) {
        for (int c = 0; c < mask.width; ++c) {
            bool all = true;
            for (int dr = -half; all && dr <= half; ++dr) {
                for (int dc = -half; dc <= half; ++dc) {
                    const int rr = r + dr, cc = c + dc;
                    if (rr < 0 || rr >= mask.height || cc < 0 || cc >= mask.width ||
                        !mask.at(rr, cc)) {
                        all = false;
                        break;
                    }
                }
            }
            out.set(r, c, all);
        }
    }
    return out;
}

ForegroundMask dilate(const ForegroundMask& mask, StructuringElement se) {
    check_se(se);
    const int half = se.size / 2;
    ForegroundMask out(mask.width, mask.height);
    for (int r = 0; r < mask.height; ++r) {
        for (int c = 0; c < mask.width; ++c) {
            bool any = false;
            for (int dr = -half; !any && dr <= half; ++dr) {
                for (int dc = -half; dc <= half; ++dc) {
                    const int rr = r + dr, cc = c + dc;
                    if (rr >= 0 && rr < mask.height && cc >= 0 && cc < mask.width &&
                        mask.at(rr, cc)) {
                        any = true;
                        break;
                    }
                }
            }
            out.set(r, c, any);
        }
    }
    return out;
}

ForegroundMask open(const ForegroundMask& mask, StructuringElement se) {
    return dilate(erode(mask, se), se);
}

} // namespace bgbench
