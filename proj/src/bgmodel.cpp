#include "bgbench/bgmodel.hpp"

#include <cstdlib>

namespace bgbench {

namespace {

void check_geometry(const Frame& a, const Frame& b) {
    if (a.width != b.width || a.height != b.height)
        throw Error(ErrorCode::DimensionMismatch,
                    std::to_string(b.width) + "x" + std::to_string(b.height) + " frame against " +
                        std::to_string(a.width) + "x" + std::to_string(a.height) + " state");
    if (a.channels != b.channels)
        throw Error(ErrorCode::ChannelMismatch, std::to_string(b.channels) +
                                                    "-channel frame against " +
                                                    std::to_string(a.channels) + "-channel state");
}

} // namespace

ForegroundMask absdiff_mask(const Frame& a, const Frame& b, double threshold) {
    check_geometry(a, b);
    ForegroundMask mask(a.width, a.height);
    const std::size_t npx = a.pixel_count();
    for (std::size_t px = 0; px < npx; ++px) {
        int diff = 0;
        for (int ch = 0; ch < a.channels; ++ch) {
            const int d = std::abs(static_cast<int>(a.data[px * a.channels + ch]) -
                                   static_cast<int>(b.data[px * b.channels + ch]));
            if (d > diff)
                diff = d;
        }
        mask.bits[px] = diff > threshold ? 1 : 0;
    }
    return mask;
}

ForegroundMask FrameDiffModel::observe(const Frame& frame) {
    if (!previous_) {
        previous_ = frame;
        return ForegroundMask(frame.width, frame.height);
    }
    ForegroundMask mask = absdiff_mask(*previous_, frame, threshold_);
    previous_ = frame;
    return mask;
}

ForegroundMask StaticBgModel::observe(const Frame& frame) {
    if (!reference_) {
        reference_ = frame;
        return ForegroundMask(frame.width, frame.height);
    }
    return absdiff_mask(*reference_, frame, threshold_);
}

} // namespace bgbench
