#pragma once

#include <optional>

#include "bgbench/algorithm.hpp"
#include "bgbench/frame.hpp"
#include "bgbench/mask.hpp"

namespace bgbench {

// Per-frame classifier: observe a frame, update internal state, return the
// foreground mask. Identical frame sequences yield identical mask sequences.
class BackgroundModel {
  public:
    virtual ~BackgroundModel() = default;
    virtual ForegroundMask observe(const Frame& frame) = 0;
};

// |current - previous| thresholded per pixel (max over channels). The first
// frame of a sequence has no predecessor and comes back all-background.
class FrameDiffModel : public BackgroundModel {
  public:
    explicit FrameDiffModel(double threshold = 25.0) : threshold_(threshold) {}

    ForegroundMask observe(const Frame& frame) override;

  private:
    double threshold_;
    std::optional<Frame> previous_;
};

// |frame - reference| thresholded per pixel against a fixed reference image.
// Without an explicit reference the first observed frame is adopted as one.
class StaticBgModel : public BackgroundModel {
  public:
    explicit StaticBgModel(double threshold = 25.0) : threshold_(threshold) {}
    StaticBgModel(Frame reference, double threshold = 25.0)
        : threshold_(threshold), reference_(std::move(reference)) {}

    ForegroundMask observe(const Frame& frame) override;

  private:
    double threshold_;
    std::optional<Frame> reference_;
};

// Pure forms of the two baselines.
ForegroundMask absdiff_mask(const Frame& a, const Frame& b, double threshold);
inline ForegroundMask staticbg_observe(const Frame& reference, const Frame& frame,
                                       double threshold) {
    return absdiff_mask(reference, frame, threshold);
}

} // namespace bgbench
