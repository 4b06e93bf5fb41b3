#pragma once

#include <memory>

#include "bgbench/bgmodel.hpp"
#include "bgbench/density.hpp"
#include "bgbench/mog.hpp"

namespace bgbench {

// Everything after the background model: morphological opening, blob area
// filtering, perspective-weighted density.
struct PipelineConfig {
    bool morph_open = true;
    int se_size = 3;
    std::size_t min_area = 50;
    double lambda = 4.0;
};

struct ModelOptions {
    Algorithm algorithm = Algorithm::mog;
    double threshold = 25.0; // framediff / staticbg
    MogParams mog;
    std::optional<Frame> reference; // staticbg; first frame when absent
};

std::unique_ptr<BackgroundModel> make_model(const ModelOptions& options);

struct FrameResult {
    double density = 0.0;
    std::int64_t elapsed_us = 0;
};

// Cleaned mask for one already-observed mask.
ForegroundMask clean_mask(const ForegroundMask& raw, const PipelineConfig& config);

// observe -> open -> label -> filter -> density, timed as one unit with a
// monotonic clock. Decode time is not included; frames arrive decoded.
FrameResult process_frame(BackgroundModel& model, const Frame& frame,
                          const PipelineConfig& config, const PerspectiveWeights& weights);

} // namespace bgbench
