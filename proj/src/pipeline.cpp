#include "bgbench/pipeline.hpp"

#include <chrono>

#include "bgbench/blobs.hpp"
#include "bgbench/morphology.hpp"

namespace bgbench {

std::unique_ptr<BackgroundModel> make_model(const ModelOptions& options) {
    switch (options.algorithm) {
    case Algorithm::framediff:
        return std::make_unique<FrameDiffModel>(options.threshold);
    case Algorithm::staticbg:
        if (options.reference)
            return std::make_unique<StaticBgModel>(*options.reference, options.threshold);
        return std::make_unique<StaticBgModel>(options.threshold);
    case Algorithm::mog:
        return std::make_unique<MixtureModel>(options.mog);
    }
    throw Error(ErrorCode::InvalidParams, "unknown algorithm");
}

ForegroundMask clean_mask(const ForegroundMask& raw, const PipelineConfig& config) {
    const ForegroundMask opened =
        config.morph_open ? open(raw, StructuringElement{config.se_size}) : raw;
    return filter_small_blobs(label_blobs(opened), config.min_area);
}

FrameResult process_frame(BackgroundModel& model, const Frame& frame,
                          const PipelineConfig& config, const PerspectiveWeights& weights) {
    const auto start = std::chrono::steady_clock::now();
    const ForegroundMask raw = model.observe(frame);
    const ForegroundMask cleaned = clean_mask(raw, config);
    const double density = weighted_density(cleaned, weights);
    const auto stop = std::chrono::steady_clock::now();

    FrameResult result;
    result.density = density;
    result.elapsed_us =
        std::chrono::duration_cast<std::chrono::microseconds>(stop - start).count();
    return result;
}

} // namespace bgbench
