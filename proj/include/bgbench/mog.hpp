#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include "bgbench/bgmodel.hpp"

namespace bgbench {

// One weighted diagonal Gaussian of a per-pixel mixture.
struct GaussianComponent {
    double weight = 0.0;
    int n = 1;                    // active channel count
    std::array<double, 3> mean{}; // per channel, 0-255 scale
    std::array<double, 3> var{};  // diagonal covariance, >= variance_floor
};

struct MogParams {
    int K = 5;
    double alpha = 0.005;
    double match_sigmas = 2.5;
    double background_weight_threshold = 0.7;
    double initial_variance = 225.0;
    double initial_weight = 0.05;
    double variance_floor = 4.0;

    void validate() const;
};

// Flat JSON object, keys exactly as the field names. Missing keys fall back
// to the defaults; unknown keys are rejected.
MogParams mog_params_from_json(const std::string& text);
std::string mog_params_to_json(const MogParams& params);
MogParams load_mog_params(const std::filesystem::path& path);

// Diagonal multivariate normal density of x under the component.
double gaussian_density(const PixelSample& x, const GaussianComponent& c);

// Weighted sum of the component densities of one pixel's mixture.
double mixture_probability(const PixelSample& x, std::span<const GaussianComponent> mixture);

// Per-pixel adaptive mixture of K Gaussians. Geometry is bound by the first
// observed frame: every pixel starts with one component centered on the
// observed value (weight 1) and the first mask is all-background.
//
// Each later observation, per pixel:
//   - the first component in fitness order whose mean lies within
//     match_sigmas standard deviations of x on every channel is the match;
//   - on a match, weights decay by (1 - alpha) with alpha added to the match,
//     whose mean/variance track x at rate rho = alpha * density clamped to
//     [alpha, 1], variances floored at variance_floor;
//   - with no match, the least-fit component is replaced by one centered on x
//     with initial_variance and initial_weight;
//   - weights are renormalized to sum 1 and components re-sorted by fitness
//     weight / sqrt(mean variance), descending, ties stable;
//   - background components are the smallest fitness-order prefix whose
//     cumulative weight exceeds background_weight_threshold; the pixel is
//     foreground iff unmatched or matched outside that prefix.
class MixtureModel : public BackgroundModel {
  public:
    explicit MixtureModel(MogParams params = {});

    ForegroundMask observe(const Frame& frame) override;

    bool initialized() const { return initialized_; }
    int width() const { return width_; }
    int height() const { return height_; }
    int channels() const { return channels_; }
    const MogParams& params() const { return params_; }

    std::span<const GaussianComponent> components_at(int row, int col) const {
        const std::size_t px = static_cast<std::size_t>(row) * width_ + col;
        return {components_.data() + px * params_.K, static_cast<std::size_t>(params_.K)};
    }

  private:
    void init_from(const Frame& frame);

    MogParams params_;
    bool initialized_ = false;
    int width_ = 0;
    int height_ = 0;
    int channels_ = 0;
    std::vector<GaussianComponent> components_; // pixel-major, K per pixel, fitness order
};

inline ForegroundMask mog_observe(MixtureModel& model, const Frame& frame) {
    return model.observe(frame);
}

} // namespace bgbench
