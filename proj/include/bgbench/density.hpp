#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "bgbench/algorithm.hpp"
#include "bgbench/mask.hpp"

namespace bgbench {

// Per-row pixel weights compensating for perspective: distant vehicles sit
// near the top of the image and cover fewer pixels, so top rows weigh more.
// Linear ramp from lambda (top row) down to 1 (bottom row).
struct PerspectiveWeights {
    int height = 0;
    double lambda = 1.0;
    std::vector<double> weights; // one per row, non-increasing
};

PerspectiveWeights build_weights(int height, double lambda);

// Weighted foreground fraction in [0, 1]:
//   sum of row weights over foreground pixels / sum over all pixels.
double weighted_density(const ForegroundMask& mask, const PerspectiveWeights& w);

struct DensityRecord {
    std::string frame_id;
    Algorithm algorithm = Algorithm::mog;
    double density = 0.0;
    std::int64_t elapsed_us = 0;

    friend bool operator==(const DensityRecord&, const DensityRecord&) = default;
};

// CSV with header "image,algorithm,density,elapsed_us", '\n' newlines.
std::string density_csv(const std::vector<DensityRecord>& records);
// Same records without the timing column; stable across timed reruns and
// worker counts.
std::string density_csv_untimed(const std::vector<DensityRecord>& records);

std::vector<DensityRecord> parse_density_csv(const std::string& text);
std::vector<DensityRecord> load_density_csv(const std::filesystem::path& path);

} // namespace bgbench
