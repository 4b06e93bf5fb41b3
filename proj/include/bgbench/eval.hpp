#pragma once

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "bgbench/density.hpp"

namespace bgbench {

// Hand-counted cars per frame, keyed by the frame id used in density records.
struct GroundTruth {
    std::map<std::string, int> entries;
};

// CSV with header exactly "image,count", one row per frame.
GroundTruth parse_ground_truth(const std::string& text);
GroundTruth load_ground_truth(const std::filesystem::path& path);

double pearson(std::span<const double> xs, std::span<const double> ys);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
};

// Ordinary least squares of ys on xs, centered formulation.
LinearFit least_squares_fit(std::span<const double> xs, std::span<const double> ys);

struct AccuracyReport {
    Algorithm algorithm = Algorithm::mog;
    int n_matched = 0;
    int n_skipped = 0; // frames present on only one side of the join
    double pearson_r = 0.0;
    double fit_slope = 0.0;
    double fit_intercept = 0.0;
    double mae = 0.0; // mean |fitted count - true count| over matched frames

    friend bool operator==(const AccuracyReport&, const AccuracyReport&) = default;
};

// Joins records with ground truth on frame_id (exact string match), then
// correlates density against count and fits a density -> count line. The
// records must all come from one algorithm.
AccuracyReport evaluate(const std::vector<DensityRecord>& records, const GroundTruth& truth);

} // namespace bgbench
