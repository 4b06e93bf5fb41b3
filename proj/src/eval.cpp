#include "bgbench/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "bgbench/pnm.hpp"

namespace bgbench {

GroundTruth parse_ground_truth(const std::string& text) {
    GroundTruth truth;
    std::size_t pos = 0;
    bool first = true;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string::npos)
            eol = text.size();
        std::string line = text.substr(pos, eol - pos);
        pos = eol + 1;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        if (first) {
            first = false;
            if (line != "image,count")
                throw Error(ErrorCode::MalformedRow,
                            "ground truth header must be 'image,count', got '" + line + "'");
            continue;
        }
        const std::size_t comma = line.rfind(',');
        if (comma == std::string::npos || comma == 0 || comma == line.size() - 1)
            throw Error(ErrorCode::MalformedRow, "bad ground truth row: " + line);
        const std::string image = line.substr(0, comma);
        const std::string count_text = line.substr(comma + 1);
        char* end = nullptr;
        const long count = std::strtol(count_text.c_str(), &end, 10);
        if (end == count_text.c_str() || *end != '\0')
            throw Error(ErrorCode::MalformedRow, "bad count in row: " + line);
        if (count < 0)
            throw Error(ErrorCode::NegativeCount, image + " has count " + count_text);
        if (truth.entries.count(image))
            throw Error(ErrorCode::DuplicateId, "duplicate frame id " + image);
        truth.entries[image] = static_cast<int>(count);
    }
    return truth;
}

GroundTruth load_ground_truth(const std::filesystem::path& path) {
    const auto bytes = read_file(path);
    return parse_ground_truth(std::string(bytes.begin(), bytes.end()));
}

namespace {

struct Moments {
    double mean_x = 0, mean_y = 0;
    double sxx = 0, syy = 0, sxy = 0;
};

Moments centered_moments(std::span<const double> xs, std::span<const double> ys) {
    Moments m;
    const double n = static_cast<double>(xs.size());
    for (double x : xs)
        m.mean_x += x;
    for (double y : ys)
        m.mean_y += y;
    m.mean_x /= n;
    m.mean_y /= n;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - m.mean_x;
        const double dy = ys[i] - m.mean_y;
        m.sxx += dx * dx;
        m.syy += dy * dy;
        m.sxy += dx * dy;
    }
    return m;
}

} // namespace

double pearson(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size())
        throw Error(ErrorCode::LengthMismatch, std::to_string(xs.size()) + " vs " +
                                                   std::to_string(ys.size()) + " samples");
    if (xs.size() < 2)
        throw Error(ErrorCode::DegenerateSeries, "need at least 2 samples");
    const Moments m = centered_moments(xs, ys);
    if (m.sxx == 0.0 || m.syy == 0.0)
        throw Error(ErrorCode::DegenerateSeries, "constant series has no correlation");
    return m.sxy / std::sqrt(m.sxx * m.syy);
}

LinearFit least_squares_fit(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size())
        throw Error(ErrorCode::LengthMismatch, std::to_string(xs.size()) + " vs " +
                                                   std::to_string(ys.size()) + " samples");
    if (xs.size() < 2)
        throw Error(ErrorCode::DegenerateSeries, "need at least 2 samples");
    const Moments m = centered_moments(xs, ys);
    if (m.sxx == 0.0)
        throw Error(ErrorCode::DegenerateSeries, "constant predictor");
    LinearFit fit;
    fit.slope = m.sxy / m.sxx;
    fit.intercept = m.mean_y - fit.slope * m.mean_x;
    return fit;
}

AccuracyReport evaluate(const std::vector<DensityRecord>& records, const GroundTruth& truth) {
    // Canonical join order so permuting the input cannot change the sums.
    std::map<std::string, double> by_id;
    for (const auto& r : records)
        by_id[r.frame_id] = r.density;

    std::vector<double> densities, counts;
    int skipped = 0;
    for (const auto& [id, density] : by_id) {
        auto it = truth.entries.find(id);
        if (it == truth.entries.end()) {
            ++skipped;
            continue;
        }
        densities.push_back(density);
        counts.push_back(it->second);
    }
    for (const auto& [id, count] : truth.entries)
        if (!by_id.count(id))
            ++skipped;

    if (densities.size() < 2)
        throw Error(ErrorCode::InsufficientOverlap,
                    "only " + std::to_string(densities.size()) +
                        " frame(s) present in both densities and ground truth");

    AccuracyReport report;
    report.algorithm = records.front().algorithm;
    report.n_matched = static_cast<int>(densities.size());
    report.n_skipped = skipped;
    report.pearson_r = pearson(densities, counts);
    const LinearFit fit = least_squares_fit(densities, counts);
    report.fit_slope = fit.slope;
    report.fit_intercept = fit.intercept;
    double abs_err = 0.0;
    for (std::size_t i = 0; i < densities.size(); ++i)
        abs_err += std::abs(fit.slope * densities[i] + fit.intercept - counts[i]);
    report.mae = abs_err / static_cast<double>(densities.size());
    return report;
}

} // namespace bgbench
