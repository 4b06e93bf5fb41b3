#include "bgbench/mog.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <json.hpp>

#include "bgbench/pnm.hpp"

namespace bgbench {

void MogParams::validate() const {
    if (K < 1)
        throw Error(ErrorCode::InvalidParams, "K must be >= 1");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw Error(ErrorCode::InvalidParams, "alpha must be in (0, 1)");
    if (!(match_sigmas > 0.0))
        throw Error(ErrorCode::InvalidParams, "match_sigmas must be > 0");
    if (!(background_weight_threshold > 0.0 && background_weight_threshold <= 1.0))
        throw Error(ErrorCode::InvalidParams, "background_weight_threshold must be in (0, 1]");
    if (!(variance_floor > 0.0))
        throw Error(ErrorCode::InvalidParams, "variance_floor must be > 0");
    if (!(initial_variance >= variance_floor))
        throw Error(ErrorCode::InvalidParams, "initial_variance must be >= variance_floor");
    if (!(initial_weight > 0.0))
        throw Error(ErrorCode::InvalidParams, "initial_weight must be > 0");
}

MogParams mog_params_from_json(const std::string& text) {
    const auto doc = nlohmann::json::parse(text, nullptr, false);
    if (doc.is_discarded() || !doc.is_object())
        throw Error(ErrorCode::ParseError, "params file is not a JSON object");

    MogParams p;
    try {
        for (const auto& [key, value] : doc.items()) {
            if (key == "K")
                p.K = value.get<int>();
            else if (key == "alpha")
                p.alpha = value.get<double>();
            else if (key == "match_sigmas")
                p.match_sigmas = value.get<double>();
            else if (key == "background_weight_threshold")
                p.background_weight_threshold = value.get<double>();
            else if (key == "initial_variance")
                p.initial_variance = value.get<double>();
            else if (key == "initial_weight")
                p.initial_weight = value.get<double>();
            else if (key == "variance_floor")
                p.variance_floor = value.get<double>();
            else
                throw Error(ErrorCode::ParseError, "unknown params key '" + key + "'");
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
    p.validate();
    return p;
}

std::string mog_params_to_json(const MogParams& p) {
    nlohmann::ordered_json doc;
    doc["K"] = p.K;
    doc["alpha"] = p.alpha;
    doc["match_sigmas"] = p.match_sigmas;
    doc["background_weight_threshold"] = p.background_weight_threshold;
    doc["initial_variance"] = p.initial_variance;
    doc["initial_weight"] = p.initial_weight;
    doc["variance_floor"] = p.variance_floor;
    return doc.dump(2) + "\n";
}

MogParams load_mog_params(const std::filesystem::path& path) {
    const auto bytes = read_file(path);
    return mog_params_from_json(std::string(bytes.begin(), bytes.end()));
}

namespace {

double density_unchecked(const double* x, const GaussianComponent& c, int n) {
    double det = 1.0;
    double exponent = 0.0;
    for (int j = 0; j < n; ++j) {
        const double d = x[j] - c.mean[static_cast<std::size_t>(j)];
        const double v = c.var[static_cast<std::size_t>(j)];
        det *= v;
        exponent += d * d / v;
    }
    return std::pow(2.0 * std::numbers::pi, -0.5 * n) / std::sqrt(det) *
           std::exp(-0.5 * exponent);
}

// Fitness orders components most background-like first: heavy, tight ones win.
double fitness(const GaussianComponent& c) {
    double mean_var = 0.0;
    for (int j = 0; j < c.n; ++j)
        mean_var += c.var[static_cast<std::size_t>(j)];
    mean_var /= c.n;
    return c.weight / std::sqrt(mean_var);
}

} // namespace

double gaussian_density(const PixelSample& x, const GaussianComponent& c) {
    if (x.n != c.n)
        throw Error(ErrorCode::DimensionMismatch, "sample has " + std::to_string(x.n) +
                                                      " channels, component has " +
                                                      std::to_string(c.n));
    return density_unchecked(x.v.data(), c, x.n);
}

double mixture_probability(const PixelSample& x, std::span<const GaussianComponent> mixture) {
    double p = 0.0;
    for (const auto& c : mixture)
        p += c.weight * gaussian_density(x, c);
    return p;
}

MixtureModel::MixtureModel(MogParams params) : params_(params) { params_.validate(); }

void MixtureModel::init_from(const Frame& frame) {
    width_ = frame.width;
    height_ = frame.height;
    channels_ = frame.channels;
    const std::size_t npx = frame.pixel_count();
    const int K = params_.K;
    components_.assign(npx * static_cast<std::size_t>(K), GaussianComponent{});

    for (std::size_t px = 0; px < npx; ++px) {
        GaussianComponent* comps = components_.data() + px * static_cast<std::size_t>(K);
        for (int i = 0; i < K; ++i) {
            comps[i].n = channels_;
            comps[i].weight = i == 0 ? 1.0 : 0.0;
            for (int ch = 0; ch < channels_; ++ch) {
                comps[i].mean[static_cast<std::size_t>(ch)] =
                    i == 0 ? frame.data[px * static_cast<std::size_t>(channels_) + ch] : 0.0;
                comps[i].var[static_cast<std::size_t>(ch)] = params_.initial_variance;
            }
        }
    }
    initialized_ = true;
}

ForegroundMask MixtureModel::observe(const Frame& frame) {
    if (!initialized_) {
        init_from(frame);
        return ForegroundMask(frame.width, frame.height);
    }
    if (frame.width != width_ || frame.height != height_)
        throw Error(ErrorCode::DimensionMismatch,
                    std::to_string(frame.width) + "x" + std::to_string(frame.height) +
                        " frame against " + std::to_string(width_) + "x" +
                        std::to_string(height_) + " model");
    if (frame.channels != channels_)
        throw Error(ErrorCode::ChannelMismatch, std::to_string(frame.channels) +
                                                    "-channel frame against " +
                                                    std::to_string(channels_) + "-channel model");

    const int K = params_.K;
    const int n = channels_;
    const double alpha = params_.alpha;
    const double threshold = params_.background_weight_threshold;

    ForegroundMask mask(width_, height_);
    std::vector<GaussianComponent> sorted(static_cast<std::size_t>(K));
    std::vector<int> order(static_cast<std::size_t>(K));
    std::vector<double> fit(static_cast<std::size_t>(K));

    const std::size_t npx = frame.pixel_count();
    for (std::size_t px = 0; px < npx; ++px) {
        GaussianComponent* comps = components_.data() + px * static_cast<std::size_t>(K);
        double x[3];
        for (int ch = 0; ch < n; ++ch)
            x[ch] = frame.data[px * static_cast<std::size_t>(n) + ch];

        // First match in fitness order wins.
        int matched = -1;
        for (int i = 0; i < K && matched < 0; ++i) {
            bool within = true;
            for (int ch = 0; ch < n; ++ch) {
                const double dev = std::abs(x[ch] - comps[i].mean[static_cast<std::size_t>(ch)]);
                if (dev > params_.match_sigmas *
                              std::sqrt(comps[i].var[static_cast<std::size_t>(ch)])) {
                    within = false;
                    break;
                }
            }
            if (within)
                matched = i;
        }

        if (matched >= 0) {
            const double rho = std::clamp(alpha * density_unchecked(x, comps[matched], n),
                                          alpha, 1.0);
            for (int i = 0; i < K; ++i)
                comps[i].weight *= 1.0 - alpha;
            comps[matched].weight += alpha;
            for (int ch = 0; ch < n; ++ch) {
                auto& m = comps[matched].mean[static_cast<std::size_t>(ch)];
                auto& v = comps[matched].var[static_cast<std::size_t>(ch)];
                m = (1.0 - rho) * m + rho * x[ch];
                const double d = x[ch] - m;
                v = std::max(params_.variance_floor, (1.0 - rho) * v + rho * d * d);
            }
        } else {
            // Array is kept in fitness order, so the last slot is least fit.
            GaussianComponent& worst = comps[K - 1];
            worst.weight = params_.initial_weight;
            for (int ch = 0; ch < n; ++ch) {
                worst.mean[static_cast<std::size_t>(ch)] = x[ch];
                worst.var[static_cast<std::size_t>(ch)] = params_.initial_variance;
            }
        }

        double sum = 0.0;
        for (int i = 0; i < K; ++i)
            sum += comps[i].weight;
        for (int i = 0; i < K; ++i)
            comps[i].weight /= sum;

        for (int i = 0; i < K; ++i) {
            fit[static_cast<std::size_t>(i)] = fitness(comps[i]);
            order[static_cast<std::size_t>(i)] = i;
        }
        std::stable_sort(order.begin(), order.end(), [&fit](int a, int b) {
            return fit[static_cast<std::size_t>(a)] > fit[static_cast<std::size_t>(b)];
        });

        int matched_pos = -1;
        for (int j = 0; j < K; ++j) {
            sorted[static_cast<std::size_t>(j)] = comps[order[static_cast<std::size_t>(j)]];
            if (order[static_cast<std::size_t>(j)] == matched)
                matched_pos = j;
        }
        std::copy(sorted.begin(), sorted.end(), comps);

        // Smallest prefix whose cumulative weight exceeds the threshold is
        // background; everything else (and any unmatched pixel) is foreground.
        int background_end = K;
        double cumulative = 0.0;
        for (int j = 0; j < K; ++j) {
            cumulative += comps[j].weight;
            if (cumulative > threshold) {
                background_end = j + 1;
                break;
            }
        }
        mask.bits[px] = (matched < 0 || matched_pos >= background_end) ? 1 : 0;
    }
    return mask;
}

} // namespace bgbench
