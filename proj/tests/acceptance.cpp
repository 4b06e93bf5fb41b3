// Acceptance suite: one [PASS]/[FAIL] line per criterion, exit 0 iff all pass.
//
// 1. Synthetic counting correlation (MOG r >= 0.9, framediff strictly lower,
//    slow-crawl gap widens, < 30 s).
// 2. Static-scene convergence after burn-in.
// 3. Oracle equivalences (labeling, morphology, least squares, Pearson).
// 4. Numerical soundness of the mixture model.
// 5. Morphology laws, property-tested.
// 6. Determinism across worker counts; throughput trend reported.
// 7. Codec round-trip and header fuzzing.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <random>
#include <string>
#include <unistd.h>
#include <vector>

#include "bgbench/bench.hpp"
#include "bgbench/blobs.hpp"
#include "bgbench/morphology.hpp"
#include "bgbench/pnm.hpp"
#include "bgbench/synth.hpp"

using namespace bgbench;

namespace {

int failures = 0;

void report(int criterion, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", criterion, detail.c_str());
    if (!ok)
        ++failures;
}

std::string fmt(const char* format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof(buf), format, args);
    va_end(args);
    return buf;
}

struct TempDir {
    std::filesystem::path path;

    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("bgbench_acceptance_" + std::to_string(::getpid()));
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

ForegroundMask random_mask(std::mt19937& rng, int w, int h, double density) {
    ForegroundMask m(w, h);
    for (auto& b : m.bits)
        b = (rng() % 1000) < density * 1000 ? 1 : 0;
    return m;
}

bool subset(const ForegroundMask& a, const ForegroundMask& b) {
    for (std::size_t i = 0; i < a.bits.size(); ++i)
        if (a.bits[i] > b.bits[i])
            return false;
    return true;
}

// ---------------------------------------------------------------- criterion 1

double correlation(const std::filesystem::path& dir, const SynthConfig& cfg,
                   Algorithm algorithm) {
    const SynthResult data = generate_sequence(cfg, dir);

    BenchConfig config;
    // 64x64 scale: the smallest synthetic car covers ~24 px, so the blob
    // filter drops to 8; every other knob keeps its default.
    config.pipeline.min_area = 8;

    const auto loaded = load_sequences({data.manifest_path});
    const auto records = run_sequence(loaded.sequences[0], algorithm, config);
    const GroundTruth truth = load_ground_truth(data.truth_path);
    return evaluate(records, truth).pearson_r;
}

void criterion_counting(const TempDir& tmp) {
    const auto start = std::chrono::steady_clock::now();

    SynthConfig cfg; // 200 frames, 64x64, cars 0..5, noise 2.0
    cfg.seed = 4;    // fixed seed; its first hold segment is an empty road

    const double mog_r = correlation(tmp.path / "c1_mog", cfg, Algorithm::mog);
    const double fd_r = correlation(tmp.path / "c1_fd", cfg, Algorithm::framediff);

    SynthConfig slow = cfg;
    slow.speed = 0.1; // cars crawl; differencing barely sees them
    const double mog_slow = correlation(tmp.path / "c1_mogs", slow, Algorithm::mog);
    const double fd_slow = correlation(tmp.path / "c1_fds", slow, Algorithm::framediff);

    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const bool ok = mog_r >= 0.9 && fd_r < mog_r &&
                    (mog_slow - fd_slow) > (mog_r - fd_r) && seconds < 30.0;
    report(1, ok,
           fmt("counting correlation: mog r=%.4f vs framediff r=%.4f; slow crawl %.4f vs "
               "%.4f (gap %.4f -> %.4f); %.1f s",
               mog_r, fd_r, mog_slow, fd_slow, mog_r - fd_r, mog_slow - fd_slow, seconds));
}

// ---------------------------------------------------------------- criterion 2

void criterion_static_scene() {
    std::mt19937 rng(99);
    auto noisy_frame = [&rng] {
        Frame f(64, 64, 1);
        for (auto& px : f.data) {
            const double u1 = (static_cast<double>(rng()) + 0.5) / 4294967296.0;
            const double u2 = (static_cast<double>(rng()) + 0.5) / 4294967296.0;
            const double noise =
                2.0 * std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
            const long v = std::lround(128.0 + noise);
            px = static_cast<std::uint8_t>(std::clamp(v, 0L, 255L));
        }
        return f;
    };

    MixtureModel model;
    const auto weights = build_weights(64, 4.0);
    double worst_fraction = 0.0, worst_density = 0.0;
    for (int t = 0; t < 50; ++t) {
        const ForegroundMask raw = model.observe(noisy_frame());
        if (t < 20)
            continue; // burn-in
        const double fraction =
            static_cast<double>(raw.foreground_count()) / static_cast<double>(raw.pixel_count());
        const double density = weighted_density(open(raw, StructuringElement{3}), weights);
        worst_fraction = std::max(worst_fraction, fraction);
        worst_density = std::max(worst_density, density);
    }

    const bool ok = worst_fraction < 0.01 && worst_density < 0.001;
    report(2, ok,
           fmt("static scene: max foreground fraction %.5f (< 0.01), max post-morphology "
               "density %.6f (< 0.001) over frames 21..50",
               worst_fraction, worst_density));
}

// ---------------------------------------------------------------- criterion 3

std::pair<std::vector<std::uint32_t>, std::vector<std::size_t>>
flood_fill(const ForegroundMask& m) {
    std::vector<std::uint32_t> labels(m.pixel_count(), 0);
    std::vector<std::size_t> areas;
    std::vector<std::pair<int, int>> stack;
    for (int r = 0; r < m.height; ++r)
        for (int c = 0; c < m.width; ++c) {
            const std::size_t idx = static_cast<std::size_t>(r) * m.width + c;
            if (!m.at(r, c) || labels[idx] != 0)
                continue;
            const auto label = static_cast<std::uint32_t>(areas.size() + 1);
            areas.push_back(0);
            labels[idx] = label;
            stack.push_back({r, c});
            while (!stack.empty()) {
                const auto [cr, cc] = stack.back();
                stack.pop_back();
                ++areas[label - 1];
                for (int dr = -1; dr <= 1; ++dr)
                    for (int dc = -1; dc <= 1; ++dc) {
                        const int nr = cr + dr, nc = cc + dc;
                        if (nr < 0 || nr >= m.height || nc < 0 || nc >= m.width)
                            continue;
                        const std::size_t nidx =
                            static_cast<std::size_t>(nr) * m.width + nc;
                        if (m.at(nr, nc) && labels[nidx] == 0) {
                            labels[nidx] = label;
                            stack.push_back({nr, nc});
                        }
                    }
            }
        }
    return {std::move(labels), std::move(areas)};
}

ForegroundMask dilate_oracle(const ForegroundMask& m, int size) {
    const int half = size / 2;
    ForegroundMask out(m.width, m.height);
    for (int r = 0; r < m.height; ++r)
        for (int c = 0; c < m.width; ++c) {
            if (!m.at(r, c))
                continue;
            for (int rr = std::max(0, r - half); rr <= std::min(m.height - 1, r + half); ++rr)
                for (int cc = std::max(0, c - half); cc <= std::min(m.width - 1, c + half);
                     ++cc)
                    out.set(rr, cc, true);
        }
    return out;
}

ForegroundMask erode_oracle(const ForegroundMask& m, int size) {
    const int half = size / 2;
    ForegroundMask out(m.width, m.height);
    for (auto& b : out.bits)
        b = 1;
    for (int r = -half; r < m.height + half; ++r)
        for (int c = -half; c < m.width + half; ++c) {
            if (r >= 0 && r < m.height && c >= 0 && c < m.width && m.at(r, c))
                continue;
            for (int rr = std::max(0, r - half); rr <= std::min(m.height - 1, r + half); ++rr)
                for (int cc = std::max(0, c - half); cc <= std::min(m.width - 1, c + half);
                     ++cc)
                    out.set(rr, cc, false);
        }
    return out;
}

void criterion_oracles() {
    std::mt19937 rng(12345);

    int label_mismatches = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const auto m = random_mask(rng, 16, 16, 0.1 + 0.08 * (trial % 10));
        const auto got = label_blobs(m);
        const auto [labels, areas] = flood_fill(m);
        if (got.labels != labels || got.areas != areas)
            ++label_mismatches;
    }

    int morph_mismatches = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const int size = (trial % 3) * 2 + 1;
        const auto m = random_mask(rng, 16, 16, 0.5);
        if (!(erode(m, {size}) == erode_oracle(m, size)))
            ++morph_mismatches;
        if (!(dilate(m, {size}) == dilate_oracle(m, size)))
            ++morph_mismatches;
    }

    double worst_fit = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> xs, ys;
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (int i = 0; i < 50; ++i) {
            const double x = (rng() % 4000) / 100.0;
            const double y = 2.5 * x - 3.0 + (rng() % 200) / 40.0;
            xs.push_back(x);
            ys.push_back(y);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        const double n = 50.0;
        const double det = n * sxx - sx * sx;
        const double slope = (n * sxy - sx * sy) / det;
        const double intercept = (sxx * sy - sx * sxy) / det;
        const LinearFit fit = least_squares_fit(xs, ys);
        worst_fit = std::max(worst_fit, std::abs(fit.slope - slope));
        worst_fit = std::max(worst_fit, std::abs(fit.intercept - intercept));
    }

    const std::vector<double> px = {1, 2, 3, 4};
    const std::vector<double> py = {2, 1, 4, 3};
    const double pearson_err = std::abs(pearson(px, py) - 0.6);

    const bool ok = label_mismatches == 0 && morph_mismatches == 0 && worst_fit <= 1e-9 &&
                    pearson_err <= 1e-12;
    report(3, ok,
           fmt("oracles: labeling mismatches %d/1000, morphology mismatches %d/600, max "
               "least-squares deviation %.2e (<= 1e-9), pearson error %.2e (<= 1e-12)",
               label_mismatches, morph_mismatches, worst_fit, pearson_err));
}

// ---------------------------------------------------------------- criterion 4

void criterion_numerics() {
    std::mt19937 rng(4242);
    MixtureModel model;
    Frame frame(2, 2, 1);
    for (int t = 0; t < 10000; ++t) {
        for (auto& b : frame.data)
            b = static_cast<std::uint8_t>(rng());
        model.observe(frame);
    }
    double worst_sum = 0.0;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) {
            double sum = 0.0;
            for (const auto& g : model.components_at(r, c))
                sum += g.weight;
            worst_sum = std::max(worst_sum, std::abs(sum - 1.0));
        }

    GaussianComponent a, b, c;
    a.weight = 0.3;
    a.mean[0] = 20.0;
    a.var[0] = 25.0;
    b.weight = 0.45;
    b.mean[0] = 128.0;
    b.var[0] = 100.0;
    c.weight = 0.25;
    c.mean[0] = 230.0;
    c.var[0] = 225.0;
    const GaussianComponent comps[] = {a, b, c};
    const double lo = -1000.0, hi = 1000.0, step = 0.05;
    double integral = 0.0;
    double prev = mixture_probability(PixelSample{1, {lo, 0.0, 0.0}}, comps);
    for (double t = lo + step; t <= hi + step / 2; t += step) {
        const double cur = mixture_probability(PixelSample{1, {t, 0.0, 0.0}}, comps);
        integral += 0.5 * (prev + cur) * step;
        prev = cur;
    }
    const double quad_err = std::abs(integral - 1.0);

    GaussianComponent unit;
    unit.weight = 1.0;
    unit.mean[0] = 0.0;
    unit.var[0] = 1.0;
    const double peak_err =
        std::abs(gaussian_density(PixelSample{1, {0.0, 0.0, 0.0}}, unit) -
                 0.3989422804014327); // 1/sqrt(2*pi)
    GaussianComponent unit3;
    unit3.weight = 1.0;
    unit3.n = 3;
    unit3.mean = {10.0, 20.0, 30.0};
    unit3.var = {1.0, 1.0, 1.0};
    const double peak3_err =
        std::abs(gaussian_density(PixelSample{3, {10.0, 20.0, 30.0}}, unit3) -
                 0.06349363593424097); // (2*pi)^(-3/2)

    const bool ok = worst_sum <= 1e-9 && quad_err <= 1e-6 && peak_err <= 1e-12 &&
                    peak3_err <= 1e-12;
    report(4, ok,
           fmt("numerics: max |weight sum - 1| = %.2e after 10^4 observations (<= 1e-9), "
               "quadrature error %.2e (<= 1e-6), peak errors %.2e / %.2e (<= 1e-12)",
               worst_sum, quad_err, peak_err, peak3_err));
}

// ---------------------------------------------------------------- criterion 5

void criterion_morphology_laws() {
    std::mt19937 rng(777);
    int violations = 0;
    const int trials = 600;
    for (int trial = 0; trial < trials; ++trial) {
        const int size = (trial % 3) * 2 + 1;
        const StructuringElement se{size};
        const auto m = random_mask(rng, 14, 14, 0.3 + 0.4 * ((trial / 3) % 2));
        auto bigger = m;
        for (int extra = 0; extra < 20; ++extra)
            bigger.set(static_cast<int>(rng() % 14), static_cast<int>(rng() % 14), true);

        const auto eroded = erode(m, se), dilated = dilate(m, se), opened = open(m, se);
        if (!subset(eroded, m) || !subset(m, dilated) || !subset(opened, m))
            ++violations;
        if (!(open(opened, se) == opened))
            ++violations;
        if (!subset(erode(m, se), erode(bigger, se)) ||
            !subset(dilate(m, se), dilate(bigger, se)) ||
            !subset(open(m, se), open(bigger, se)))
            ++violations;
    }
    report(5, violations == 0,
           fmt("morphology laws: %d violations across %d random mask/SE trials "
               "(ordering, idempotence, monotonicity)",
               violations, trials));
}

// ---------------------------------------------------------------- criterion 6

void criterion_determinism(const TempDir& tmp) {
    std::vector<std::filesystem::path> manifests;
    for (int s = 1; s <= 8; ++s) {
        SynthConfig cfg;
        cfg.frames = 40;
        cfg.width = 48;
        cfg.height = 48;
        cfg.cars_max = 4;
        cfg.seed = static_cast<std::uint32_t>(s);
        manifests.push_back(
            generate_sequence(cfg, tmp.path / ("c6_seq" + std::to_string(s))).manifest_path);
    }

    BenchConfig config;
    config.pipeline.min_area = 8;
    config.worker_counts = {1, 2, 4};
    const auto loaded = load_sequences(manifests);
    const auto points = scalability_sweep(loaded.sequences, Algorithm::mog, config);

    const bool identical = points.size() == 3 &&
                           points[0].density_csv == points[1].density_csv &&
                           points[0].density_csv == points[2].density_csv;

    // throughput trend is machine-dependent: reported, not asserted
    std::string trend;
    bool monotone = true;
    for (std::size_t i = 0; i < points.size(); ++i) {
        trend += fmt("%s%d worker%s %.0f fps", i ? ", " : "", points[i].workers,
                     points[i].workers == 1 ? "" : "s", points[i].fps);
        if (i > 0 && points[i].fps < 0.9 * points[i - 1].fps)
            monotone = false;
    }
    report(6, identical,
           fmt("determinism: density CSVs byte-identical across workers {1,2,4} on 8 "
               "sequences: %s; throughput %s (trend %s, informational)",
               identical ? "yes" : "NO", trend.c_str(),
               monotone ? "non-decreasing within 10%" : "not monotone on this machine"));
}

// ---------------------------------------------------------------- criterion 7

void criterion_codec() {
    std::mt19937 rng(2026);
    int roundtrip_failures = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const int w = 1 + static_cast<int>(rng() % 40);
        const int h = 1 + static_cast<int>(rng() % 40);
        Frame f(w, h, (rng() % 2) ? 3 : 1);
        for (auto& px : f.data)
            px = static_cast<std::uint8_t>(rng());
        const auto bytes = encode_pnm(f);
        const Frame back = decode_pnm(bytes);
        if (!(back == f) || encode_pnm(back) != bytes)
            ++roundtrip_failures;
    }

    int crashes = 0;
    long rejected = 0;
    const std::string alphabet = "P1234567fF #\n\r\t0123456789xyz-";
    for (int trial = 0; trial < 10000; ++trial) {
        std::vector<std::uint8_t> junk;
        const std::size_t len = rng() % 64;
        for (std::size_t i = 0; i < len; ++i)
            junk.push_back(trial % 4 == 0
                               ? static_cast<std::uint8_t>(rng())
                               : static_cast<std::uint8_t>(
                                     alphabet[rng() % alphabet.size()]));
        try {
            decode_pnm(junk);
        } catch (const Error&) {
            ++rejected;
        } catch (...) {
            ++crashes; // anything but the library error type counts as a crash
        }
    }

    const bool ok = roundtrip_failures == 0 && crashes == 0;
    report(7, ok,
           fmt("codec: %d/100 round-trip failures, %d non-Error escapes over 10000 fuzzed "
               "headers (%ld rejected cleanly)",
               roundtrip_failures, crashes, rejected));
}

} // namespace

int main() {
    TempDir tmp;
    criterion_counting(tmp);
    criterion_static_scene();
    criterion_oracles();
    criterion_numerics();
    criterion_morphology_laws();
    criterion_determinism(tmp);
    criterion_codec();

    if (failures == 0)
        std::printf("acceptance: all 7 criteria passed\n");
    else
        std::printf("acceptance: %d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
