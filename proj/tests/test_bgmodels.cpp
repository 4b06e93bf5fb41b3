#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "bgbench/bgmodel.hpp"
#include "bgbench/mog.hpp"

using namespace bgbench;

namespace {

Frame constant_frame(int w, int h, int value, int ch = 1) {
    Frame f(w, h, ch);
    for (auto& b : f.data)
        b = static_cast<std::uint8_t>(value);
    return f;
}

Frame random_frame(std::mt19937& rng, int w, int h, int ch = 1) {
    Frame f(w, h, ch);
    for (auto& b : f.data)
        b = static_cast<std::uint8_t>(rng());
    return f;
}

GaussianComponent comp1d(double weight, double mean, double var) {
    GaussianComponent c;
    c.weight = weight;
    c.n = 1;
    c.mean[0] = mean;
    c.var[0] = var;
    return c;
}

} // namespace

TEST_CASE("gaussian density: standard normal peak") {
    const auto c = comp1d(1.0, 0.0, 1.0);
    const PixelSample x{1, {0.0, 0.0, 0.0}};
    CHECK(gaussian_density(x, c) ==
          doctest::Approx(0.3989422804014327).epsilon(1e-12)); // 1/sqrt(2*pi)
}

TEST_CASE("gaussian density: 3-channel standard normal peak") {
    GaussianComponent c;
    c.weight = 1.0;
    c.n = 3;
    c.mean = {0.0, 0.0, 0.0};
    c.var = {1.0, 1.0, 1.0};
    const PixelSample x{3, {0.0, 0.0, 0.0}};
    CHECK(gaussian_density(x, c) ==
          doctest::Approx(0.06349363593424097).epsilon(1e-12)); // (2*pi)^(-3/2)
}

TEST_CASE("gaussian density: one sigma out with variance 4") {
    const auto c = comp1d(1.0, 0.0, 4.0);
    const PixelSample x{1, {2.0, 0.0, 0.0}};
    CHECK(gaussian_density(x, c) == doctest::Approx(0.12098536225957167).epsilon(1e-12));
}

TEST_CASE("gaussian density: channel count mismatch throws") {
    const auto c = comp1d(1.0, 0.0, 1.0);
    const PixelSample x{3, {0.0, 0.0, 0.0}};
    try {
        gaussian_density(x, c);
        FAIL("expected DimensionMismatch");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DimensionMismatch);
    }
}

TEST_CASE("mixture probability is the weighted component sum") {
    const auto a = comp1d(0.25, 10.0, 4.0);
    const auto b = comp1d(0.75, 40.0, 9.0);
    const GaussianComponent comps[] = {a, b};
    const PixelSample x{1, {12.0, 0.0, 0.0}};
    const double want = 0.25 * gaussian_density(x, a) + 0.75 * gaussian_density(x, b);
    CHECK(mixture_probability(x, comps) == doctest::Approx(want).epsilon(1e-12));

    const GaussianComponent single[] = {comp1d(1.0, 10.0, 4.0)};
    CHECK(mixture_probability(x, single) ==
          doctest::Approx(gaussian_density(x, single[0])).epsilon(1e-12));
}

TEST_CASE("1-D mixture density integrates to 1 by trapezoid quadrature") {
    const GaussianComponent comps[] = {comp1d(0.3, 20.0, 25.0), comp1d(0.45, 128.0, 100.0),
                                       comp1d(0.25, 230.0, 225.0)};
    const double lo = -1000.0, hi = 1000.0, step = 0.05;
    double integral = 0.0;
    double prev = mixture_probability(PixelSample{1, {lo, 0.0, 0.0}}, comps);
    for (double t = lo + step; t <= hi + step / 2; t += step) {
        const double cur = mixture_probability(PixelSample{1, {t, 0.0, 0.0}}, comps);
        integral += 0.5 * (prev + cur) * step;
        prev = cur;
    }
    CHECK(integral == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("mog params validation and JSON") {
    MogParams p;
    CHECK_NOTHROW(p.validate());

    const MogParams parsed = mog_params_from_json(R"({"alpha": 0.01, "K": 3})");
    CHECK(parsed.alpha == doctest::Approx(0.01));
    CHECK(parsed.K == 3);
    CHECK(parsed.match_sigmas == doctest::Approx(2.5)); // untouched default

    auto code_of = [](const std::string& text) {
        try {
            mog_params_from_json(text);
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::IoError;
    };
    CHECK(code_of(R"({"turbo": true})") == ErrorCode::ParseError);
    CHECK(code_of(R"([1, 2])") == ErrorCode::ParseError);
    CHECK(code_of(R"({"alpha": 0})") == ErrorCode::InvalidParams);
    CHECK(code_of(R"({"K": 0})") == ErrorCode::InvalidParams);
    CHECK(code_of(R"({"background_weight_threshold": 1.5})") == ErrorCode::InvalidParams);
    CHECK(code_of(R"({"initial_variance": 1, "variance_floor": 4})") ==
          ErrorCode::InvalidParams);

    MogParams q;
    q.alpha = 0.25;
    q.K = 2;
    const MogParams back = mog_params_from_json(mog_params_to_json(q));
    CHECK(back.alpha == q.alpha);
    CHECK(back.K == q.K);
    CHECK(back.background_weight_threshold == q.background_weight_threshold);
    CHECK(back.variance_floor == q.variance_floor);
}

TEST_CASE("mog cold start: first frame initializes and is all background") {
    MixtureModel model;
    CHECK(!model.initialized());
    const auto mask = model.observe(constant_frame(4, 3, 77));
    CHECK(model.initialized());
    CHECK(model.width() == 4);
    CHECK(model.height() == 3);
    CHECK(mask.foreground_count() == 0);

    const auto comps = model.components_at(1, 2);
    REQUIRE(comps.size() == 5);
    CHECK(comps[0].weight == 1.0);
    CHECK(comps[0].mean[0] == 77.0);
    CHECK(comps[0].var[0] == 225.0);
    CHECK(comps[1].weight == 0.0);
}

TEST_CASE("mog single matched update follows the pinned arithmetic") {
    MixtureModel model;
    model.observe(constant_frame(1, 1, 100));
    const auto mask = model.observe(constant_frame(1, 1, 110));
    CHECK(mask.foreground_count() == 0); // matched the dominant component

    // rho clamps up to alpha; by hand:
    //   mean = 0.995*100 + 0.005*110           = 100.05
    //   var  = 0.995*225 + 0.005*(110-100.05)^2 = 224.3700125
    const auto comps = model.components_at(0, 0);
    CHECK(comps[0].weight == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(comps[0].mean[0] == doctest::Approx(100.05).epsilon(1e-12));
    CHECK(comps[0].var[0] == doctest::Approx(224.3700125).epsilon(1e-12));
}

TEST_CASE("mog constant sequence stays all background") {
    MixtureModel model;
    const auto frame = constant_frame(8, 8, 128);
    for (int t = 0; t < 50; ++t)
        CHECK(model.observe(frame).foreground_count() == 0);
}

TEST_CASE("mog detects an outlier pixel after burn-in and tracks it as a new component") {
    MixtureModel model;
    const auto background = constant_frame(8, 8, 100);
    for (int t = 0; t < 30; ++t)
        model.observe(background);

    Frame lit = background;
    lit.at(5, 5) = 255;
    const auto mask = model.observe(lit);
    CHECK(mask.at(5, 5));
    CHECK(mask.foreground_count() == 1);

    // the unmatched observation replaced the least-fit component
    const auto comps = model.components_at(5, 5);
    bool found = false;
    for (const auto& c : comps)
        if (c.mean[0] == 255.0 && c.var[0] == 225.0)
            found = true;
    CHECK(found);
}

TEST_CASE("mog weights stay normalized and ordered over random observations") {
    std::mt19937 rng(17);
    MixtureModel model;
    for (int t = 0; t < 200; ++t)
        model.observe(random_frame(rng, 4, 4, 1));

    auto fitness = [](const GaussianComponent& c) {
        double mean_var = 0.0;
        for (int j = 0; j < c.n; ++j)
            mean_var += c.var[static_cast<std::size_t>(j)];
        return c.weight / std::sqrt(mean_var / c.n);
    };
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
            const auto comps = model.components_at(r, c);
            double sum = 0.0;
            for (const auto& g : comps) {
                sum += g.weight;
                for (int ch = 0; ch < g.n; ++ch)
                    CHECK(g.var[static_cast<std::size_t>(ch)] >= 4.0); // variance floor
            }
            CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
            for (std::size_t i = 1; i < comps.size(); ++i)
                CHECK(fitness(comps[i]) <= fitness(comps[i - 1]) + 1e-12);
        }
}

TEST_CASE("mog is deterministic: same frames, same masks") {
    std::mt19937 rng_a(5), rng_b(5);
    MixtureModel a, b;
    for (int t = 0; t < 40; ++t) {
        const auto fa = random_frame(rng_a, 6, 5, 3);
        const auto fb = random_frame(rng_b, 6, 5, 3);
        REQUIRE(fa == fb);
        CHECK(a.observe(fa) == b.observe(fb));
    }
}

TEST_CASE("mog rejects geometry and channel changes") {
    MixtureModel model;
    model.observe(constant_frame(4, 4, 10, 1));
    try {
        model.observe(constant_frame(5, 4, 10, 1));
        FAIL("expected DimensionMismatch");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DimensionMismatch);
    }
    try {
        model.observe(constant_frame(4, 4, 10, 3));
        FAIL("expected ChannelMismatch");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ChannelMismatch);
    }
}

TEST_CASE("absdiff threshold is strict and takes the max channel") {
    const auto a = constant_frame(2, 1, 128, 3);
    Frame b = a;
    b.at(0, 0, 1) = 153; // one channel +25
    b.at(0, 1, 2) = 154; // one channel +26
    const auto mask = absdiff_mask(a, b, 25.0);
    CHECK(!mask.at(0, 0)); // 25 > 25 is false
    CHECK(mask.at(0, 1));
    CHECK(absdiff_mask(a, b, 25.0) == absdiff_mask(b, a, 25.0)); // symmetric
}

TEST_CASE("absdiff rejects mismatched inputs") {
    CHECK_THROWS_AS(absdiff_mask(constant_frame(2, 2, 0), constant_frame(3, 2, 0), 10.0),
                    Error);
    CHECK_THROWS_AS(absdiff_mask(constant_frame(2, 2, 0, 1), constant_frame(2, 2, 0, 3), 10.0),
                    Error);
}

TEST_CASE("framediff: first frame is background, motion shows at both edges") {
    FrameDiffModel model(25.0);
    auto road = constant_frame(8, 1, 100);
    CHECK(model.observe(road).foreground_count() == 0);

    Frame t1 = road;
    t1.at(0, 2) = 200; // object at column 2
    const auto m1 = model.observe(t1);
    CHECK(m1.at(0, 2));
    CHECK(m1.foreground_count() == 1);

    Frame t2 = road;
    t2.at(0, 4) = 200; // moved to column 4
    const auto m2 = model.observe(t2);
    CHECK(m2.at(0, 2)); // trailing edge
    CHECK(m2.at(0, 4)); // leading edge
    CHECK(m2.foreground_count() == 2);
}

TEST_CASE("framediff fails on a stopped object; staticbg keeps seeing it") {
    const auto road = constant_frame(8, 1, 100);
    Frame parked = road;
    parked.at(0, 3) = 220;

    FrameDiffModel fd(25.0);
    StaticBgModel sb(road, 25.0);
    fd.observe(road);

    for (int t = 0; t < 5; ++t) {
        const auto fd_mask = fd.observe(parked);
        const auto sb_mask = sb.observe(parked);
        CHECK(sb_mask.at(0, 3));
        if (t > 0)
            CHECK(fd_mask.foreground_count() == 0); // differencing lost the parked car
    }
}

TEST_CASE("staticbg without an explicit reference adopts the first frame") {
    StaticBgModel model(25.0);
    const auto first = constant_frame(3, 3, 50);
    CHECK(model.observe(first).foreground_count() == 0);
    Frame next = first;
    next.at(1, 1) = 120;
    const auto mask = model.observe(next);
    CHECK(mask.at(1, 1));
    CHECK(mask.foreground_count() == 1);
}
