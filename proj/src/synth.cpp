#include "bgbench/synth.hpp"

#include <cmath>
#include <cstdio>
#include <deque>
#include <numbers>
#include <random>

#include <json.hpp>

#include "bgbench/error.hpp"
#include "bgbench/frame.hpp"
#include "bgbench/pnm.hpp"

namespace bgbench {

namespace {

// std::mt19937 output mapped by hand; the standard distributions are not
// bit-stable across library implementations.
class SynthRng {
  public:
    explicit SynthRng(std::uint32_t seed) : gen_(seed) {}

    std::uint32_t u32() { return gen_(); }

    int uniform_int(int lo, int hi) { // inclusive
        return lo + static_cast<int>(u32() % static_cast<std::uint32_t>(hi - lo + 1));
    }

    double uniform01() { return (static_cast<double>(u32()) + 0.5) / 4294967296.0; }

    double gaussian(double sigma) {
        const double u1 = uniform01();
        const double u2 = uniform01();
        return sigma * std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * std::numbers::pi * u2);
    }

  private:
    std::mt19937 gen_;
};

struct Car {
    int anchor_row; // bottom row of the rectangle
    int w, h;
    int x0;
    int dir; // +1 or -1
    int shade;
    int spawn_frame;

    int x_at(int frame, double speed, int width) const {
        const int travel =
            static_cast<int>(std::floor(speed * (frame - spawn_frame))) * dir;
        const int period = std::max(1, width - w);
        const int x = (x0 + travel) % period;
        return x < 0 ? x + period : x;
    }
};

Car spawn_car(SynthRng& rng, const SynthConfig& cfg, int frame) {
    Car car{};
    const int hi = cfg.height - 2;
    const int lo = std::min(hi, std::max(7, cfg.height / 5));
    car.anchor_row = rng.uniform_int(lo, hi);

    // Perspective: rectangles grow toward the bottom of the image.
    const double scale = static_cast<double>(car.anchor_row) / (cfg.height - 1);
    car.w = std::min(cfg.width, 4 + static_cast<int>(std::lround(8.0 * scale)));
    car.h = std::min(car.anchor_row + 1, 3 + static_cast<int>(std::lround(5.0 * scale)));
    car.x0 = rng.uniform_int(0, std::max(0, cfg.width - car.w));
    car.dir = (rng.u32() & 1) ? 1 : -1;
    car.shade = (rng.u32() & 1) ? rng.uniform_int(15, 45) : rng.uniform_int(205, 245);
    car.spawn_frame = frame;
    return car;
}

std::string frame_name(int i) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "frame_%05d.pgm", i);
    return buf;
}

} // namespace

SynthResult generate_sequence(const SynthConfig& cfg, const std::filesystem::path& outdir) {
    if (cfg.frames < 1 || cfg.width < 1 || cfg.height < 2)
        throw Error(ErrorCode::InvalidParams, "synthetic sequence needs frames >= 1 and a "
                                              "plausible geometry");
    if (cfg.cars_min < 0 || cfg.cars_max < cfg.cars_min)
        throw Error(ErrorCode::InvalidParams, "car range must satisfy 0 <= min <= max");
    if (cfg.noise_sigma < 0.0 || cfg.speed < 0.0 || cfg.hold < 1)
        throw Error(ErrorCode::InvalidParams, "noise, speed and hold must be non-negative");

    std::filesystem::create_directories(outdir);
    SynthRng rng(cfg.seed);

    Frame base(cfg.width, cfg.height, 1, "background");
    for (auto& px : base.data)
        px = static_cast<std::uint8_t>(rng.uniform_int(90, 160));

    std::deque<Car> alive;
    std::vector<int> counts;
    std::vector<std::string> names;
    counts.reserve(static_cast<std::size_t>(cfg.frames));

    std::string truth_csv = "image,count\n";

    for (int t = 0; t < cfg.frames; ++t) {
        if (t % cfg.hold == 0) {
            const int target = rng.uniform_int(cfg.cars_min, cfg.cars_max);
            while (static_cast<int>(alive.size()) > target)
                alive.pop_front(); // oldest car leaves first
            while (static_cast<int>(alive.size()) < target)
                alive.push_back(spawn_car(rng, cfg, t));
        }

        Frame img = base;
        for (const auto& car : alive) {
            const int x = car.x_at(t, cfg.speed, cfg.width);
            for (int r = car.anchor_row - car.h + 1; r <= car.anchor_row; ++r)
                for (int c = x; c < std::min(cfg.width, x + car.w); ++c)
                    img.at(r, c) = static_cast<std::uint8_t>(car.shade);
        }
        if (cfg.noise_sigma > 0.0) {
            for (auto& px : img.data) {
                const double v = px + rng.gaussian(cfg.noise_sigma);
                px = static_cast<std::uint8_t>(std::clamp<long>(std::lround(v), 0, 255));
            }
        }

        const std::string name = frame_name(t);
        save_pnm_file(img, outdir / name);
        names.push_back(name);
        counts.push_back(static_cast<int>(alive.size()));
        truth_csv += name + "," + std::to_string(alive.size()) + "\n";
    }

    nlohmann::ordered_json manifest;
    manifest["camera_id"] = cfg.camera_id;
    manifest["interval_seconds"] = cfg.interval_seconds;
    manifest["width"] = cfg.width;
    manifest["height"] = cfg.height;
    manifest["frames"] = names;
    const std::string manifest_text = manifest.dump(2) + "\n";

    SynthResult result;
    result.manifest_path = outdir / "manifest.json";
    result.truth_path = outdir / "truth.csv";
    result.background_path = outdir / "background.pgm";
    result.counts = std::move(counts);

    write_file(result.manifest_path,
               {reinterpret_cast<const std::uint8_t*>(manifest_text.data()),
                manifest_text.size()});
    write_file(result.truth_path,
               {reinterpret_cast<const std::uint8_t*>(truth_csv.data()), truth_csv.size()});
    save_pnm_file(base, result.background_path);
    return result;
}

} // namespace bgbench
