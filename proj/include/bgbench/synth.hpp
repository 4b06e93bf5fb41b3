#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace bgbench {

// Seeded synthetic traffic sequence: a static textured background plus
// per-frame rectangular "cars" whose size shrinks toward the top of the
// image, the way real vehicles do under perspective. Every frame gets an
// exact hand-countable car count.
struct SynthConfig {
    int frames = 200;
    int width = 64;
    int height = 64;
    int cars_min = 0;
    int cars_max = 5;
    double noise_sigma = 2.0; // additive Gaussian pixel noise
    double speed = 2.0;       // car drift in pixels per frame
    int hold = 8;             // frames between car-count redraws
    std::uint32_t seed = 1;
    std::string camera_id = "synth";
    double interval_seconds = 60.0;
};

struct SynthResult {
    std::filesystem::path manifest_path;
    std::filesystem::path truth_path;
    std::filesystem::path background_path; // clean plate without cars or noise
    std::vector<int> counts;               // cars drawn per frame
};

// Writes PGM frames, manifest.json, truth.csv and background.pgm into outdir.
// Byte-identical output for identical configs.
SynthResult generate_sequence(const SynthConfig& config, const std::filesystem::path& outdir);

} // namespace bgbench
