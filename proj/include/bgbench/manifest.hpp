#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "bgbench/frame.hpp"

namespace bgbench {

// One camera feed: an ordered list of frame files plus the expected geometry.
struct SequenceManifest {
    std::string camera_id;
    double interval_seconds = 0.0;
    int width = 0;
    int height = 0;
    std::vector<std::string> frames;  // as written in the manifest, temporal order
    std::filesystem::path base_dir;   // directory the manifest was loaded from

    std::filesystem::path frame_path(std::size_t i) const { return base_dir / frames[i]; }
};

SequenceManifest load_manifest(const std::filesystem::path& path);

// Decodes frame i and rejects it if its geometry does not match the manifest.
// The frame id is the manifest entry string, which is what ground-truth rows
// and density records join on.
Frame load_frame(const SequenceManifest& manifest, std::size_t i);

} // namespace bgbench
