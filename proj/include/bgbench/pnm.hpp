#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "bgbench/frame.hpp"

namespace bgbench {

// Binary PGM (P5, 1 channel) and PPM (P6, 3 channels), maxval 255 only.
// Header grammar: magic, whitespace, width, whitespace, height, whitespace,
// maxval, one whitespace byte, raster. '#' comments allowed between tokens.
Frame decode_pnm(std::span<const std::uint8_t> bytes);

// Canonical header "P5\n{w} {h}\n255\n" (or "P6\n...") followed by the raster.
std::vector<std::uint8_t> encode_pnm(const Frame& frame);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

Frame load_pnm_file(const std::filesystem::path& path);
void save_pnm_file(const Frame& frame, const std::filesystem::path& path);

} // namespace bgbench
