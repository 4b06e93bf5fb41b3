#include "bgbench/manifest.hpp"

#include <json.hpp>

#include "bgbench/pnm.hpp"

namespace bgbench {

namespace {

const nlohmann::json& require_key(const nlohmann::json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end())
        throw Error(ErrorCode::MissingKey, std::string("manifest key '") + key + "' missing");
    return *it;
}

} // namespace

SequenceManifest load_manifest(const std::filesystem::path& path) {
    const auto bytes = read_file(path);
    const auto doc = nlohmann::json::parse(bytes.begin(), bytes.end(), nullptr, false);
    if (doc.is_discarded() || !doc.is_object())
        throw Error(ErrorCode::ParseError, path.string() + " is not a JSON object");

    SequenceManifest m;
    try {
        m.camera_id = require_key(doc, "camera_id").get<std::string>();
        m.interval_seconds = require_key(doc, "interval_seconds").get<double>();
        m.width = require_key(doc, "width").get<int>();
        m.height = require_key(doc, "height").get<int>();
        const auto& frames = require_key(doc, "frames");
        if (!frames.is_array())
            throw Error(ErrorCode::ParseError, "'frames' must be an array of strings");
        for (const auto& f : frames)
            m.frames.push_back(f.get<std::string>());
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
    }

    if (m.frames.empty())
        throw Error(ErrorCode::EmptyFrameList, path.string() + " lists no frames");
    if (m.interval_seconds <= 0.0)
        throw Error(ErrorCode::ParseError, "interval_seconds must be positive");
    if (m.width < 1 || m.height < 1)
        throw Error(ErrorCode::ParseError, "manifest width/height must be >= 1");

    m.base_dir = path.parent_path();
    return m;
}

Frame load_frame(const SequenceManifest& manifest, std::size_t i) {
    Frame frame = load_pnm_file(manifest.frame_path(i));
    if (frame.width != manifest.width || frame.height != manifest.height)
        throw Error(ErrorCode::DimensionMismatch,
                    manifest.frames[i] + " is " + std::to_string(frame.width) + "x" +
                        std::to_string(frame.height) + ", manifest declares " +
                        std::to_string(manifest.width) + "x" + std::to_string(manifest.height));
    frame.id = manifest.frames[i];
    return frame;
}

} // namespace bgbench
