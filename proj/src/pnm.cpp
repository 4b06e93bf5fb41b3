#include "bgbench/pnm.hpp"

#include <cstdio>
#include <fstream>

namespace bgbench {

namespace {

bool is_space(std::uint8_t c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

struct ByteCursor {
    std::span<const std::uint8_t> bytes;
    std::size_t pos = 0;

    bool done() const { return pos >= bytes.size(); }
    std::uint8_t peek() const { return bytes[pos]; }

    // Whitespace and '#'-to-end-of-line comments between header tokens.
    void skip_separators() {
        while (!done()) {
            if (is_space(peek())) {
                ++pos;
            } else if (peek() == '#') {
                while (!done() && peek() != '\n')
                    ++pos;
            } else {
                break;
            }
        }
    }

    long read_uint() {
        skip_separators();
        if (done() || peek() < '0' || peek() > '9')
            throw Error(ErrorCode::MalformedHeader, "expected unsigned integer in header");
        long value = 0;
        while (!done() && peek() >= '0' && peek() <= '9') {
            value = value * 10 + (peek() - '0');
            if (value > 1000000000L)
                throw Error(ErrorCode::MalformedHeader, "header value out of range");
            ++pos;
        }
        return value;
    }
};

} // namespace

Frame decode_pnm(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 2)
        throw Error(ErrorCode::MalformedHeader, "input shorter than magic");
    if (bytes[0] != 'P')
        throw Error(ErrorCode::MalformedHeader, "missing PNM magic");

    int channels = 0;
    const char kind = static_cast<char>(bytes[1]);
    if (kind == '5')
        channels = 1;
    else if (kind == '6')
        channels = 3;
    else if ((kind >= '1' && kind <= '7') || kind == 'f' || kind == 'F')
        throw Error(ErrorCode::UnsupportedMagic, std::string("P") + kind + " not supported");
    else
        throw Error(ErrorCode::MalformedHeader, "unknown magic byte");

    ByteCursor cur{bytes, 2};
    const long width = cur.read_uint();
    const long height = cur.read_uint();
    const long maxval = cur.read_uint();
    if (width < 1 || height < 1)
        throw Error(ErrorCode::MalformedHeader, "non-positive image dimensions");
    if (maxval != 255)
        throw Error(ErrorCode::UnsupportedMagic, "maxval " + std::to_string(maxval) +
                                                     " not supported, must be 255");
    if (cur.done() || !is_space(cur.peek()))
        throw Error(ErrorCode::MalformedHeader, "missing whitespace before raster");
    ++cur.pos;

    const std::uint64_t need =
        static_cast<std::uint64_t>(width) * static_cast<std::uint64_t>(height) * channels;
    if (bytes.size() - cur.pos < need)
        throw Error(ErrorCode::TruncatedRaster,
                    "raster promises " + std::to_string(need) + " bytes, got " +
                        std::to_string(bytes.size() - cur.pos));

    Frame frame(static_cast<int>(width), static_cast<int>(height), channels);
    std::copy_n(bytes.begin() + static_cast<std::ptrdiff_t>(cur.pos), need, frame.data.begin());
    return frame;
}

std::vector<std::uint8_t> encode_pnm(const Frame& frame) {
    char header[64];
    const int len = std::snprintf(header, sizeof(header), "P%c\n%d %d\n255\n",
                                  frame.channels == 1 ? '5' : '6', frame.width, frame.height);
    std::vector<std::uint8_t> out;
    out.reserve(static_cast<std::size_t>(len) + frame.data.size());
    out.insert(out.end(), header, header + len);
    out.insert(out.end(), frame.data.begin(), frame.data.end());
    return out;
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::IoError, "cannot open " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    if (in.bad())
        throw Error(ErrorCode::IoError, "read failed for " + path.string());
    return bytes;
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out)
        throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

Frame load_pnm_file(const std::filesystem::path& path) {
    try {
        Frame frame = decode_pnm(read_file(path));
        frame.id = path.string();
        return frame;
    } catch (const Error& e) {
        throw Error(e.code(), path.string() + ": " + e.what());
    }
}

void save_pnm_file(const Frame& frame, const std::filesystem::path& path) {
    write_file(path, encode_pnm(frame));
}

} // namespace bgbench
