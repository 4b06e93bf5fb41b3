#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "bgbench/error.hpp"

namespace bgbench {

// 8-bit image, row-major, interleaved channels. channels is 1 (gray) or 3 (RGB).
struct Frame {
    int width = 0;
    int height = 0;
    int channels = 1;
    std::vector<std::uint8_t> data; // width * height * channels samples
    std::string id;                 // source path or synthetic name, not part of equality

    Frame() = default;
    Frame(int w, int h, int ch, std::string frame_id = {})
        : width(w), height(h), channels(ch), data(checked_size(w, h, ch), 0),
          id(std::move(frame_id)) {}

    // Validates before anything is allocated.
    static std::size_t checked_size(int w, int h, int ch) {
        if (w < 1 || h < 1 || (ch != 1 && ch != 3))
            throw Error(ErrorCode::InvalidParams, "bad frame geometry " + std::to_string(w) + "x" +
                                                      std::to_string(h) + "x" + std::to_string(ch));
        return static_cast<std::size_t>(w) * h * ch;
    }

    std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }

    std::uint8_t at(int row, int col, int ch = 0) const {
        return data[(static_cast<std::size_t>(row) * width + col) * channels + ch];
    }
    std::uint8_t& at(int row, int col, int ch = 0) {
        return data[(static_cast<std::size_t>(row) * width + col) * channels + ch];
    }

    friend bool operator==(const Frame& a, const Frame& b) {
        return a.width == b.width && a.height == b.height && a.channels == b.channels &&
               a.data == b.data;
    }
};

// One pixel as real-valued channel components on the 0-255 scale.
struct PixelSample {
    int n = 1;
    std::array<double, 3> v{};

    double operator[](int i) const { return v[static_cast<std::size_t>(i)]; }
};

struct Sample {
    int row = 0;
    int col = 0;
    PixelSample value;
};

inline PixelSample sample_at(const Frame& f, int row, int col) {
    PixelSample s;
    s.n = f.channels;
    for (int ch = 0; ch < f.channels; ++ch)
        s.v[static_cast<std::size_t>(ch)] = f.at(row, col, ch);
    return s;
}

// Row-major traversal of a frame yielding (row, col, sample). The frame must
// outlive the range.
class SampleRange {
  public:
    class iterator {
      public:
        iterator(const Frame* f, std::size_t idx) : frame_(f), idx_(idx) {}

        Sample operator*() const {
            const int row = static_cast<int>(idx_ / frame_->width);
            const int col = static_cast<int>(idx_ % frame_->width);
            return Sample{row, col, sample_at(*frame_, row, col)};
        }
        iterator& operator++() {
            ++idx_;
            return *this;
        }
        bool operator==(const iterator& o) const { return idx_ == o.idx_; }
        bool operator!=(const iterator& o) const { return idx_ != o.idx_; }

      private:
        const Frame* frame_;
        std::size_t idx_;
    };

    explicit SampleRange(const Frame& f) : frame_(&f) {}
    iterator begin() const { return iterator(frame_, 0); }
    iterator end() const { return iterator(frame_, frame_->pixel_count()); }

  private:
    const Frame* frame_;
};

inline SampleRange samples(const Frame& f) { return SampleRange(f); }

} // namespace bgbench
