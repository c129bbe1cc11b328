#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mebench {

// Single luma plane, row-major, 8-bit. Chroma never participates in matching.
struct Frame {
    int width = 0;
    int height = 0;
    int index = 0;
    std::vector<std::uint8_t> luma;

    Frame() = default;
    Frame(int w, int h, int idx)
        : width(w), height(h), index(idx), luma(static_cast<std::size_t>(w) * h, 0) {}

    std::uint8_t at(int x, int y) const {
        return luma[static_cast<std::size_t>(y) * width + x];
    }
    std::uint8_t& at(int x, int y) {
        return luma[static_cast<std::size_t>(y) * width + x];
    }
    const std::uint8_t* row(int y) const {
        return luma.data() + static_cast<std::size_t>(y) * width;
    }

    bool same_dimensions(const Frame& other) const {
        return width == other.width && height == other.height;
    }
};

// Ordered frames sharing one geometry. Immutable once built; safe to share.
struct Sequence {
    std::string name;
    int width = 0;
    int height = 0;
    std::vector<Frame> frames;

    std::size_t frame_count() const { return frames.size(); }
    bool empty() const { return frames.empty(); }

    void append(Frame f) {
        if (frames.empty() && width == 0 && height == 0) {
            width = f.width;
            height = f.height;
        }
        if (f.width != width || f.height != height)
            throw std::invalid_argument("frame dimensions differ from sequence");
        f.index = static_cast<int>(frames.size());
        frames.push_back(std::move(f));
    }
};

}  // namespace mebench
