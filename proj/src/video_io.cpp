#include "mebench/video_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace mebench {

SynthPattern parse_synth_pattern(const std::string& name) {
    if (name == "translate") return SynthPattern::translate;
    if (name == "random-texture-translate" || name == "rtt")
        return SynthPattern::random_texture_translate;
    if (name == "static") return SynthPattern::static_scene;
    throw std::invalid_argument("unknown synth pattern: " + name);
}

std::string to_string(SynthPattern p) {
    switch (p) {
        case SynthPattern::translate: return "translate";
        case SynthPattern::random_texture_translate: return "random-texture-translate";
        case SynthPattern::static_scene: return "static";
    }
    return "?";
}

namespace {

std::uint8_t rng_byte(std::mt19937_64& rng) { return static_cast<std::uint8_t>(rng() & 0xff); }

// Integer triangle wave, period 256, range 0..128.
int tri(int t) {
    const int m = t & 255;
    return m < 128 ? m : 256 - m;
}

// Smooth deterministic content with a little seeded noise so the error
// surface has a unique minimum at the true displacement.
Frame smooth_base(int w, int h, std::mt19937_64& rng) {
    Frame f(w, h, 0);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const int s = (tri(x * 2 + 17) + tri(y * 2 + 173) + tri(x + y + 89)) * 2 / 3;
            const int noise = static_cast<int>(rng() & 0x0f) - 8;
            int v = s + noise;
            v = v < 0 ? 0 : (v > 255 ? 255 : v);
            f.at(x, y) = static_cast<std::uint8_t>(v);
        }
    }
    return f;
}

Frame texture_base(int w, int h, std::mt19937_64& rng) {
    Frame f(w, h, 0);
    for (auto& px : f.luma) px = rng_byte(rng);
    return f;
}

}  // namespace

Sequence synth(const SynthSpec& spec) {
    if (spec.width <= 0 || spec.height <= 0)
        throw std::invalid_argument("synth: zero-sized dimensions");
    if (spec.frame_count < 1) throw std::invalid_argument("synth: frame_count must be >= 1");

    std::mt19937_64 rng(spec.seed);
    Sequence seq;
    seq.name = to_string(spec.pattern);
    seq.width = spec.width;
    seq.height = spec.height;

    Frame base = spec.pattern == SynthPattern::random_texture_translate
                     ? texture_base(spec.width, spec.height, rng)
                     : smooth_base(spec.width, spec.height, rng);
    seq.append(base);

    for (int f = 1; f < spec.frame_count; ++f) {
        const Frame& prev = seq.frames.back();
        Frame next(spec.width, spec.height, f);
        if (spec.pattern == SynthPattern::static_scene) {
            next.luma = prev.luma;
        } else {
            // next(x, y) samples prev at +true_mv so an estimator recovers
            // exactly true_mv; uncovered pixels get fresh texture.
            for (int y = 0; y < spec.height; ++y) {
                for (int x = 0; x < spec.width; ++x) {
                    const int sx = x + spec.true_mv.x;
                    const int sy = y + spec.true_mv.y;
                    if (sx >= 0 && sx < spec.width && sy >= 0 && sy < spec.height)
                        next.at(x, y) = prev.at(sx, sy);
                    else
                        next.at(x, y) = rng_byte(rng);
                }
            }
        }
        seq.append(std::move(next));
    }
    return seq;
}

Sequence load_yuv420(const std::string& path, int width, int height, int max_frames,
                     bool* truncated) {
    if (truncated != nullptr) *truncated = false;
    if (width <= 0 || height <= 0) throw std::invalid_argument("load_yuv420: bad dimensions");
    if (width % 2 != 0 || height % 2 != 0)
        throw std::invalid_argument("load_yuv420: odd dimensions are not valid 4:2:0");
    if (max_frames < 0) throw std::invalid_argument("load_yuv420: negative frame count");

    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);

    const std::uint64_t luma_bytes = static_cast<std::uint64_t>(width) * height;
    const std::uint64_t chroma_bytes = luma_bytes / 2;
    const std::uint64_t frame_bytes = luma_bytes + chroma_bytes;
    const std::uint64_t file_size = std::filesystem::file_size(path);

    const std::uint64_t available = file_size / frame_bytes;
    if (truncated != nullptr && file_size % frame_bytes != 0) *truncated = true;

    const std::uint64_t count = std::min<std::uint64_t>(available, max_frames);

    Sequence seq;
    seq.name = std::filesystem::path(path).stem().string();
    seq.width = width;
    seq.height = height;
    for (std::uint64_t f = 0; f < count; ++f) {
        Frame frame(width, height, static_cast<int>(f));
        in.read(reinterpret_cast<char*>(frame.luma.data()),
                static_cast<std::streamsize>(luma_bytes));
        in.seekg(static_cast<std::streamoff>(chroma_bytes), std::ios::cur);
        if (!in) throw std::runtime_error("read error in " + path);
        seq.append(std::move(frame));
    }
    return seq;
}

namespace {

bool is_supported_420(const std::string& colorspace) {
    return colorspace == "420" || colorspace == "420jpeg" || colorspace == "420paldv" ||
           colorspace == "420mpeg2";
}

}  // namespace

Sequence load_y4m(const std::string& path, int max_frames) {
    if (max_frames < 0) throw std::invalid_argument("load_y4m: negative frame count");
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);

    std::string header;
    if (!std::getline(in, header) || header.rfind("YUV4MPEG2", 0) != 0)
        throw std::runtime_error(path + ": bad Y4M signature");

    int width = 0, height = 0;
    std::string colorspace = "420";
    std::istringstream tokens(header.substr(9));
    std::string tok;
    while (tokens >> tok) {
        try {
            switch (tok[0]) {
                case 'W': width = std::stoi(tok.substr(1)); break;
                case 'H': height = std::stoi(tok.substr(1)); break;
                case 'C': colorspace = tok.substr(1); break;
                default: break;  // frame rate, interlacing, aspect, extensions
            }
        } catch (const std::exception&) {
            throw std::runtime_error(path + ": malformed Y4M header token " + tok);
        }
    }
    if (width <= 0 || height <= 0)
        throw std::runtime_error(path + ": Y4M header missing dimensions");
    if (!is_supported_420(colorspace))
        throw std::runtime_error(path + ": unsupported colorspace C" + colorspace);
    if (width % 2 != 0 || height % 2 != 0)
        throw std::runtime_error(path + ": odd dimensions are not valid 4:2:0");

    const std::uint64_t luma_bytes = static_cast<std::uint64_t>(width) * height;
    const std::uint64_t chroma_bytes = luma_bytes / 2;

    Sequence seq;
    seq.name = std::filesystem::path(path).stem().string();
    seq.width = width;
    seq.height = height;
    while (static_cast<int>(seq.frame_count()) < max_frames) {
        std::string marker;
        if (!std::getline(in, marker)) break;  // clean end of stream
        if (marker.rfind("FRAME", 0) != 0 ||
            (marker.size() > 5 && marker[5] != ' '))
            throw std::runtime_error(path + ": malformed FRAME header");
        Frame frame(width, height, static_cast<int>(seq.frame_count()));
        in.read(reinterpret_cast<char*>(frame.luma.data()),
                static_cast<std::streamsize>(luma_bytes));
        if (static_cast<std::uint64_t>(in.gcount()) != luma_bytes) break;  // partial tail
        in.seekg(static_cast<std::streamoff>(chroma_bytes), std::ios::cur);
        if (!in) break;
        seq.append(std::move(frame));
    }
    return seq;
}

void write_yuv420(const std::string& path, const Sequence& seq) {
    if (seq.width % 2 != 0 || seq.height % 2 != 0)
        throw std::invalid_argument("write_yuv420: odd dimensions are not valid 4:2:0");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    const std::size_t chroma_bytes =
        static_cast<std::size_t>(seq.width) * seq.height / 2;
    const std::vector<char> chroma(chroma_bytes, char(128));
    for (const Frame& f : seq.frames) {
        out.write(reinterpret_cast<const char*>(f.luma.data()),
                  static_cast<std::streamsize>(f.luma.size()));
        out.write(chroma.data(), static_cast<std::streamsize>(chroma.size()));
    }
    if (!out) throw std::runtime_error("write error on " + path);
}

void write_pgm(const std::string& path, const Frame& frame) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "P5\n" << frame.width << " " << frame.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(frame.luma.data()),
              static_cast<std::streamsize>(frame.luma.size()));
    if (!out) throw std::runtime_error("write error on " + path);
}

}  // namespace mebench
