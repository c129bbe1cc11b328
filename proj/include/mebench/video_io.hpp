#pragma once

#include <cstdint>
#include <string>

#include "mebench/frame.hpp"
#include "mebench/matching.hpp"

namespace mebench {

enum class SynthPattern { translate, random_texture_translate, static_scene };

SynthPattern parse_synth_pattern(const std::string& name);
std::string to_string(SynthPattern p);

// Synthetic sequence with known ground-truth motion. true_mv is the motion
// vector an estimator should recover: frame f+1 samples frame f at +true_mv,
// with pixels that have no source filled from a seeded texture stream.
struct SynthSpec {
    SynthPattern pattern = SynthPattern::translate;
    MotionVec true_mv{};
    int width = 0;
    int height = 0;
    int frame_count = 1;
    std::uint64_t seed = 0;
};

Sequence synth(const SynthSpec& spec);

// Raw planar YUV 4:2:0: per frame w*h luma bytes then two half-resolution
// chroma planes. Only luma is kept. A truncated trailing frame is dropped
// and reported through `truncated` when given.
Sequence load_yuv420(const std::string& path, int width, int height, int max_frames,
                     bool* truncated = nullptr);

// YUV4MPEG2 stream, 4:2:0 colorspaces only. Dimensions come from the header.
Sequence load_y4m(const std::string& path, int max_frames);

// Writes a sequence as raw YUV 4:2:0 with mid-gray (128) chroma planes, so a
// round trip through load_yuv420 is luma-identical.
void write_yuv420(const std::string& path, const Sequence& seq);

// Binary PGM (P5) dump of a single luma frame.
void write_pgm(const std::string& path, const Frame& frame);

}  // namespace mebench
