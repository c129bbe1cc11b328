#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "mebench/matching.hpp"

namespace mebench {

// Per-block match results for one estimated frame, raster order. A prefix is
// filled while the frame is being estimated; complete fields are immutable.
struct MotionField {
    int cols = 0;
    int rows = 0;
    int frame_index = 0;
    std::vector<MatchResult> entries;

    MotionField() = default;
    MotionField(int nc, int nr, int frame_idx) : cols(nc), rows(nr), frame_index(frame_idx) {
        entries.reserve(static_cast<std::size_t>(nc) * nr);
    }

    std::size_t block_count() const { return static_cast<std::size_t>(cols) * rows; }
    bool complete() const { return entries.size() == block_count(); }
    bool has(int row, int col) const {
        return static_cast<std::size_t>(row) * cols + col < entries.size();
    }
    const MatchResult& at(int row, int col) const {
        return entries[static_cast<std::size_t>(row) * cols + col];
    }
    void push(MatchResult r) { entries.push_back(r); }
};

// The five prediction vectors, fixed slot order:
//   [0] B1 left, [1] B2 upper-left, [2] B3 upper, [3] B4 upper-right,
//   [4] B5 co-located block of the previous frame.
// Slots with no real neighbor hold (0,0) with available=false, so the set is
// always total.
struct PredictorSet {
    std::array<MotionVec, 5> mv{};
    std::array<bool, 5> available{};
};

inline constexpr int kPredLeft = 0;
inline constexpr int kPredUpperLeft = 1;
inline constexpr int kPredUpper = 2;
inline constexpr int kPredUpperRight = 3;
inline constexpr int kPredTemporal = 4;

// Collect B1..B5 for the block at (block_row, block_col). The current field
// must contain every raster-order predecessor of the block; previous may be
// null for the first estimated frame.
PredictorSet gather_predictors(const MotionField& current, const MotionField* previous,
                               int block_row, int block_col);

// Bounding box of the five predictors expanded by d on every side.
// Unclamped; callers clamp via clamp_rect.
SearchRect pvssa_rect(const PredictorSet& preds, int d);

// Union of the four (2r+1)^2 squares centred on the spatial predictors
// B1..B4, deduplicated and ordered row-major by (y, x). Unclamped.
std::vector<MotionVec> psa_regions(const PredictorSet& preds, int region_half_width = 2);

// Chebyshev distance from mv_c to the nearest spatial predictor B1..B4.
int displacement_d(const PredictorSet& preds, MotionVec mv_c);

}  // namespace mebench
