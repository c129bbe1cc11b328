#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mebench/frame.hpp"

namespace mebench {

// Integer-pel displacement from a block's position to its match in the
// reference frame.
struct MotionVec {
    int x = 0;
    int y = 0;
    friend auto operator<=>(const MotionVec&, const MotionVec&) = default;
};

// Block-difference criterion. beta rescales by 1/N^2, delta picks the error
// exponent: SAE=(0,1), MAE=(1,1), SSE=(0,2), MSE=(1,2).
enum class Criterion { sae, mae, sse, mse };

constexpr int criterion_beta(Criterion c) {
    return (c == Criterion::mae || c == Criterion::mse) ? 1 : 0;
}
constexpr int criterion_delta(Criterion c) {
    return (c == Criterion::sse || c == Criterion::mse) ? 2 : 1;
}

Criterion parse_criterion(const std::string& name);
std::string to_string(Criterion c);

// Exact rational cost: num is the integer error sum, den is 1 or N^2.
// Keeps the inner loop free of floating point.
struct Cost {
    std::int64_t num = 0;
    std::int32_t den = 1;

    double value() const { return static_cast<double>(num) / den; }

    friend bool operator==(const Cost& a, const Cost& b) {
        return a.num * b.den == b.num * a.den;
    }
    friend bool operator<(const Cost& a, const Cost& b) {
        return a.num * b.den < b.num * a.den;
    }
};

// Aligned N x N tile of a frame. x0/y0 are top-left pixel coordinates and
// must be multiples of n; the block must lie fully inside its frame.
struct BlockRef {
    int x0 = 0;
    int y0 = 0;
    int n = 0;
};

// Inclusive displacement rectangle; non-empty by invariant.
struct SearchRect {
    int x_min = 0;
    int x_max = 0;
    int y_min = 0;
    int y_max = 0;

    bool contains(MotionVec mv) const {
        return mv.x >= x_min && mv.x <= x_max && mv.y >= y_min && mv.y <= y_max;
    }
    std::int64_t point_count() const {
        return static_cast<std::int64_t>(x_max - x_min + 1) * (y_max - y_min + 1);
    }
    friend bool operator==(const SearchRect&, const SearchRect&) = default;
};

struct MatchResult {
    MotionVec mv;
    Cost cost;
    std::int64_t nsp = 0;
};

// Integer error sum over the block at the given displacement:
// sum |I_cur - I_ref|^delta. The displaced block must be inside ref.
std::int64_t block_error_sum(const Frame& cur, const Frame& ref, const BlockRef& block,
                             MotionVec disp, int delta);

// Full criterion value (1/N^2)^beta * block_error_sum.
Cost block_cost(const Frame& cur, const Frame& ref, const BlockRef& block, MotionVec disp,
                Criterion kind);

// Intersect a rect with the +/-w_max window and the displacements that keep
// the block inside the frame. An empty intersection degenerates to {(0,0)},
// which is always valid for an in-frame block.
SearchRect clamp_rect(const SearchRect& rect, const BlockRef& block, int frame_w, int frame_h,
                      int w_max);

// Row-major enumeration: y ascending outer, x ascending inner. This order
// fixes tie-breaking everywhere downstream.
std::vector<MotionVec> enumerate_rect(const SearchRect& rect);

// Minimum-cost candidate; ties go to the first minimum in candidate order.
// nsp equals the number of candidates evaluated.
MatchResult best_match(const Frame& cur, const Frame& ref, const BlockRef& block,
                       std::span<const MotionVec> candidates, Criterion kind);

}  // namespace mebench
