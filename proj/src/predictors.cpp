#include "mebench/predictors.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace mebench {

PredictorSet gather_predictors(const MotionField& current, const MotionField* previous,
                               int block_row, int block_col) {
    if (block_row < 0 || block_row >= current.rows || block_col < 0 ||
        block_col >= current.cols)
        throw std::logic_error("gather_predictors: block outside field grid");
    const std::size_t preceding =
        static_cast<std::size_t>(block_row) * current.cols + block_col;
    if (current.entries.size() < preceding)
        throw std::logic_error("gather_predictors: raster predecessors missing");

    PredictorSet preds;
    auto take = [&](int slot, int r, int c) {
        if (r >= 0 && c >= 0 && c < current.cols) {
            preds.mv[slot] = current.at(r, c).mv;
            preds.available[slot] = true;
        }
    };
    take(kPredLeft, block_row, block_col - 1);
    take(kPredUpperLeft, block_row - 1, block_col - 1);
    take(kPredUpper, block_row - 1, block_col);
    take(kPredUpperRight, block_row - 1, block_col + 1);
    if (previous != nullptr) {
        if (!previous->complete())
            throw std::logic_error("gather_predictors: previous field incomplete");
        preds.mv[kPredTemporal] = previous->at(block_row, block_col).mv;
        preds.available[kPredTemporal] = true;
    }
    return preds;
}

SearchRect pvssa_rect(const PredictorSet& preds, int d) {
    if (d < 0) throw std::invalid_argument("pvssa_rect: d must be >= 0");
    SearchRect r{preds.mv[0].x, preds.mv[0].x, preds.mv[0].y, preds.mv[0].y};
    for (const MotionVec& mv : preds.mv) {
        r.x_min = std::min(r.x_min, mv.x);
        r.x_max = std::max(r.x_max, mv.x);
        r.y_min = std::min(r.y_min, mv.y);
        r.y_max = std::max(r.y_max, mv.y);
    }
    r.x_min -= d;
    r.x_max += d;
    r.y_min -= d;
    r.y_max += d;
    return r;
}

std::vector<MotionVec> psa_regions(const PredictorSet& preds, int region_half_width) {
    if (region_half_width < 0)
        throw std::invalid_argument("psa_regions: negative region half-width");
    const int r = region_half_width;
    std::vector<MotionVec> points;
    points.reserve(4u * (2 * r + 1) * (2 * r + 1));
    for (int i = 0; i < 4; ++i)
        for (int dy = -r; dy <= r; ++dy)
            for (int dx = -r; dx <= r; ++dx)
                points.push_back({preds.mv[i].x + dx, preds.mv[i].y + dy});
    std::sort(points.begin(), points.end(),
              [](MotionVec a, MotionVec b) { return std::tie(a.y, a.x) < std::tie(b.y, b.x); });
    points.erase(std::unique(points.begin(), points.end()), points.end());
    return points;
}

int displacement_d(const PredictorSet& preds, MotionVec mv_c) {
    int best = 0;
    for (int i = 0; i < 4; ++i) {
        const int dx = std::abs(mv_c.x - preds.mv[i].x);
        const int dy = std::abs(mv_c.y - preds.mv[i].y);
        const int cheb = std::max(dx, dy);
        if (i == 0 || cheb < best) best = cheb;
    }
    return best;
}

}  // namespace mebench
