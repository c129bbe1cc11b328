#include "mebench/matching.hpp"

#include <algorithm>
#include <stdexcept>

namespace mebench {

Criterion parse_criterion(const std::string& name) {
    if (name == "sae") return Criterion::sae;
    if (name == "mae") return Criterion::mae;
    if (name == "sse") return Criterion::sse;
    if (name == "mse") return Criterion::mse;
    throw std::invalid_argument("unknown criterion: " + name);
}

std::string to_string(Criterion c) {
    switch (c) {
        case Criterion::sae: return "sae";
        case Criterion::mae: return "mae";
        case Criterion::sse: return "sse";
        case Criterion::mse: return "mse";
    }
    return "?";
}

namespace {

void check_block(const Frame& cur, const Frame& ref, const BlockRef& block, MotionVec disp) {
    if (block.n <= 0 || block.x0 < 0 || block.y0 < 0 || block.x0 + block.n > cur.width ||
        block.y0 + block.n > cur.height)
        throw std::logic_error("block outside current frame");
    const int rx = block.x0 + disp.x;
    const int ry = block.y0 + disp.y;
    if (rx < 0 || ry < 0 || rx + block.n > ref.width || ry + block.n > ref.height)
        throw std::logic_error("displaced block outside reference frame");
}

}  // namespace

std::int64_t block_error_sum(const Frame& cur, const Frame& ref, const BlockRef& block,
                             MotionVec disp, int delta) {
    check_block(cur, ref, block, disp);
    std::int64_t sum = 0;
    for (int n = 0; n < block.n; ++n) {
        const std::uint8_t* c = cur.row(block.y0 + n) + block.x0;
        const std::uint8_t* r = ref.row(block.y0 + disp.y + n) + block.x0 + disp.x;
        if (delta == 1) {
            for (int m = 0; m < block.n; ++m) {
                const int diff = int(c[m]) - int(r[m]);
                sum += diff < 0 ? -diff : diff;
            }
        } else {
            for (int m = 0; m < block.n; ++m) {
                const int diff = int(c[m]) - int(r[m]);
                sum += static_cast<std::int64_t>(diff) * diff;
            }
        }
    }
    return sum;
}

Cost block_cost(const Frame& cur, const Frame& ref, const BlockRef& block, MotionVec disp,
                Criterion kind) {
    Cost cost;
    cost.num = block_error_sum(cur, ref, block, disp, criterion_delta(kind));
    cost.den = criterion_beta(kind) ? block.n * block.n : 1;
    return cost;
}

SearchRect clamp_rect(const SearchRect& rect, const BlockRef& block, int frame_w, int frame_h,
                      int w_max) {
    SearchRect r;
    r.x_min = std::max({rect.x_min, -w_max, -block.x0});
    r.x_max = std::min({rect.x_max, w_max, frame_w - block.n - block.x0});
    r.y_min = std::max({rect.y_min, -w_max, -block.y0});
    r.y_max = std::min({rect.y_max, w_max, frame_h - block.n - block.y0});
    if (r.x_min > r.x_max || r.y_min > r.y_max) return SearchRect{0, 0, 0, 0};
    return r;
}

std::vector<MotionVec> enumerate_rect(const SearchRect& rect) {
    std::vector<MotionVec> points;
    points.reserve(static_cast<std::size_t>(rect.point_count()));
    for (int y = rect.y_min; y <= rect.y_max; ++y)
        for (int x = rect.x_min; x <= rect.x_max; ++x) points.push_back({x, y});
    return points;
}

MatchResult best_match(const Frame& cur, const Frame& ref, const BlockRef& block,
                       std::span<const MotionVec> candidates, Criterion kind) {
    if (candidates.empty()) throw std::logic_error("best_match: empty candidate set");
    const int delta = criterion_delta(kind);
    MatchResult best;
    best.mv = candidates[0];
    std::int64_t best_sum = block_error_sum(cur, ref, block, candidates[0], delta);
    for (std::size_t i = 1; i < candidates.size(); ++i) {
        const std::int64_t sum = block_error_sum(cur, ref, block, candidates[i], delta);
        if (sum < best_sum) {
            best_sum = sum;
            best.mv = candidates[i];
        }
    }
    best.cost.num = best_sum;
    best.cost.den = criterion_beta(kind) ? block.n * block.n : 1;
    best.nsp = static_cast<std::int64_t>(candidates.size());
    return best;
}

}  // namespace mebench
