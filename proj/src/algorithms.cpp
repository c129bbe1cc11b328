#include "mebench/algorithms.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace mebench {

Algorithm parse_algorithm(const std::string& name) {
    if (name == "fs") return Algorithm::fs;
    if (name == "3ss" || name == "tss") return Algorithm::tss;
    if (name == "4ss" || name == "fss") return Algorithm::fss;
    if (name == "ds") return Algorithm::ds;
    if (name == "psa") return Algorithm::psa;
    if (name == "pvssa") return Algorithm::pvssa;
    throw std::invalid_argument("unknown algorithm: " + name);
}

std::string to_string(Algorithm a) {
    switch (a) {
        case Algorithm::fs: return "fs";
        case Algorithm::tss: return "3ss";
        case Algorithm::fss: return "4ss";
        case Algorithm::ds: return "ds";
        case Algorithm::psa: return "psa";
        case Algorithm::pvssa: return "pvssa";
    }
    return "?";
}

void EstimatorConfig::validate() const {
    if (w_max < 0) throw std::invalid_argument("w_max must be >= 0");
    if (block_n < 2) throw std::invalid_argument("block_n must be >= 2");
    if (d < 0) throw std::invalid_argument("d must be >= 0");
}

std::vector<MotionVec> fs_candidates(const BlockRef& block, const EstimatorConfig& cfg,
                                     int frame_w, int frame_h) {
    const SearchRect full{-cfg.w_max, cfg.w_max, -cfg.w_max, cfg.w_max};
    return enumerate_rect(clamp_rect(full, block, frame_w, frame_h, cfg.w_max));
}

std::vector<MotionVec> pvssa_candidates(const BlockRef& block, const PredictorSet& preds,
                                        const EstimatorConfig& cfg, int frame_w, int frame_h) {
    const SearchRect rect = pvssa_rect(preds, cfg.d);
    return enumerate_rect(clamp_rect(rect, block, frame_w, frame_h, cfg.w_max));
}

PsaCandidates psa_candidates(const BlockRef& block, const PredictorSet& preds,
                             const EstimatorConfig& cfg, int frame_w, int frame_h) {
    const SearchRect window = clamp_rect({-cfg.w_max, cfg.w_max, -cfg.w_max, cfg.w_max}, block,
                                         frame_w, frame_h, cfg.w_max);
    constexpr int r = 2;
    PsaCandidates out;
    for (int i = 0; i < 4; ++i)
        for (int dy = -r; dy <= r; ++dy)
            for (int dx = -r; dx <= r; ++dx)
                if (window.contains({preds.mv[i].x + dx, preds.mv[i].y + dy}))
                    ++out.count_with_overlaps;
    for (MotionVec p : psa_regions(preds, r))
        if (window.contains(p)) out.points.push_back(p);
    if (out.points.empty()) {
        out.points.push_back({0, 0});
        out.count_with_overlaps = 1;
    }
    return out;
}

namespace {

// Shared machinery for the iterative schedules: clamps to the FS window,
// caches evaluated displacements so nsp counts distinct points, and keeps
// the first minimum in evaluation order.
class BlockSearch {
public:
    BlockSearch(const Frame& cur, const Frame& ref, const BlockRef& block,
                const EstimatorConfig& cfg, std::vector<MotionVec>* visited)
        : cur_(cur),
          ref_(ref),
          block_(block),
          delta_(criterion_delta(cfg.criterion)),
          window_(clamp_rect({-cfg.w_max, cfg.w_max, -cfg.w_max, cfg.w_max}, block,
                             cur.width, cur.height, cfg.w_max)),
          side_(2 * cfg.w_max + 1),
          seen_(static_cast<std::size_t>(side_) * side_, false),
          w_max_(cfg.w_max),
          visited_(visited) {}

    void try_point(MotionVec p) {
        if (!window_.contains(p)) return;
        const std::size_t idx =
            static_cast<std::size_t>(p.y + w_max_) * side_ + (p.x + w_max_);
        if (seen_[idx]) return;
        seen_[idx] = true;
        const std::int64_t sum = block_error_sum(cur_, ref_, block_, p, delta_);
        ++nsp_;
        if (visited_ != nullptr) visited_->push_back(p);
        if (nsp_ == 1 || sum < best_sum_) {
            best_sum_ = sum;
            best_mv_ = p;
        }
    }

    MotionVec best_mv() const { return best_mv_; }

    MatchResult result(Criterion kind) const {
        MatchResult r;
        r.mv = best_mv_;
        r.cost.num = best_sum_;
        r.cost.den = criterion_beta(kind) ? block_.n * block_.n : 1;
        r.nsp = nsp_;
        return r;
    }

private:
    const Frame& cur_;
    const Frame& ref_;
    BlockRef block_;
    int delta_;
    SearchRect window_;
    int side_;
    std::vector<bool> seen_;
    int w_max_;
    std::vector<MotionVec>* visited_;
    MotionVec best_mv_{};
    std::int64_t best_sum_ = 0;
    std::int64_t nsp_ = 0;
};

constexpr int kRoundCap = 64;

// 3x3 square at the given radius, row-major.
void try_square(BlockSearch& s, MotionVec center, int radius) {
    for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx)
            s.try_point({center.x + dx * radius, center.y + dy * radius});
}

MatchResult run_tss(BlockSearch& s, const EstimatorConfig& cfg) {
    s.try_point({0, 0});
    int step = 1;
    while (step * 2 <= cfg.w_max) step *= 2;
    for (; step >= 1 && cfg.w_max >= 1; step /= 2) try_square(s, s.best_mv(), step);
    return s.result(cfg.criterion);
}

MatchResult run_fss(BlockSearch& s, const EstimatorConfig& cfg) {
    MotionVec center{0, 0};
    try_square(s, center, 2);
    int rounds = 1;
    while (s.best_mv() != center) {
        if (++rounds > kRoundCap)
            throw std::runtime_error("step search exceeded round cap");
        center = s.best_mv();
        try_square(s, center, 2);
    }
    try_square(s, center, 1);
    return s.result(cfg.criterion);
}

constexpr MotionVec kLargeDiamond[] = {{0, -2}, {-1, -1}, {1, -1}, {-2, 0}, {0, 0},
                                       {2, 0},  {-1, 1},  {1, 1},  {0, 2}};
constexpr MotionVec kSmallDiamond[] = {{0, -1}, {-1, 0}, {0, 0}, {1, 0}, {0, 1}};

MatchResult run_ds(BlockSearch& s, const EstimatorConfig& cfg) {
    MotionVec center{0, 0};
    for (int rounds = 1;; ++rounds) {
        if (rounds > kRoundCap) throw std::runtime_error("step search exceeded round cap");
        for (MotionVec off : kLargeDiamond) s.try_point({center.x + off.x, center.y + off.y});
        if (s.best_mv() == center) break;
        center = s.best_mv();
    }
    for (MotionVec off : kSmallDiamond) s.try_point({center.x + off.x, center.y + off.y});
    return s.result(cfg.criterion);
}

}  // namespace

MatchResult step_search(const Frame& cur, const Frame& ref, const BlockRef& block,
                        const EstimatorConfig& cfg, std::vector<MotionVec>* visited) {
    BlockSearch s(cur, ref, block, cfg, visited);
    switch (cfg.algo) {
        case Algorithm::tss: return run_tss(s, cfg);
        case Algorithm::fss: {
            // Degenerate windows cannot host the radius-2 pattern; the centre
            // is still always evaluated.
            s.try_point({0, 0});
            if (cfg.w_max < 1) return s.result(cfg.criterion);
            return run_fss(s, cfg);
        }
        case Algorithm::ds: {
            s.try_point({0, 0});
            if (cfg.w_max < 1) return s.result(cfg.criterion);
            return run_ds(s, cfg);
        }
        default: throw std::invalid_argument("step_search: not an iterative algorithm");
    }
}

namespace {

MatchResult match_block(const Frame& cur, const Frame& ref, const BlockRef& block,
                        const MotionField& field, const MotionField* prev_field, int row,
                        int col, const EstimatorConfig& cfg) {
    switch (cfg.algo) {
        case Algorithm::fs: {
            const auto cands = fs_candidates(block, cfg, cur.width, cur.height);
            return best_match(cur, ref, block, cands, cfg.criterion);
        }
        case Algorithm::tss:
        case Algorithm::fss:
        case Algorithm::ds: return step_search(cur, ref, block, cfg);
        case Algorithm::psa: {
            const PredictorSet preds = gather_predictors(field, prev_field, row, col);
            const PsaCandidates pc = psa_candidates(block, preds, cfg, cur.width, cur.height);
            MatchResult r = best_match(cur, ref, block, pc.points, cfg.criterion);
            if (cfg.psa_count_overlaps) r.nsp = pc.count_with_overlaps;
            return r;
        }
        case Algorithm::pvssa: {
            const PredictorSet preds = gather_predictors(field, prev_field, row, col);
            const auto cands = pvssa_candidates(block, preds, cfg, cur.width, cur.height);
            return best_match(cur, ref, block, cands, cfg.criterion);
        }
    }
    throw std::logic_error("match_block: unhandled algorithm");
}

}  // namespace

EstimatedFrame estimate_frame(const Frame& cur, const Frame& ref, const MotionField* prev_field,
                              const EstimatorConfig& cfg) {
    cfg.validate();
    if (!cur.same_dimensions(ref))
        throw std::invalid_argument("current and reference frame dimensions differ");
    if (cur.width % cfg.block_n != 0 || cur.height % cfg.block_n != 0)
        throw std::invalid_argument("frame dimensions not divisible by the block size");

    const int cols = cur.width / cfg.block_n;
    const int rows = cur.height / cfg.block_n;
    if (prev_field != nullptr && (prev_field->cols != cols || prev_field->rows != rows))
        throw std::invalid_argument("previous field grid does not match");

    EstimatedFrame out;
    out.field = MotionField(cols, rows, cur.index);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            const BlockRef block{c * cfg.block_n, r * cfg.block_n, cfg.block_n};
            const MatchResult res =
                match_block(cur, ref, block, out.field, prev_field, r, c, cfg);
            out.field.push(res);
            out.stats.total_nsp += res.nsp;
        }
    }
    out.stats.frame_index = cur.index;
    out.stats.blocks = rows * cols;
    out.stats.mean_nsp = static_cast<double>(out.stats.total_nsp) / out.stats.blocks;
    return out;
}

std::vector<EstimatedFrame> estimate_sequence(const Sequence& seq, const EstimatorConfig& cfg) {
    if (seq.frame_count() < 2)
        throw std::invalid_argument("estimation needs at least two frames");
    std::vector<EstimatedFrame> out;
    out.reserve(seq.frame_count() - 1);
    const MotionField* prev = nullptr;
    for (std::size_t f = 1; f < seq.frame_count(); ++f) {
        out.push_back(estimate_frame(seq.frames[f], seq.frames[f - 1], prev, cfg));
        prev = &out.back().field;
    }
    return out;
}

}  // namespace mebench
