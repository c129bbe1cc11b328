#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mebench/frame.hpp"
#include "mebench/matching.hpp"
#include "mebench/predictors.hpp"

namespace mebench {

enum class Algorithm { fs, tss, fss, ds, psa, pvssa };

Algorithm parse_algorithm(const std::string& name);  // fs|3ss|4ss|ds|psa|pvssa
std::string to_string(Algorithm a);

struct EstimatorConfig {
    Algorithm algo = Algorithm::fs;
    int w_max = 15;
    int block_n = 16;
    int d = 3;
    Criterion criterion = Criterion::sae;
    bool psa_count_overlaps = false;

    void validate() const;  // throws std::invalid_argument
};

struct FrameStats {
    int frame_index = 0;
    int blocks = 0;
    std::int64_t total_nsp = 0;
    double mean_nsp = 0.0;
};

struct EstimatedFrame {
    MotionField field;
    FrameStats stats;
};

// Candidate generators. Every returned displacement keeps the block inside
// the frame and within the +/-w_max window, so each set is a subset of the
// FS set for the same block.
std::vector<MotionVec> fs_candidates(const BlockRef& block, const EstimatorConfig& cfg,
                                     int frame_w, int frame_h);
std::vector<MotionVec> pvssa_candidates(const BlockRef& block, const PredictorSet& preds,
                                        const EstimatorConfig& cfg, int frame_w, int frame_h);

struct PsaCandidates {
    std::vector<MotionVec> points;           // deduplicated, row-major by (y, x)
    std::int64_t count_with_overlaps = 0;    // multiset count across the four regions
};
PsaCandidates psa_candidates(const BlockRef& block, const PredictorSet& preds,
                             const EstimatorConfig& cfg, int frame_w, int frame_h);

// Iterative schedules (3SS, 4SS, DS). Already-evaluated points are cached per
// block, so nsp counts distinct evaluations. `visited`, when given, receives
// the evaluated displacements in evaluation order.
MatchResult step_search(const Frame& cur, const Frame& ref, const BlockRef& block,
                        const EstimatorConfig& cfg, std::vector<MotionVec>* visited = nullptr);

// Raster-order estimation of one frame against its reference. prev_field may
// be null for the first estimated frame.
EstimatedFrame estimate_frame(const Frame& cur, const Frame& ref, const MotionField* prev_field,
                              const EstimatorConfig& cfg);

// Frame f matched against frame f-1, for f = 1..count-1. Requires at least
// two frames.
std::vector<EstimatedFrame> estimate_sequence(const Sequence& seq, const EstimatorConfig& cfg);

}  // namespace mebench
