#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "mebench/algorithms.hpp"
#include "mebench/frame.hpp"
#include "mebench/predictors.hpp"

namespace mebench {

struct FrameQuality {
    int frame_index = 0;
    double mse = 0.0;
    std::optional<double> psnr_db;  // empty when mse == 0 (lossless)
};

// Pure motion compensation: each output block is copied from ref at its
// displaced position. No residual.
Frame reconstruct(const Frame& ref, const MotionField& field, int block_n);

// Per-pixel MSE and 10*log10(255^2/mse). Lossless frames carry no PSNR.
FrameQuality frame_quality(const Frame& a, const Frame& b);

// Signed distances from mv_c to the predictor bounding box, one per side.
// All four <= d exactly when mv_c lies inside the d-expanded rectangle.
struct ContainmentRecord {
    int diff_min_x = 0;
    int diff_max_x = 0;
    int diff_min_y = 0;
    int diff_max_y = 0;
};

ContainmentRecord containment_record(const PredictorSet& preds, MotionVec mv_c);
bool p_of_d(const ContainmentRecord& record, int d);

// Empirical probability that a block's motion vector falls inside its
// d-expanded predictor rectangle, over all blocks of all given fields.
// Fields must be consecutive estimated frames in order; the first has no
// temporal predictor source.
double pr_of_d(std::span<const MotionField> fields, int d);

// Rows d = 1..d_max of pr_of_d, one pass over the fields.
std::vector<std::pair<int, double>> pr_of_d_table(std::span<const MotionField> fields, int d_max);

// Distribution of the Chebyshev distance D between each block's vector and
// its nearest spatial predictor, averaged per frame, then per sequence, then
// across sequences; accumulated is the running sum over d.
struct ChungTable {
    std::vector<double> average;      // index d = 0..d_max
    std::vector<double> accumulated;  // index d = 0..d_max
};
ChungTable chung_probabilities(const std::vector<std::vector<MotionField>>& sequences,
                               int d_max);

// Relative search-point savings versus FS, in percent.
double speedup(double nsp_fs, double nsp_alg);

struct SequenceReport {
    std::string sequence;
    EstimatorConfig config;
    std::vector<FrameQuality> frames;      // estimated frames only
    std::vector<FrameStats> frame_stats;
    std::optional<double> mean_psnr_db;    // empty when every frame was lossless
    int psnr_excluded = 0;                 // lossless frames left out of the mean
    double mean_mse = 0.0;
    double mean_nsp_per_block = 0.0;
    std::optional<double> sur_pct;         // filled when an FS baseline is known
    std::vector<std::pair<int, double>> prd;  // optional Pr(d) rows
};

// Estimate, reconstruct and score every frame of a sequence under one
// configuration. SUR is left empty; bench runners fill it against FS.
SequenceReport analyze_sequence(const Sequence& seq, const EstimatorConfig& cfg);

}  // namespace mebench
