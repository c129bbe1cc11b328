#pragma once

#include <span>
#include <string>
#include <vector>

#include "mebench/algorithms.hpp"
#include "mebench/analysis.hpp"

namespace mebench {

inline constexpr const char* kToolName = "mebench";
inline constexpr const char* kToolVersion = "0.1.0";

// Fixed-decimal formatting used by every CSV column: PSNR and MSE 3 dp,
// probabilities and SUR 2 dp. Lossless PSNR serializes as the literal "inf".
std::string format_fixed(double v, int decimals);
std::string format_cost(const Cost& c);   // integer when den==1, else 6 dp
std::string csv_quote(const std::string& field);

// frame,block_row,block_col,mvx,mvy,cost,nsp -- one row per block, frames
// numbered from 1.
std::string mv_csv(std::span<const EstimatedFrame> frames);

// frame,blocks,total_nsp,mean_nsp
std::string frame_stats_csv(std::span<const EstimatedFrame> frames);

// algo,d,mean_psnr_db,mean_mse,mean_nsp,sur_pct -- one row per bench job.
std::string comparison_csv(std::span<const SequenceReport> reports);

// algo,frame,mse,psnr_db
std::string quality_csv(std::span<const SequenceReport> reports);

// frame,algo,psnr_diff_db -- per-frame PSNR(FS) - PSNR(algo) series.
std::string psnr_diff_csv(const SequenceReport& fs, std::span<const SequenceReport> others);

// d,pr_pct
std::string prd_csv(std::span<const std::pair<int, double>> rows);

// d,avg_prob_pct,accumulated_pct
std::string chung_csv(const ChungTable& table);

// Single JSON object: {sequence, algo, config:{w,n,d,criterion}, frames:[...],
// summary:{...}}.
std::string report_json(const SequenceReport& report);

struct RunManifest {
    std::string command;
    std::string input_descriptor;
    std::string timestamp_utc;
    std::vector<EstimatorConfig> jobs;
    std::uint64_t seed = 0;
    std::vector<std::string> outputs;
};

std::string manifest_json(const RunManifest& manifest);

std::string current_utc_timestamp();

}  // namespace mebench
