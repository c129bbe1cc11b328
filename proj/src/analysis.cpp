#include "mebench/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mebench {

Frame reconstruct(const Frame& ref, const MotionField& field, int block_n) {
    if (!field.complete()) throw std::invalid_argument("reconstruct: incomplete motion field");
    if (field.cols * block_n != ref.width || field.rows * block_n != ref.height)
        throw std::invalid_argument("reconstruct: field grid does not match frame");

    Frame out(ref.width, ref.height, field.frame_index);
    for (int r = 0; r < field.rows; ++r) {
        for (int c = 0; c < field.cols; ++c) {
            const MotionVec mv = field.at(r, c).mv;
            const int x0 = c * block_n;
            const int y0 = r * block_n;
            const int sx = x0 + mv.x;
            const int sy = y0 + mv.y;
            if (sx < 0 || sy < 0 || sx + block_n > ref.width || sy + block_n > ref.height)
                throw std::logic_error("reconstruct: stored vector leaves the frame");
            for (int n = 0; n < block_n; ++n)
                std::copy_n(ref.row(sy + n) + sx, block_n, out.luma.begin() +
                            static_cast<std::size_t>(y0 + n) * ref.width + x0);
        }
    }
    return out;
}

FrameQuality frame_quality(const Frame& a, const Frame& b) {
    if (!a.same_dimensions(b))
        throw std::invalid_argument("frame_quality: dimension mismatch");
    std::int64_t sse = 0;
    for (std::size_t i = 0; i < a.luma.size(); ++i) {
        const int diff = int(a.luma[i]) - int(b.luma[i]);
        sse += static_cast<std::int64_t>(diff) * diff;
    }
    FrameQuality q;
    q.frame_index = a.index;
    q.mse = static_cast<double>(sse) / (static_cast<double>(a.width) * a.height);
    if (q.mse > 0.0) q.psnr_db = 10.0 * std::log10(255.0 * 255.0 / q.mse);
    return q;
}

ContainmentRecord containment_record(const PredictorSet& preds, MotionVec mv_c) {
    int min_x = preds.mv[0].x, max_x = preds.mv[0].x;
    int min_y = preds.mv[0].y, max_y = preds.mv[0].y;
    for (const MotionVec& mv : preds.mv) {
        min_x = std::min(min_x, mv.x);
        max_x = std::max(max_x, mv.x);
        min_y = std::min(min_y, mv.y);
        max_y = std::max(max_y, mv.y);
    }
    return ContainmentRecord{min_x - mv_c.x, mv_c.x - max_x, min_y - mv_c.y, mv_c.y - max_y};
}

bool p_of_d(const ContainmentRecord& r, int d) {
    if (d < 0) throw std::invalid_argument("p_of_d: d must be >= 0");
    return r.diff_min_x <= d && r.diff_max_x <= d && r.diff_min_y <= d && r.diff_max_y <= d;
}

namespace {

// Smallest d at which the block's vector is contained; never negative.
std::vector<int> containment_thresholds(std::span<const MotionField> fields) {
    std::vector<int> thresholds;
    const MotionField* prev = nullptr;
    for (const MotionField& field : fields) {
        if (!field.complete()) throw std::invalid_argument("pr_of_d: incomplete motion field");
        for (int r = 0; r < field.rows; ++r) {
            for (int c = 0; c < field.cols; ++c) {
                const PredictorSet preds = gather_predictors(field, prev, r, c);
                const ContainmentRecord rec = containment_record(preds, field.at(r, c).mv);
                const int worst = std::max({rec.diff_min_x, rec.diff_max_x, rec.diff_min_y,
                                            rec.diff_max_y, 0});
                thresholds.push_back(worst);
            }
        }
        prev = &field;
    }
    return thresholds;
}

}  // namespace

double pr_of_d(std::span<const MotionField> fields, int d) {
    if (d < 0) throw std::invalid_argument("pr_of_d: d must be >= 0");
    const std::vector<int> thresholds = containment_thresholds(fields);
    if (thresholds.empty()) throw std::invalid_argument("pr_of_d: no blocks");
    std::int64_t contained = 0;
    for (int t : thresholds)
        if (t <= d) ++contained;
    return static_cast<double>(contained) / static_cast<double>(thresholds.size());
}

std::vector<std::pair<int, double>> pr_of_d_table(std::span<const MotionField> fields,
                                                  int d_max) {
    if (d_max < 1) throw std::invalid_argument("pr_of_d_table: d_max must be >= 1");
    const std::vector<int> thresholds = containment_thresholds(fields);
    if (thresholds.empty()) throw std::invalid_argument("pr_of_d_table: no blocks");
    std::vector<std::pair<int, double>> rows;
    rows.reserve(static_cast<std::size_t>(d_max));
    for (int d = 1; d <= d_max; ++d) {
        std::int64_t contained = 0;
        for (int t : thresholds)
            if (t <= d) ++contained;
        rows.emplace_back(d, static_cast<double>(contained) /
                                 static_cast<double>(thresholds.size()));
    }
    return rows;
}

ChungTable chung_probabilities(const std::vector<std::vector<MotionField>>& sequences,
                               int d_max) {
    if (d_max < 0) throw std::invalid_argument("chung_probabilities: d_max must be >= 0");
    if (sequences.empty()) throw std::invalid_argument("chung_probabilities: no sequences");

    ChungTable table;
    table.average.assign(static_cast<std::size_t>(d_max) + 1, 0.0);
    table.accumulated.assign(static_cast<std::size_t>(d_max) + 1, 0.0);

    for (const auto& fields : sequences) {
        if (fields.empty())
            throw std::invalid_argument("chung_probabilities: sequence has no estimated frames");
        std::vector<double> seq_avg(static_cast<std::size_t>(d_max) + 1, 0.0);
        std::vector<double> seq_acc(static_cast<std::size_t>(d_max) + 1, 0.0);
        const MotionField* prev = nullptr;
        for (const MotionField& field : fields) {
            std::vector<std::int64_t> counts(static_cast<std::size_t>(d_max) + 1, 0);
            const std::int64_t blocks = static_cast<std::int64_t>(field.block_count());
            for (int r = 0; r < field.rows; ++r) {
                for (int c = 0; c < field.cols; ++c) {
                    const PredictorSet preds = gather_predictors(field, prev, r, c);
                    const int dist = displacement_d(preds, field.at(r, c).mv);
                    if (dist <= d_max) ++counts[static_cast<std::size_t>(dist)];
                }
            }
            std::int64_t cum = 0;
            for (int d = 0; d <= d_max; ++d) {
                cum += counts[static_cast<std::size_t>(d)];
                seq_avg[static_cast<std::size_t>(d)] +=
                    static_cast<double>(counts[static_cast<std::size_t>(d)]) / blocks;
                seq_acc[static_cast<std::size_t>(d)] += static_cast<double>(cum) / blocks;
            }
            prev = &field;
        }
        const double n_frames = static_cast<double>(fields.size());
        for (int d = 0; d <= d_max; ++d) {
            table.average[static_cast<std::size_t>(d)] +=
                seq_avg[static_cast<std::size_t>(d)] / n_frames;
            table.accumulated[static_cast<std::size_t>(d)] +=
                seq_acc[static_cast<std::size_t>(d)] / n_frames;
        }
    }
    const double n_seq = static_cast<double>(sequences.size());
    for (int d = 0; d <= d_max; ++d) {
        table.average[static_cast<std::size_t>(d)] /= n_seq;
        table.accumulated[static_cast<std::size_t>(d)] /= n_seq;
    }
    return table;
}

double speedup(double nsp_fs, double nsp_alg) {
    if (nsp_fs <= 0.0) throw std::invalid_argument("speedup: FS search-point count must be > 0");
    return (nsp_fs - nsp_alg) / nsp_fs * 100.0;
}

SequenceReport analyze_sequence(const Sequence& seq, const EstimatorConfig& cfg) {
    const std::vector<EstimatedFrame> estimated = estimate_sequence(seq, cfg);

    SequenceReport report;
    report.sequence = seq.name;
    report.config = cfg;

    double mse_sum = 0.0;
    double psnr_sum = 0.0;
    int psnr_count = 0;
    std::int64_t nsp_sum = 0;
    std::int64_t block_sum = 0;
    for (const EstimatedFrame& ef : estimated) {
        const int f = ef.field.frame_index;
        const Frame recon = reconstruct(seq.frames[static_cast<std::size_t>(f) - 1], ef.field,
                                        cfg.block_n);
        FrameQuality q = frame_quality(recon, seq.frames[static_cast<std::size_t>(f)]);
        q.frame_index = f;
        mse_sum += q.mse;
        if (q.psnr_db) {
            psnr_sum += *q.psnr_db;
            ++psnr_count;
        } else {
            ++report.psnr_excluded;
        }
        report.frames.push_back(q);
        report.frame_stats.push_back(ef.stats);
        nsp_sum += ef.stats.total_nsp;
        block_sum += ef.stats.blocks;
    }
    report.mean_mse = mse_sum / static_cast<double>(report.frames.size());
    if (psnr_count > 0) report.mean_psnr_db = psnr_sum / psnr_count;
    report.mean_nsp_per_block = static_cast<double>(nsp_sum) / static_cast<double>(block_sum);
    return report;
}

}  // namespace mebench
