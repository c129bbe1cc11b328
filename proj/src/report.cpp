#include "mebench/report.hpp"

#include <chrono>
#include <cinttypes>
#include <cstdio>
#include <ctime>
#include <sstream>

#include <json.hpp>

namespace mebench {

std::string format_fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    return buf;
}

std::string format_cost(const Cost& c) {
    if (c.den == 1) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%" PRId64, c.num);
        return buf;
    }
    return format_fixed(c.value(), 6);
}

std::string csv_quote(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
    std::string quoted = "\"";
    for (char ch : field) {
        if (ch == '"') quoted += '"';
        quoted += ch;
    }
    quoted += '"';
    return quoted;
}

namespace {

std::string psnr_field(const std::optional<double>& psnr, int decimals) {
    return psnr ? format_fixed(*psnr, decimals) : std::string("inf");
}

}  // namespace

std::string mv_csv(std::span<const EstimatedFrame> frames) {
    std::ostringstream out;
    out << "frame,block_row,block_col,mvx,mvy,cost,nsp\n";
    for (const EstimatedFrame& ef : frames) {
        for (int r = 0; r < ef.field.rows; ++r) {
            for (int c = 0; c < ef.field.cols; ++c) {
                const MatchResult& m = ef.field.at(r, c);
                out << ef.field.frame_index << ',' << r << ',' << c << ',' << m.mv.x << ','
                    << m.mv.y << ',' << format_cost(m.cost) << ',' << m.nsp << '\n';
            }
        }
    }
    return out.str();
}

std::string frame_stats_csv(std::span<const EstimatedFrame> frames) {
    std::ostringstream out;
    out << "frame,blocks,total_nsp,mean_nsp\n";
    for (const EstimatedFrame& ef : frames)
        out << ef.stats.frame_index << ',' << ef.stats.blocks << ',' << ef.stats.total_nsp
            << ',' << format_fixed(ef.stats.mean_nsp, 2) << '\n';
    return out.str();
}

std::string comparison_csv(std::span<const SequenceReport> reports) {
    std::ostringstream out;
    out << "algo,d,mean_psnr_db,mean_mse,mean_nsp,sur_pct\n";
    for (const SequenceReport& r : reports) {
        out << to_string(r.config.algo) << ',' << r.config.d << ','
            << psnr_field(r.mean_psnr_db, 3) << ',' << format_fixed(r.mean_mse, 3) << ','
            << format_fixed(r.mean_nsp_per_block, 2) << ','
            << (r.sur_pct ? format_fixed(*r.sur_pct, 2) : std::string()) << '\n';
    }
    return out.str();
}

std::string quality_csv(std::span<const SequenceReport> reports) {
    std::ostringstream out;
    out << "algo,frame,mse,psnr_db\n";
    for (const SequenceReport& r : reports)
        for (const FrameQuality& q : r.frames)
            out << to_string(r.config.algo) << ',' << q.frame_index << ','
                << format_fixed(q.mse, 3) << ',' << psnr_field(q.psnr_db, 3) << '\n';
    return out.str();
}

std::string psnr_diff_csv(const SequenceReport& fs, std::span<const SequenceReport> others) {
    std::ostringstream out;
    out << "frame,algo,psnr_diff_db\n";
    for (const SequenceReport& r : others) {
        for (std::size_t i = 0; i < r.frames.size() && i < fs.frames.size(); ++i) {
            const auto& a = fs.frames[i].psnr_db;
            const auto& b = r.frames[i].psnr_db;
            out << r.frames[i].frame_index << ',' << to_string(r.config.algo) << ',';
            if (a && b)
                out << format_fixed(*a - *b, 3);
            else if (!a && !b)
                out << format_fixed(0.0, 3);  // both lossless
            else
                out << "inf";
            out << '\n';
        }
    }
    return out.str();
}

std::string prd_csv(std::span<const std::pair<int, double>> rows) {
    std::ostringstream out;
    out << "d,pr_pct\n";
    for (const auto& [d, p] : rows) out << d << ',' << format_fixed(p * 100.0, 2) << '\n';
    return out.str();
}

std::string chung_csv(const ChungTable& table) {
    std::ostringstream out;
    out << "d,avg_prob_pct,accumulated_pct\n";
    for (std::size_t d = 0; d < table.average.size(); ++d)
        out << d << ',' << format_fixed(table.average[d] * 100.0, 2) << ','
            << format_fixed(table.accumulated[d] * 100.0, 2) << '\n';
    return out.str();
}

namespace {

nlohmann::ordered_json config_json(const EstimatorConfig& cfg) {
    return nlohmann::ordered_json{{"w", cfg.w_max},
                                  {"n", cfg.block_n},
                                  {"d", cfg.d},
                                  {"criterion", to_string(cfg.criterion)}};
}

}  // namespace

std::string report_json(const SequenceReport& report) {
    nlohmann::ordered_json j;
    j["sequence"] = report.sequence;
    j["algo"] = to_string(report.config.algo);
    j["config"] = config_json(report.config);
    auto& frames = j["frames"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < report.frames.size(); ++i) {
        const FrameQuality& q = report.frames[i];
        nlohmann::ordered_json f{{"index", q.frame_index}, {"mse", q.mse}};
        if (q.psnr_db)
            f["psnr_db"] = *q.psnr_db;
        else
            f["psnr_db"] = "inf";
        f["nsp_total"] = report.frame_stats[i].total_nsp;
        frames.push_back(std::move(f));
    }
    nlohmann::ordered_json summary;
    if (report.mean_psnr_db)
        summary["mean_psnr_db"] = *report.mean_psnr_db;
    else
        summary["mean_psnr_db"] = "inf";
    summary["mean_mse"] = report.mean_mse;
    summary["mean_nsp_per_block"] = report.mean_nsp_per_block;
    if (report.sur_pct)
        summary["sur_pct"] = *report.sur_pct;
    else
        summary["sur_pct"] = nullptr;
    if (report.psnr_excluded > 0) summary["psnr_frames_excluded"] = report.psnr_excluded;
    j["summary"] = std::move(summary);
    return j.dump(2) + "\n";
}

std::string manifest_json(const RunManifest& manifest) {
    nlohmann::ordered_json j;
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    j["command"] = manifest.command;
    j["created_utc"] = manifest.timestamp_utc;
    j["input"] = manifest.input_descriptor;
    j["seed"] = manifest.seed;
    auto& jobs = j["jobs"] = nlohmann::ordered_json::array();
    for (const EstimatorConfig& cfg : manifest.jobs) {
        nlohmann::ordered_json job = config_json(cfg);
        job["algo"] = to_string(cfg.algo);
        job["psa_count_overlaps"] = cfg.psa_count_overlaps;
        jobs.push_back(std::move(job));
    }
    j["outputs"] = manifest.outputs;
    return j.dump(2) + "\n";
}

std::string current_utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace mebench
