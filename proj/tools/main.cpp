#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "mebench/analysis.hpp"
#include "mebench/report.hpp"
#include "mebench/video_io.hpp"

namespace fs = std::filesystem;
using namespace mebench;

namespace {

// Argument problems detected after parsing still exit with the usage code.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoOpts {
    std::string input;
    std::string synth_spec;
    std::string name;
    int width = 0;
    int height = 0;
    int frames = 30;
    std::uint64_t seed = 0;
    std::string out_dir = ".";
};

struct EstimatorOpts {
    std::string algo = "fs";
    int w = 15;
    int block = 16;
    int d = 3;
    std::string criterion = "sae";
    bool psa_count_overlaps = false;
};

void add_io_flags(CLI::App* cmd, IoOpts& o, bool with_input = true) {
    if (with_input) {
        cmd->add_option("--input", o.input, "raw .yuv or .y4m input file");
        cmd->add_option("--synth", o.synth_spec,
                        "synthetic input, pattern[:mvx,mvy] with pattern one of "
                        "translate|random-texture-translate|static");
    }
    cmd->add_option("--width", o.width, "frame width (required for raw YUV input)");
    cmd->add_option("--height", o.height, "frame height (required for raw YUV input)");
    cmd->add_option("--frames", o.frames, "frame budget")->default_val(30);
    cmd->add_option("--seed", o.seed, "texture seed for synthetic input")->default_val(0);
    cmd->add_option("--name", o.name, "sequence label used in reports");
    cmd->add_option("--out", o.out_dir, "output directory")->default_val(".");
}

void add_estimator_flags(CLI::App* cmd, EstimatorOpts& o, bool with_algo = true,
                         bool with_d = true) {
    if (with_algo)
        cmd->add_option("--algo", o.algo, "fs|3ss|4ss|ds|psa|pvssa")->default_val("fs");
    cmd->add_option("--w", o.w, "maximum displacement W")->default_val(15);
    cmd->add_option("--block", o.block, "block size N")->default_val(16);
    if (with_d) cmd->add_option("--d", o.d, "search-area expansion d")->default_val(3);
    cmd->add_option("--criterion", o.criterion, "sae|mae|sse|mse")->default_val("sae");
    cmd->add_flag("--psa-count-overlaps", o.psa_count_overlaps,
                  "count overlapped region points once per region");
}

// Flag values are argument problems (exit 2); errors raised later against
// the actual data stay runtime errors (exit 1).
EstimatorConfig make_config(const EstimatorOpts& o) {
    try {
        EstimatorConfig cfg;
        cfg.algo = parse_algorithm(o.algo);
        cfg.w_max = o.w;
        cfg.block_n = o.block;
        cfg.d = o.d;
        cfg.criterion = parse_criterion(o.criterion);
        cfg.psa_count_overlaps = o.psa_count_overlaps;
        cfg.validate();
        return cfg;
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

SynthSpec parse_synth_spec(const std::string& text, const IoOpts& o) {
    try {
        SynthSpec spec;
        const auto colon = text.find(':');
        spec.pattern = parse_synth_pattern(text.substr(0, colon));
        if (colon != std::string::npos) {
            const std::string mv = text.substr(colon + 1);
            const auto comma = mv.find(',');
            if (comma == std::string::npos)
                throw std::invalid_argument("--synth expects pattern[:mvx,mvy]");
            spec.true_mv.x = std::stoi(mv.substr(0, comma));
            spec.true_mv.y = std::stoi(mv.substr(comma + 1));
        }
        spec.width = o.width > 0 ? o.width : 64;
        spec.height = o.height > 0 ? o.height : 64;
        spec.frame_count = o.frames;
        spec.seed = o.seed;
        return spec;
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

bool looks_like_y4m(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    char magic[9] = {};
    in.read(magic, 9);
    return in.gcount() == 9 && std::string_view(magic, 9) == "YUV4MPEG2";
}

Sequence resolve_input(const IoOpts& o, std::string& descriptor) {
    if (!o.synth_spec.empty()) {
        const SynthSpec spec = parse_synth_spec(o.synth_spec, o);
        Sequence seq = synth(spec);
        if (!o.name.empty()) seq.name = o.name;
        char buf[128];
        std::snprintf(buf, sizeof(buf), "synth %s %dx%dx%d seed=%llu", o.synth_spec.c_str(),
                      spec.width, spec.height, spec.frame_count,
                      static_cast<unsigned long long>(spec.seed));
        descriptor = buf;
        return seq;
    }
    if (o.input.empty()) throw UsageError("either --input or --synth is required");
    if (!fs::exists(o.input)) throw std::runtime_error("cannot open " + o.input);

    Sequence seq;
    if (looks_like_y4m(o.input)) {
        seq = load_y4m(o.input, o.frames);
    } else {
        if (o.width <= 0 || o.height <= 0)
            throw UsageError("raw YUV input needs --width and --height");
        bool truncated = false;
        seq = load_yuv420(o.input, o.width, o.height, o.frames, &truncated);
        if (truncated)
            std::cerr << "warning: " << o.input
                      << " ends with a partial frame; it was dropped\n";
    }
    if (!o.name.empty()) seq.name = o.name;
    descriptor = o.input;
    return seq;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
    if (!out) throw std::runtime_error("write error on " + path.string());
}

std::string job_name(const EstimatorConfig& cfg) {
    std::string name = to_string(cfg.algo);
    if (cfg.algo == Algorithm::pvssa) name += "_d" + std::to_string(cfg.d);
    return name;
}

void finish_manifest(RunManifest& manifest, const IoOpts& io) {
    manifest.timestamp_utc = current_utc_timestamp();
    manifest.seed = io.seed;
    write_text(fs::path(io.out_dir) / "manifest.json", manifest_json(manifest));
}

int cmd_estimate(const IoOpts& io, const EstimatorOpts& est) {
    const EstimatorConfig cfg = make_config(est);
    std::string descriptor;
    const Sequence seq = resolve_input(io, descriptor);
    const auto estimated = estimate_sequence(seq, cfg);

    fs::create_directories(io.out_dir);
    write_text(fs::path(io.out_dir) / "mv.csv", mv_csv(estimated));
    write_text(fs::path(io.out_dir) / "frame_stats.csv", frame_stats_csv(estimated));

    RunManifest manifest;
    manifest.command = "estimate";
    manifest.input_descriptor = descriptor;
    manifest.jobs = {cfg};
    manifest.outputs = {"mv.csv", "frame_stats.csv"};
    finish_manifest(manifest, io);
    return 0;
}

int cmd_bench(const IoOpts& io, const EstimatorOpts& est, std::vector<std::string> algos,
              std::vector<int> d_values) {
    if (algos.empty()) algos = {"fs", "pvssa"};
    if (d_values.empty()) d_values.push_back(est.d);

    // SUR is always reported, so the FS baseline joins the sweep when absent.
    bool have_fs = false;
    for (const auto& a : algos) have_fs = have_fs || parse_algorithm(a) == Algorithm::fs;
    if (!have_fs) algos.insert(algos.begin(), "fs");

    std::vector<EstimatorConfig> jobs;
    for (const auto& name : algos) {
        EstimatorOpts one = est;
        one.algo = name;
        const EstimatorConfig base = make_config(one);
        if (base.algo == Algorithm::pvssa) {
            for (int d : d_values) {
                EstimatorConfig cfg = base;
                cfg.d = d;
                jobs.push_back(cfg);
            }
        } else {
            jobs.push_back(base);
        }
    }

    std::string descriptor;
    const Sequence seq = resolve_input(io, descriptor);

    std::vector<SequenceReport> reports;
    std::optional<double> fs_nsp;
    for (const EstimatorConfig& cfg : jobs) {
        SequenceReport report = analyze_sequence(seq, cfg);
        if (cfg.algo == Algorithm::fs && !fs_nsp) fs_nsp = report.mean_nsp_per_block;
        reports.push_back(std::move(report));
    }
    for (SequenceReport& report : reports)
        if (fs_nsp) report.sur_pct = speedup(*fs_nsp, report.mean_nsp_per_block);

    fs::create_directories(io.out_dir);
    RunManifest manifest;
    manifest.command = "bench";
    manifest.input_descriptor = descriptor;
    manifest.jobs = jobs;
    write_text(fs::path(io.out_dir) / "comparison.csv", comparison_csv(reports));
    manifest.outputs.push_back("comparison.csv");
    for (const SequenceReport& report : reports) {
        const std::string file = "report_" + job_name(report.config) + ".json";
        write_text(fs::path(io.out_dir) / file, report_json(report));
        manifest.outputs.push_back(file);
    }
    finish_manifest(manifest, io);
    return 0;
}

int cmd_stats(const IoOpts& io, const EstimatorOpts& est, int d_max, bool chung,
              int chung_d_max) {
    if (d_max < 1) throw UsageError("--dmax must be >= 1");
    EstimatorOpts fs_opts = est;
    fs_opts.algo = "fs";  // the containment study is defined over FS fields
    const EstimatorConfig cfg = make_config(fs_opts);

    std::string descriptor;
    const Sequence seq = resolve_input(io, descriptor);
    const auto estimated = estimate_sequence(seq, cfg);
    std::vector<MotionField> fields;
    fields.reserve(estimated.size());
    for (const auto& ef : estimated) fields.push_back(ef.field);

    fs::create_directories(io.out_dir);
    RunManifest manifest;
    manifest.command = "stats";
    manifest.input_descriptor = descriptor;
    manifest.jobs = {cfg};

    const auto table = pr_of_d_table(fields, d_max);
    write_text(fs::path(io.out_dir) / "prd.csv", prd_csv(table));
    manifest.outputs.push_back("prd.csv");

    if (chung) {
        const int dmax = chung_d_max > 0 ? chung_d_max : 2 * cfg.w_max;
        const ChungTable ct = chung_probabilities({fields}, dmax);
        write_text(fs::path(io.out_dir) / "chung.csv", chung_csv(ct));
        manifest.outputs.push_back("chung.csv");
    }
    finish_manifest(manifest, io);
    return 0;
}

int cmd_reconstruct(const IoOpts& io, const EstimatorOpts& est,
                    std::vector<std::string> algos, bool dump_yuv) {
    if (algos.empty()) algos.push_back(est.algo);
    std::string descriptor;
    const Sequence seq = resolve_input(io, descriptor);

    fs::create_directories(io.out_dir);
    RunManifest manifest;
    manifest.command = "reconstruct";
    manifest.input_descriptor = descriptor;

    std::vector<SequenceReport> reports;
    for (const auto& name : algos) {
        EstimatorOpts one = est;
        one.algo = name;
        const EstimatorConfig cfg = make_config(one);
        manifest.jobs.push_back(cfg);

        const auto estimated = estimate_sequence(seq, cfg);
        SequenceReport report;
        report.sequence = seq.name;
        report.config = cfg;

        Sequence recon;
        recon.name = seq.name + "_" + job_name(cfg);
        recon.width = seq.width;
        recon.height = seq.height;
        for (const auto& ef : estimated) {
            const int f = ef.field.frame_index;
            Frame out = reconstruct(seq.frames[static_cast<std::size_t>(f) - 1], ef.field,
                                    cfg.block_n);
            FrameQuality q = frame_quality(out, seq.frames[static_cast<std::size_t>(f)]);
            q.frame_index = f;
            report.frames.push_back(q);
            report.frame_stats.push_back(ef.stats);
            if (dump_yuv) {
                recon.append(std::move(out));
            } else {
                char file[64];
                std::snprintf(file, sizeof(file), "recon_%s_f%04d.pgm",
                              job_name(cfg).c_str(), f);
                write_pgm((fs::path(io.out_dir) / file).string(), out);
                manifest.outputs.push_back(file);
            }
        }
        if (dump_yuv) {
            const std::string file = "recon_" + job_name(cfg) + ".yuv";
            write_yuv420((fs::path(io.out_dir) / file).string(), recon);
            manifest.outputs.push_back(file);
        }
        reports.push_back(std::move(report));
    }

    write_text(fs::path(io.out_dir) / "quality.csv", quality_csv(reports));
    manifest.outputs.push_back("quality.csv");

    // Per-frame PSNR-difference series against FS when both sides exist.
    const SequenceReport* fs_report = nullptr;
    for (const auto& r : reports)
        if (r.config.algo == Algorithm::fs) fs_report = &r;
    if (fs_report != nullptr && reports.size() > 1) {
        std::vector<SequenceReport> others;
        for (const auto& r : reports)
            if (r.config.algo != Algorithm::fs) others.push_back(r);
        write_text(fs::path(io.out_dir) / "psnr_diff.csv",
                   psnr_diff_csv(*fs_report, others));
        manifest.outputs.push_back("psnr_diff.csv");
    }
    finish_manifest(manifest, io);
    return 0;
}

int cmd_synth(const IoOpts& io) {
    if (io.synth_spec.empty()) throw UsageError("synth needs --synth pattern[:mvx,mvy]");
    const SynthSpec spec = parse_synth_spec(io.synth_spec, io);
    Sequence seq = synth(spec);
    if (!io.name.empty()) seq.name = io.name;

    fs::create_directories(io.out_dir);
    const std::string file = seq.name + ".yuv";
    write_yuv420((fs::path(io.out_dir) / file).string(), seq);

    RunManifest manifest;
    manifest.command = "synth";
    char buf[128];
    std::snprintf(buf, sizeof(buf), "synth %s %dx%dx%d seed=%llu", io.synth_spec.c_str(),
                  spec.width, spec.height, spec.frame_count,
                  static_cast<unsigned long long>(spec.seed));
    manifest.input_descriptor = buf;
    manifest.outputs = {file};
    finish_manifest(manifest, io);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"block-matching motion estimation benchmark"};
    app.set_version_flag("--version", std::string(kToolVersion));
    app.require_subcommand(1);

    IoOpts io;
    EstimatorOpts est;

    CLI::App* estimate = app.add_subcommand("estimate", "motion vectors and per-frame stats");
    add_io_flags(estimate, io);
    add_estimator_flags(estimate, est);

    std::vector<std::string> bench_algos;
    std::vector<int> bench_ds;
    CLI::App* bench = app.add_subcommand("bench", "compare algorithms on one sequence");
    add_io_flags(bench, io);
    add_estimator_flags(bench, est, false, false);
    bench->add_option("--algo", bench_algos,
                      "algorithms to compare (repeatable, default fs,pvssa)")
        ->delimiter(',');
    bench->add_option("--d", bench_ds, "expansion values for pvssa jobs (repeatable)")
        ->delimiter(',');

    int stats_dmax = 5;
    bool stats_chung = false;
    int stats_chung_dmax = 0;
    CLI::App* stats = app.add_subcommand("stats", "containment probability study");
    add_io_flags(stats, io);
    add_estimator_flags(stats, est, false);
    stats->get_option("--criterion")->default_val("mae");
    stats->add_option("--dmax", stats_dmax, "largest d row")->default_val(5);
    stats->add_flag("--chung", stats_chung, "also emit the D-statistic table");
    stats->add_option("--chung-dmax", stats_chung_dmax,
                      "largest D row (default 2W, the full range)");

    std::vector<std::string> recon_algos;
    bool recon_yuv = false;
    CLI::App* reconstruct = app.add_subcommand("reconstruct",
                                               "motion-compensated frames and quality");
    add_io_flags(reconstruct, io);
    add_estimator_flags(reconstruct, est, false);
    reconstruct->add_option("--algo", recon_algos,
                            "algorithms to reconstruct with (default fs)")
        ->delimiter(',');
    reconstruct->add_flag("--yuv", recon_yuv, "write one raw YUV per algorithm instead of PGMs");

    CLI::App* synth_cmd = app.add_subcommand("synth", "write a synthetic raw YUV sequence");
    add_io_flags(synth_cmd, io);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(estimate)) return cmd_estimate(io, est);
        if (app.got_subcommand(bench)) return cmd_bench(io, est, bench_algos, bench_ds);
        if (app.got_subcommand(stats))
            return cmd_stats(io, est, stats_dmax, stats_chung, stats_chung_dmax);
        if (app.got_subcommand(reconstruct))
            return cmd_reconstruct(io, est, recon_algos, recon_yuv);
        if (app.got_subcommand(synth_cmd)) return cmd_synth(io);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help() << std::endl;
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 1;
    }
    return 2;
}
