// Acceptance suite: one line per criterion, pinned tolerances, nonzero exit
// on any failure. Run through ctest or directly from the build tree.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mebench/analysis.hpp"
#include "mebench/report.hpp"
#include "mebench/video_io.hpp"
#include "../oracles.hpp"

#ifndef MEBENCH_CLI_PATH
#define MEBENCH_CLI_PATH "mebench"
#endif

using namespace mebench;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int idx, const std::string& name, bool ok, const std::string& detail = "") {
    std::printf("%s  criterion %2d: %s%s%s\n", ok ? "PASS" : "FAIL", idx, name.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++failures;
}

PredictorSet preds_of(std::initializer_list<MotionVec> mvs) {
    PredictorSet p;
    int i = 0;
    for (MotionVec mv : mvs) p.mv[i++] = mv;
    return p;
}

Sequence make_translate(MotionVec mv, int w, int h, int frames, std::uint64_t seed,
                        SynthPattern pattern) {
    SynthSpec spec;
    spec.pattern = pattern;
    spec.true_mv = mv;
    spec.width = w;
    spec.height = h;
    spec.frame_count = frames;
    spec.seed = seed;
    return synth(spec);
}

// --- criterion 1: the worked rectangle, exact -------------------------------
void criterion_1() {
    const auto p = preds_of({{3, 7}, {1, 6}, {-1, 5}, {0, 6}, {3, 5}});
    const SearchRect r = pvssa_rect(p, 2);
    const bool ok = r == SearchRect{-3, 5, 3, 9};
    report(1, "predictor rectangle corners (-3,3)(-3,9)(5,3)(5,9)", ok);
}

// --- criterion 2: expanded-rectangle point counts ---------------------------
void criterion_2() {
    EstimatorConfig cfg;
    cfg.w_max = 15;
    cfg.d = 3;
    const BlockRef interior{160, 128, 16};
    const auto same = preds_of({{2, 1}, {2, 1}, {2, 1}, {2, 1}, {2, 1}});
    const auto spread = preds_of({{0, 0}, {1, 0}, {0, 1}, {1, 1}, {0, 0}});
    const std::size_t n49 = pvssa_candidates(interior, same, cfg, 352, 288).size();
    const std::size_t n64 = pvssa_candidates(interior, spread, cfg, 352, 288).size();
    report(2, "search-area sizes 49 (identical) and 64 (one-pixel spread)",
           n49 == 49 && n64 == 64,
           std::to_string(n49) + " and " + std::to_string(n64));
}

// --- criterion 3: region accounting for the four-square search --------------
void criterion_3() {
    EstimatorConfig cfg;
    cfg.w_max = 15;
    const BlockRef interior{160, 128, 16};
    const auto apart = preds_of({{-9, -9}, {9, -9}, {-9, 9}, {9, 9}});
    const auto same = preds_of({{1, 1}, {1, 1}, {1, 1}, {1, 1}});
    const auto disjoint = psa_candidates(interior, apart, cfg, 352, 288);
    const auto identical = psa_candidates(interior, same, cfg, 352, 288);
    const bool ok = disjoint.count_with_overlaps == 100 && disjoint.points.size() <= 100 &&
                    disjoint.points.size() == 100 && identical.points.size() == 25;
    report(3, "four-region accounting 100 overlapped / <=100 distinct / 25 identical", ok);
}

// --- criterion 4: full search equals the quadruple-loop oracle --------------
void criterion_4() {
    const auto start = std::chrono::steady_clock::now();
    const Sequence seq =
        make_translate({3, 2}, 64, 64, 5, 12345, SynthPattern::random_texture_translate);
    EstimatorConfig cfg;
    cfg.algo = Algorithm::fs;
    bool ok = true;
    const MotionField* prev = nullptr;
    std::vector<EstimatedFrame> fields;
    for (std::size_t f = 1; f < seq.frame_count() && ok; ++f) {
        fields.push_back(estimate_frame(seq.frames[f], seq.frames[f - 1], prev, cfg));
        const EstimatedFrame& ef = fields.back();
        for (int r = 0; r < ef.field.rows && ok; ++r) {
            for (int c = 0; c < ef.field.cols && ok; ++c) {
                const auto expect = oracle::full_search(seq.frames[f], seq.frames[f - 1],
                                                        c * 16, r * 16, 16, 15);
                const MatchResult& got = ef.field.at(r, c);
                ok = got.mv.x == expect.mvx && got.mv.y == expect.mvy &&
                     got.cost.num == expect.sad && got.nsp == expect.nsp;
            }
        }
        prev = &fields.back().field;
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char detail[64];
    std::snprintf(detail, sizeof(detail), "%.2f s", secs);
    report(4, "full search equals brute-force oracle in mv, cost and nsp",
           ok && secs < 10.0, detail);
}

// --- criterion 5: full-search dominance across all algorithms ---------------
void criterion_5() {
    std::mt19937_64 rng(0xACCE5501);
    int violations = 0;
    const int w_values[] = {3, 7, 15};
    for (int iter = 0; iter < 200; ++iter) {
        const int w = w_values[iter % 3];
        Frame cur(64, 64, 0), ref(64, 64, 0);
        for (auto& px : cur.luma) px = std::uint8_t(rng() & 0xff);
        for (auto& px : ref.luma) px = std::uint8_t(rng() & 0xff);
        const BlockRef block{int(rng() % 4) * 16, int(rng() % 4) * 16, 16};
        EstimatorConfig cfg;
        cfg.w_max = w;

        const auto fs_list = fs_candidates(block, cfg, 64, 64);
        std::set<std::pair<int, int>> fs_set;
        for (const auto& p : fs_list) fs_set.emplace(p.x, p.y);
        const auto fs_best = best_match(cur, ref, block, fs_list, cfg.criterion);

        PredictorSet preds;
        for (int i = 0; i < 5; ++i)
            preds.mv[i] = {int(rng() % (2 * w + 1)) - w, int(rng() % (2 * w + 1)) - w};

        for (Algorithm algo : {Algorithm::fs, Algorithm::tss, Algorithm::fss, Algorithm::ds,
                               Algorithm::psa, Algorithm::pvssa}) {
            cfg.algo = algo;
            MatchResult r;
            std::vector<MotionVec> points;
            if (algo == Algorithm::fs) {
                points = fs_list;
                r = fs_best;
            } else if (algo == Algorithm::psa) {
                points = psa_candidates(block, preds, cfg, 64, 64).points;
                r = best_match(cur, ref, block, points, cfg.criterion);
            } else if (algo == Algorithm::pvssa) {
                points = pvssa_candidates(block, preds, cfg, 64, 64);
                r = best_match(cur, ref, block, points, cfg.criterion);
            } else {
                r = step_search(cur, ref, block, cfg, &points);
            }
            for (const auto& p : points)
                if (fs_set.count({p.x, p.y}) == 0) ++violations;
            if (fs_best.cost.num > r.cost.num) ++violations;
        }
    }
    report(5, "fs cost dominates and every candidate set is a subset (200 blocks)",
           violations == 0, std::to_string(violations) + " violations");
}

// --- criterion 6: ground-truth recovery and lossless reconstruction ---------
void criterion_6() {
    bool ok = true;
    std::string detail;
    const Sequence seq = make_translate({3, 2}, 96, 96, 4, 777, SynthPattern::translate);
    for (int d : {1, 3}) {
        for (Algorithm algo : {Algorithm::fs, Algorithm::pvssa}) {
            EstimatorConfig cfg;
            cfg.algo = algo;
            cfg.d = d;
            const auto estimated = estimate_sequence(seq, cfg);
            for (const auto& ef : estimated) {
                const MotionField& field = ef.field;
                for (int r = 1; r < field.rows - 1; ++r)
                    for (int c = 1; c < field.cols - 1; ++c)
                        if (field.at(r, c).mv != MotionVec{3, 2}) ok = false;
                const Frame recon = reconstruct(
                    seq.frames[std::size_t(field.frame_index) - 1], field, cfg.block_n);
                const Frame& actual = seq.frames[std::size_t(field.frame_index)];
                std::int64_t interior_sse = 0;
                for (int y = cfg.block_n; y < 96 - cfg.block_n; ++y)
                    for (int x = cfg.block_n; x < 96 - cfg.block_n; ++x) {
                        const int diff = int(recon.at(x, y)) - int(actual.at(x, y));
                        interior_sse += std::int64_t(diff) * diff;
                    }
                if (interior_sse != 0) ok = false;
            }
            if (!ok && detail.empty())
                detail = "failed at d=" + std::to_string(d) + " algo=" + to_string(algo);
        }
    }
    report(6, "fs and pvssa (d>=1) recover (3,2) with lossless interior", ok, detail);
}

// --- criterion 7: containment probability machinery -------------------------
void criterion_7() {
    bool ok = true;
    const Sequence seq =
        make_translate({2, -1}, 64, 64, 4, 2024, SynthPattern::random_texture_translate);
    EstimatorConfig cfg;
    cfg.algo = Algorithm::fs;
    const auto estimated = estimate_sequence(seq, cfg);
    std::vector<MotionField> fields;
    for (const auto& ef : estimated) fields.push_back(ef.field);

    const auto table = pr_of_d_table(fields, 2 * cfg.w_max);
    for (std::size_t i = 1; i < table.size(); ++i)
        if (table[i].second < table[i - 1].second) ok = false;
    if (table.back().second != 1.0) ok = false;

    std::mt19937_64 rng(0xACCE5507);
    for (int iter = 0; iter < 10000; ++iter) {
        PredictorSet p;
        for (int i = 0; i < 5; ++i)
            p.mv[i] = {int(rng() % 31) - 15, int(rng() % 31) - 15};
        const MotionVec mv{int(rng() % 41) - 20, int(rng() % 41) - 20};
        const int d = int(rng() % 8);
        if (p_of_d(containment_record(p, mv), d) != pvssa_rect(p, d).contains(mv)) ok = false;
    }
    report(7, "pr(d) monotone with pr(2W)=1; p_of_d = rect membership on 10k triples", ok);
}

// --- criterion 8: speedup arithmetic -----------------------------------------
void criterion_8() {
    const double sur = speedup(961.0, 49.0);
    const bool ok = std::abs(sur - 94.90) <= 0.01 && speedup(123.0, 123.0) == 0.0;
    report(8, "speedup(961,49) = 94.90 +/- 0.01 and speedup(a,a) = 0", ok,
           format_fixed(sur, 4));
}

// --- criterion 9: psnr formula ------------------------------------------------
void criterion_9() {
    Frame black(20, 10, 0), white(20, 10, 0);
    std::fill(white.luma.begin(), white.luma.end(), std::uint8_t(255));
    const FrameQuality worst = frame_quality(black, white);

    Frame a(20, 10, 0), b(20, 10, 0);
    b.at(4, 4) = 29;  // mse = 841/200 = 4.205
    const FrameQuality q = frame_quality(a, b);

    const bool ok = worst.mse == 65025.0 && worst.psnr_db.has_value() &&
                    *worst.psnr_db == 0.0 && q.psnr_db.has_value() &&
                    std::abs(*q.psnr_db - 41.894) <= 0.001;
    report(9, "psnr(65025) = 0 dB exact, psnr(4.205) = 41.894 +/- 0.001", ok,
           q.psnr_db ? format_fixed(*q.psnr_db, 4) : "none");
}

// --- criterion 10: fs average nsp under border clamping ----------------------
void criterion_10() {
    EstimatorConfig cfg;
    cfg.w_max = 15;
    std::int64_t implementation_total = 0;
    std::int64_t oracle_total = 0;
    int blocks = 0;
    for (int y0 = 0; y0 < 288; y0 += 16) {
        for (int x0 = 0; x0 < 352; x0 += 16) {
            implementation_total +=
                std::int64_t(fs_candidates({x0, y0, 16}, cfg, 352, 288).size());
            oracle_total += oracle::clamp_count(x0, y0, 16, 352, 288, 15);
            ++blocks;
        }
    }
    // 344256 points over 396 blocks: 869.33 per block. The figure published
    // for this configuration (859.45) assumes an unstated border convention
    // and is documented, not asserted; see README.
    const bool ok = implementation_total == oracle_total && blocks == 396 &&
                    implementation_total == 344256 &&
                    format_fixed(double(implementation_total) / blocks, 2) == "869.33";
    report(10, "fs mean nsp on CIF equals the enumeration oracle (869.33)", ok,
           format_fixed(double(implementation_total) / blocks, 2));
}

// --- criterion 11: bench report structure on a full sweep ---------------------
void criterion_11() {
    const Sequence seq = make_translate({3, 2}, 96, 96, 5, 4321, SynthPattern::translate);

    EstimatorConfig fs_cfg;
    fs_cfg.algo = Algorithm::fs;
    const SequenceReport fs_report = analyze_sequence(seq, fs_cfg);

    bool ok = fs_report.mean_psnr_db.has_value();
    std::vector<double> nsp_by_d;
    std::string detail;
    for (int d = 1; d <= 5; ++d) {
        EstimatorConfig cfg;
        cfg.algo = Algorithm::pvssa;
        cfg.d = d;
        const SequenceReport r = analyze_sequence(seq, cfg);
        nsp_by_d.push_back(r.mean_nsp_per_block);
        if (d == 3) {
            if (!r.mean_psnr_db ||
                !(*fs_report.mean_psnr_db >= *r.mean_psnr_db - 0.0001))
                ok = false;
            detail = "psnr fs=" + format_fixed(*fs_report.mean_psnr_db, 3) +
                     " pvssa_d3=" + (r.mean_psnr_db ? format_fixed(*r.mean_psnr_db, 3) : "inf");
        }
    }
    for (std::size_t i = 1; i < nsp_by_d.size(); ++i)
        if (!(nsp_by_d[i - 1] < nsp_by_d[i])) ok = false;
    report(11, "bench: psnr(fs) >= psnr(pvssa d=3) - 1e-4 and mean nsp strictly grows in d",
           ok, detail);
}

// --- criterion 12: end-to-end determinism through the CLI --------------------
int run_cli(const std::string& args) {
    const std::string cmd = std::string(MEBENCH_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return status == -1 ? -1 : WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void criterion_12() {
    const fs::path base = fs::temp_directory_path() / "mebench_acceptance";
    const fs::path a = base / "run_a";
    const fs::path b = base / "run_b";
    fs::remove_all(base);
    fs::create_directories(a);
    fs::create_directories(b);

    const std::string flags = "bench --synth translate:3,2 --width 64 --height 64 "
                              "--frames 4 --seed 99 --algo fs,pvssa,3ss,ds --out ";
    bool ok = run_cli(flags + a.string()) == 0 && run_cli(flags + b.string()) == 0;
    int compared = 0;
    if (ok) {
        for (const auto& entry : fs::directory_iterator(a)) {
            const std::string name = entry.path().filename().string();
            if (name == "manifest.json") continue;  // carries the timestamp
            const std::string left = slurp(entry.path());
            const std::string right = slurp(b / name);
            if (left.empty() || left != right) ok = false;
            ++compared;
        }
        if (compared == 0) ok = false;
    }
    report(12, "two identical bench runs produce byte-identical csv/json", ok,
           std::to_string(compared) + " files compared");
}

}  // namespace

int main() {
    const auto start = std::chrono::steady_clock::now();
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    criterion_12();
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s: %d of 12 criteria passed in %.1f s\n",
                failures == 0 ? "OK" : "FAILED", 12 - failures, secs);
    return failures == 0 ? 0 : 1;
}
