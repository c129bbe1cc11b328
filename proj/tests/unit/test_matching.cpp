#include <doctest.h>

#include <random>
#include <set>

#include "mebench/matching.hpp"
#include "mebench/video_io.hpp"
#include "../oracles.hpp"

using namespace mebench;

namespace {

Frame const_frame(int w, int h, std::uint8_t v) {
    Frame f(w, h, 0);
    std::fill(f.luma.begin(), f.luma.end(), v);
    return f;
}

Frame random_frame(int w, int h, std::uint64_t seed) {
    Frame f(w, h, 0);
    std::mt19937_64 rng(seed);
    for (auto& px : f.luma) px = static_cast<std::uint8_t>(rng() & 0xff);
    return f;
}

}  // namespace

TEST_CASE("criterion aliases map to (beta, delta)") {
    CHECK(criterion_beta(Criterion::mse) == 1);
    CHECK(criterion_delta(Criterion::mse) == 2);
    CHECK(criterion_beta(Criterion::sse) == 0);
    CHECK(criterion_delta(Criterion::sse) == 2);
    CHECK(criterion_beta(Criterion::mae) == 1);
    CHECK(criterion_delta(Criterion::mae) == 1);
    CHECK(criterion_beta(Criterion::sae) == 0);
    CHECK(criterion_delta(Criterion::sae) == 1);
    CHECK(parse_criterion("mse") == Criterion::mse);
    CHECK_THROWS_AS(parse_criterion("sad"), std::invalid_argument);
}

TEST_CASE("block cost is zero on identical frames") {
    const Frame a = random_frame(32, 32, 7);
    for (Criterion k : {Criterion::sae, Criterion::mae, Criterion::sse, Criterion::mse}) {
        const Cost c = block_cost(a, a, {16, 16, 16}, {0, 0}, k);
        CHECK(c.num == 0);
        CHECK(c.value() == 0.0);
    }
}

TEST_CASE("2x2 worked example across all criteria") {
    // cur block [[10,20],[30,40]] against ref region [[11,18],[30,44]] at (1,1).
    Frame cur = const_frame(4, 4, 0);
    cur.at(0, 0) = 10;
    cur.at(1, 0) = 20;
    cur.at(0, 1) = 30;
    cur.at(1, 1) = 40;
    Frame ref = const_frame(4, 4, 0);
    ref.at(1, 1) = 11;
    ref.at(2, 1) = 18;
    ref.at(1, 2) = 30;
    ref.at(2, 2) = 44;

    const BlockRef block{0, 0, 2};
    const MotionVec disp{1, 1};

    const Cost sae = block_cost(cur, ref, block, disp, Criterion::sae);
    CHECK(sae.num == 7);
    CHECK(sae.den == 1);

    const Cost mae = block_cost(cur, ref, block, disp, Criterion::mae);
    CHECK(mae.num == 7);
    CHECK(mae.den == 4);
    CHECK(mae.value() == doctest::Approx(1.75));

    const Cost mse = block_cost(cur, ref, block, disp, Criterion::mse);
    CHECK(mse.num == 21);
    CHECK(mse.den == 4);
    CHECK(mse.value() == doctest::Approx(5.25));

    CHECK(oracle::block_cost(cur, ref, block, disp, 0, 1) == doctest::Approx(7.0));
    CHECK(oracle::block_cost(cur, ref, block, disp, 1, 1) == doctest::Approx(1.75));
    CHECK(oracle::block_cost(cur, ref, block, disp, 1, 2) == doctest::Approx(5.25));
}

TEST_CASE("block cost agrees with the scalar oracle on random inputs") {
    std::mt19937_64 rng(99);
    const Frame cur = random_frame(48, 48, 1);
    const Frame ref = random_frame(48, 48, 2);
    for (int iter = 0; iter < 50; ++iter) {
        const int n = 8;
        const BlockRef block{(1 + int(rng() % 4)) * n, (1 + int(rng() % 4)) * n, n};
        const MotionVec disp{int(rng() % 9) - 4, int(rng() % 9) - 4};
        for (Criterion k : {Criterion::sae, Criterion::mae, Criterion::sse, Criterion::mse}) {
            const double expected = oracle::block_cost(cur, ref, block, disp,
                                                       criterion_beta(k), criterion_delta(k));
            CHECK(block_cost(cur, ref, block, disp, k).value() == doctest::Approx(expected));
        }
    }
}

TEST_CASE("scaled and unscaled criteria relate exactly") {
    std::mt19937_64 rng(123);
    const Frame cur = random_frame(64, 64, 3);
    const Frame ref = random_frame(64, 64, 4);
    for (int iter = 0; iter < 40; ++iter) {
        const int n = 16;
        const BlockRef block{(1 + int(rng() % 2)) * n, (1 + int(rng() % 2)) * n, n};
        const MotionVec disp{int(rng() % 11) - 5, int(rng() % 11) - 5};
        const Cost sae = block_cost(cur, ref, block, disp, Criterion::sae);
        const Cost mae = block_cost(cur, ref, block, disp, Criterion::mae);
        const Cost sse = block_cost(cur, ref, block, disp, Criterion::sse);
        const Cost mse = block_cost(cur, ref, block, disp, Criterion::mse);
        // SAE = N^2 * MAE and SSE = N^2 * MSE as exact rationals.
        CHECK(sae.num == mae.num);
        CHECK(mae.den == n * n);
        CHECK(sse.num == mse.num);
        CHECK(mse.den == n * n);
    }
}

TEST_CASE("criterion is symmetric under frame swap with inverse displacement") {
    std::mt19937_64 rng(321);
    const Frame a = random_frame(40, 40, 5);
    const Frame b = random_frame(40, 40, 6);
    for (int iter = 0; iter < 60; ++iter) {
        const int n = 8;
        const BlockRef block{8 + int(rng() % 2) * n, 8 + int(rng() % 2) * n, n};
        const MotionVec disp{int(rng() % 9) - 4, int(rng() % 9) - 4};
        const BlockRef swapped{block.x0 + disp.x, block.y0 + disp.y, n};
        const MotionVec inverse{-disp.x, -disp.y};
        for (Criterion k : {Criterion::sae, Criterion::sse}) {
            CHECK(block_cost(a, b, block, disp, k).num ==
                  block_cost(b, a, swapped, inverse, k).num);
        }
    }
}

TEST_CASE("clamp_rect leaves unconstrained interior blocks alone") {
    const SearchRect full{-15, 15, -15, 15};
    const BlockRef block{160, 128, 16};
    CHECK(clamp_rect(full, block, 352, 288, 15) == full);
}

TEST_CASE("clamp_rect at the frame origin") {
    const SearchRect full{-15, 15, -15, 15};
    const BlockRef block{0, 0, 16};
    const SearchRect clamped = clamp_rect(full, block, 352, 288, 15);
    CHECK(clamped == SearchRect{0, 15, 0, 15});
    CHECK(clamped.point_count() == 256);
    CHECK(oracle::clamp_count(0, 0, 16, 352, 288, 15) == 256);
}

TEST_CASE("clamp_rect degenerates to the zero displacement when forced empty") {
    const SearchRect rect{-5, -1, -3, 3};
    const BlockRef block{0, 0, 16};
    CHECK(clamp_rect(rect, block, 352, 288, 15) == SearchRect{0, 0, 0, 0});
}

TEST_CASE("clamp_rect matches one-by-one enumeration on random blocks") {
    std::mt19937_64 rng(888);
    for (int iter = 0; iter < 100; ++iter) {
        const int n = 16;
        const int fw = 352, fh = 288;
        const int x0 = int(rng() % (fw / n)) * n;
        const int y0 = int(rng() % (fh / n)) * n;
        const int w = 1 + int(rng() % 20);
        const SearchRect clamped =
            clamp_rect({-w, w, -w, w}, {x0, y0, n}, fw, fh, w);
        CHECK(clamped.point_count() == oracle::clamp_count(x0, y0, n, fw, fh, w));
    }
}

TEST_CASE("enumerate_rect is row-major, y outer") {
    const auto pts = enumerate_rect({-1, 0, 2, 3});
    REQUIRE(pts.size() == 4);
    CHECK(pts[0] == MotionVec{-1, 2});
    CHECK(pts[1] == MotionVec{0, 2});
    CHECK(pts[2] == MotionVec{-1, 3});
    CHECK(pts[3] == MotionVec{0, 3});
}

TEST_CASE("best_match on a singleton candidate set") {
    const Frame a = random_frame(32, 32, 11);
    const std::vector<MotionVec> cands{{0, 0}};
    const MatchResult r = best_match(a, a, {0, 0, 16}, cands, Criterion::sae);
    CHECK(r.mv == MotionVec{0, 0});
    CHECK(r.cost.num == 0);
    CHECK(r.nsp == 1);
}

TEST_CASE("best_match over the full window counts (2W+1)^2 points") {
    const Frame a = random_frame(64, 64, 12);
    const BlockRef block{16, 16, 16};
    const auto cands = enumerate_rect(clamp_rect({-15, 15, -15, 15}, block, 64, 64, 15));
    const MatchResult r = best_match(a, a, block, cands, Criterion::sae);
    CHECK(r.nsp == 961);
    CHECK(r.mv == MotionVec{0, 0});  // zero cost, first in scan order
}

TEST_CASE("best_match recovers synthetic translation exactly") {
    SynthSpec spec;
    spec.pattern = SynthPattern::random_texture_translate;
    spec.true_mv = {3, 2};
    spec.width = 64;
    spec.height = 64;
    spec.frame_count = 2;
    spec.seed = 42;
    const Sequence seq = synth(spec);

    const BlockRef block{16, 16, 16};
    const auto cands =
        enumerate_rect(clamp_rect({-15, 15, -15, 15}, block, 64, 64, 15));
    const MatchResult r =
        best_match(seq.frames[1], seq.frames[0], block, cands, Criterion::sae);
    CHECK(r.mv == MotionVec{3, 2});
    CHECK(r.cost.num == 0);

    const auto ref = oracle::full_search(seq.frames[1], seq.frames[0], 16, 16, 16, 15);
    CHECK(ref.mvx == 3);
    CHECK(ref.mvy == 2);
    CHECK(ref.sad == 0);
}

TEST_CASE("minimum cost is monotone under candidate-set inclusion") {
    std::mt19937_64 rng(777);
    const Frame cur = random_frame(64, 64, 21);
    const Frame ref = random_frame(64, 64, 22);
    const BlockRef block{32, 32, 16};
    const auto all = enumerate_rect(clamp_rect({-10, 10, -10, 10}, block, 64, 64, 10));
    for (int iter = 0; iter < 25; ++iter) {
        std::vector<MotionVec> subset;
        for (const auto& p : all)
            if (rng() % 3 == 0) subset.push_back(p);
        if (subset.empty()) subset.push_back({0, 0});
        const auto sub = best_match(cur, ref, block, subset, Criterion::sae);
        const auto full = best_match(cur, ref, block, all, Criterion::sae);
        CHECK(sub.cost.num >= full.cost.num);
        CHECK(sub.nsp == std::int64_t(subset.size()));
    }
}

TEST_CASE("argmin is identical for scaled and unscaled criteria") {
    const Frame cur = random_frame(64, 64, 31);
    const Frame ref = random_frame(64, 64, 32);
    const BlockRef block{16, 32, 16};
    const auto cands = enumerate_rect(clamp_rect({-7, 7, -7, 7}, block, 64, 64, 7));
    const auto sae = best_match(cur, ref, block, cands, Criterion::sae);
    const auto mae = best_match(cur, ref, block, cands, Criterion::mae);
    const auto sse = best_match(cur, ref, block, cands, Criterion::sse);
    const auto mse = best_match(cur, ref, block, cands, Criterion::mse);
    CHECK(sae.mv == mae.mv);
    CHECK(sse.mv == mse.mv);
}

TEST_CASE("best_match rejects an empty candidate set") {
    const Frame a = const_frame(32, 32, 0);
    CHECK_THROWS_AS(best_match(a, a, {0, 0, 16}, {}, Criterion::sae),
                    std::logic_error);
}

TEST_CASE("out-of-bounds displacement is a contract violation") {
    const Frame a = const_frame(32, 32, 0);
    CHECK_THROWS_AS(block_error_sum(a, a, {0, 0, 16}, {-1, 0}, 1), std::logic_error);
    CHECK_THROWS_AS(block_error_sum(a, a, {16, 16, 16}, {1, 0}, 1), std::logic_error);
}
