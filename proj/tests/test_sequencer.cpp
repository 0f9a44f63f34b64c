#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstring>

#include "holosort/patterns.hpp"
#include "holosort/sequencer.hpp"
#include "holosort/util.hpp"

using namespace holosort;
using namespace holosort::optics;
using namespace holosort::sequencer;

namespace {

OpticalConfig cfg_of(int m) {
    OpticalConfig cfg;
    cfg.mx = cfg.my = m;
    return cfg;
}

wgs::WgsResult balance(const TweezerPattern& target, const OpticalConfig& cfg,
                       std::uint64_t seed) {
    wgs::WgsSettings s;
    s.max_iters = 120;
    s.rng_seed = seed;
    return wgs::run_wgs(target, cfg, s);
}

TweezerPattern grid(int rows, int cols, double spacing) {
    patterns::GeometrySpec spec;
    spec.rows = rows;
    spec.cols = cols;
    spec.spacing = spacing;
    return patterns::generate(spec);
}

}  // namespace

TEST_SUITE("sequencer") {

TEST_CASE("atoms already on target need no move frames") {
    auto cfg = cfg_of(128);
    auto w = balance(grid(2, 2, 9), cfg, 1);
    auto p = plan(w, w, {true, true, true, true}, cfg);
    CHECK(p.move_steps == 0);
    auto seq = full_sequence(p);
    CHECK(static_cast<int>(seq.frames.size()) == p.settings.ramp_steps);
}

TEST_CASE("move count follows the Chebyshev distance") {
    auto cfg = cfg_of(128);
    TweezerPattern one, dst;
    one.tweezers.push_back({0, 0, 1.0, 0.0});
    dst.tweezers.push_back({5, 3, 1.0, 0.0});
    auto p = plan(balance(one, cfg, 1), balance(dst, cfg, 2), {true}, cfg);
    CHECK(p.move_steps == 5);
}

TEST_CASE("ramp schedule: unused fade linearly, retained blend to final") {
    auto cfg = cfg_of(256);
    auto initial = balance(grid(3, 3, 11), cfg, 3);
    auto final = balance(grid(2, 2, 11), cfg, 4);
    // occupy 5 of 9: corners plus center
    std::vector<bool> occ(9, false);
    occ[0] = occ[2] = occ[4] = occ[6] = occ[8] = true;
    auto p = plan(initial, final, occ, cfg);
    REQUIRE(p.settings.ramp_steps == 2);

    std::vector<bool> retained(9, false);
    for (const auto& mv : p.moves) retained[mv.initial_index] = true;

    auto amps1 = ramp_amp_schedule(p, 1);
    auto amps2 = ramp_amp_schedule(p, 2);
    for (std::size_t i = 0; i < 9; ++i) {
        double a0 = p.initial.achieved.tweezers[i].amp;
        if (!retained[i]) {
            CHECK(amps1[i] == doctest::Approx(0.5 * a0));
            CHECK(amps2[i] == doctest::Approx(0.0));
        } else {
            auto mv = std::find_if(p.moves.begin(), p.moves.end(),
                                   [&](const Move& m) {
                                       return m.initial_index == int(i);
                                   });
            double a1 = p.final_balanced.tweezers[mv->final_index].amp;
            CHECK(amps1[i] == doctest::Approx(0.5 * (a0 + a1)));
            CHECK(amps2[i] == doctest::Approx(a1));
        }
    }

    // extinguishing unused tweezers redistributes power to the retained ones
    auto frames = ramp_off_frames(p);
    auto share = [&](const Frame& f) {
        double kept = 0.0, total = 0.0;
        for (std::size_t i = 0; i < f.pattern.tweezers.size(); ++i) {
            double a2 = f.pattern.tweezers[i].amp * f.pattern.tweezers[i].amp;
            total += a2;
            if (retained[f.tweezer_ids[i]]) kept += a2;
        }
        return kept / total;
    };
    CHECK(share(frames[0]) < share(frames[1]));
    CHECK(share(frames[1]) == doctest::Approx(1.0));
}

TEST_CASE("ramp frames with nothing to do reproduce the initial pattern") {
    auto cfg = cfg_of(128);
    auto w = balance(grid(2, 2, 9), cfg, 5);
    auto p = plan(w, w, {true, true, true, true}, cfg);
    auto frames = ramp_off_frames(p);
    TweezerPattern start = w.achieved;
    start.normalize();
    for (const auto& f : frames) {
        REQUIRE(f.pattern.size() == start.size());
        for (std::size_t i = 0; i < start.size(); ++i) {
            CHECK(f.pattern.tweezers[i].m == start.tweezers[i].m);
            CHECK(f.pattern.tweezers[i].amp ==
                  doctest::Approx(start.tweezers[i].amp).epsilon(1e-6));
            CHECK(f.pattern.tweezers[i].phase == start.tweezers[i].phase);
        }
    }
}

TEST_CASE("final frame is bit-identical to the balanced final hologram") {
    auto cfg = cfg_of(128);
    TweezerPattern src = grid(2, 2, 9);
    TweezerPattern dst = grid(2, 2, 9);
    for (auto& t : dst.tweezers) {
        t.m += 4;
        t.n -= 3;
    }
    auto p = plan(balance(src, cfg, 6), balance(dst, cfg, 7),
                  {true, true, true, true}, cfg);
    REQUIRE(p.move_steps >= 1);
    auto seq = full_sequence(p);
    auto direct = pattern_to_hologram(p.final_pattern(), cfg);
    REQUIRE(seq.frames.back().hologram.values.size() == direct.values.size());
    CHECK(std::memcmp(seq.frames.back().hologram.values.data(),
                      direct.values.data(),
                      direct.values.size() * sizeof(double)) == 0);
}

TEST_CASE("steps stay within one Fourier unit per axis") {
    auto cfg = cfg_of(128);
    auto initial = balance(grid(4, 4, 7), cfg, 8);
    auto final = balance(grid(2, 2, 7), cfg, 9);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        std::vector<bool> occ;
        for (std::uint64_t sub = 0;; ++sub) {
            occ = patterns::load_stochastic(initial.achieved, 0.6,
                                            derive_seed(seed, sub));
            if (std::count(occ.begin(), occ.end(), true) >= 4) break;
        }
        auto p = plan(initial, final, occ, cfg);
        auto seq = full_sequence(p);
        for (std::size_t f = 0; f + 1 < seq.frames.size(); ++f) {
            const auto& fa = seq.frames[f];
            const auto& fb = seq.frames[f + 1];
            for (std::size_t i = 0; i < fb.tweezer_ids.size(); ++i) {
                auto it = std::find(fa.tweezer_ids.begin(), fa.tweezer_ids.end(),
                                    fb.tweezer_ids[i]);
                if (it == fa.tweezer_ids.end()) continue;
                const auto& a = fa.pattern.tweezers[it - fa.tweezer_ids.begin()];
                const auto& b = fb.pattern.tweezers[i];
                CHECK(std::abs(b.m - a.m) <= 1);
                CHECK(std::abs(b.n - a.n) <= 1);
            }
        }
    }
}

TEST_CASE("phase interpolation walks the short way") {
    auto cfg = cfg_of(128);
    TweezerPattern src, dst;
    src.tweezers.push_back({0, 0, 1.0, 0.0});
    dst.tweezers.push_back({6, 0, 1.0, 0.0});
    auto p = plan(balance(src, cfg, 10), balance(dst, cfg, 11), {true}, cfg);
    REQUIRE(p.move_steps == 6);
    auto frames = move_frames(p);
    double prev = p.initial.achieved.tweezers[0].phase;
    for (const auto& f : frames) {
        double cur = f.pattern.tweezers[0].phase;
        CHECK(angular_dist(cur, prev) <=
              std::numbers::pi / p.move_steps + 1e-9);
        prev = cur;
    }
    CHECK(frames.back().pattern.tweezers[0].phase ==
          p.final_balanced.tweezers[0].phase);
}

TEST_CASE("programmed slip accumulates per step") {
    auto cfg = cfg_of(128);
    TweezerPattern src, dst;
    src.tweezers.push_back({0, 0, 1.0, 0.0});
    dst.tweezers.push_back({4, 0, 1.0, 0.0});
    SequencerSettings settings;
    settings.psi_slip = 0.3;
    auto p = plan(balance(src, cfg, 12), balance(dst, cfg, 13), {true}, cfg,
                  settings);
    auto frames = move_frames(p);
    const double psi0 = p.initial.achieved.tweezers[0].phase;
    const double dpath = angular_diff(p.final_balanced.tweezers[0].phase, psi0);
    for (int j = 1; j <= p.move_steps; ++j) {
        double expected = wrap_2pi(psi0 + dpath * j / p.move_steps + 0.3 * j);
        CHECK(angular_dist(frames[j - 1].pattern.tweezers[0].phase, expected) <
              1e-12);
    }
}

TEST_CASE("unused tweezers never change position") {
    auto cfg = cfg_of(128);
    auto initial = balance(grid(3, 3, 9), cfg, 14);
    auto final = balance(grid(2, 2, 9), cfg, 15);
    std::vector<bool> occ(9, true);
    auto p = plan(initial, final, occ, cfg);
    auto frames = ramp_off_frames(p);
    for (const auto& f : frames) {
        for (std::size_t i = 0; i < f.pattern.tweezers.size(); ++i) {
            int id = f.tweezer_ids[i];
            CHECK(f.pattern.tweezers[i].m == initial.achieved.tweezers[id].m);
            CHECK(f.pattern.tweezers[i].n == initial.achieved.tweezers[id].n);
        }
    }
}

TEST_CASE("insufficient atoms propagate the reload error") {
    auto cfg = cfg_of(128);
    auto initial = balance(grid(2, 2, 9), cfg, 16);
    auto final = balance(grid(2, 2, 9), cfg, 17);
    std::vector<bool> occ = {true, false, false, false};
    CHECK_THROWS_AS(plan(initial, final, occ, cfg),
                    holosort::assignment::InsufficientAtomsError);
}

}  // TEST_SUITE
