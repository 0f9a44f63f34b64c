#include "holosort/sequencer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "holosort/util.hpp"

namespace holosort::sequencer {

using optics::PhaseMap;
using optics::TweezerPattern;
using optics::TweezerSpec;

RearrangementPlan plan(const wgs::WgsResult& initial, const wgs::WgsResult& final,
                       const std::vector<bool>& occupancy,
                       const optics::OpticalConfig& cfg,
                       const SequencerSettings& settings) {
    if (occupancy.size() != initial.achieved.size())
        throw std::invalid_argument("plan: occupancy size does not match initial pattern");
    if (settings.ramp_steps < 1)
        throw std::invalid_argument("plan: ramp_steps must be >= 1");

    RearrangementPlan p;
    p.initial = initial;
    p.final = final;
    p.occupancy = occupancy;
    p.settings = settings;
    p.cfg = cfg;

    assignment::AssignmentProblem prob;
    std::vector<int> occupied_indices;
    for (std::size_t i = 0; i < occupancy.size(); ++i) {
        if (!occupancy[i]) continue;
        occupied_indices.push_back(static_cast<int>(i));
        const auto& t = initial.achieved.tweezers[i];
        prob.sources.push_back({t.m, t.n});
    }
    for (const auto& t : final.achieved.tweezers)
        prob.targets.push_back({t.m, t.n});

    p.assignment = assignment::solve(prob);
    p.move_steps = p.assignment.max_move;
    // Pairs arrive sorted by target index, so moves[i].final_index == i and
    // move frames share the final pattern's tweezer order.
    for (const auto& [si, ti] : p.assignment.pairs)
        p.moves.push_back({occupied_indices[si], ti});

    p.final_balanced = final.achieved;
    p.final_balanced.normalize();
    return p;
}

std::vector<double> ramp_amp_schedule(const RearrangementPlan& plan, int r) {
    const int R = plan.settings.ramp_steps;
    if (r < 1 || r > R)
        throw std::out_of_range("ramp_amp_schedule: frame index out of range");
    const double tau = static_cast<double>(r) / R;

    std::vector<int> move_of(plan.initial.achieved.size(), -1);
    for (std::size_t i = 0; i < plan.moves.size(); ++i)
        move_of[plan.moves[i].initial_index] = static_cast<int>(i);

    std::vector<double> amps(plan.initial.achieved.size());
    for (std::size_t i = 0; i < amps.size(); ++i) {
        double a0 = plan.initial.achieved.tweezers[i].amp;
        if (move_of[i] >= 0) {
            double a1 = plan.final_balanced.tweezers[plan.moves[move_of[i]].final_index].amp;
            amps[i] = a0 + tau * (a1 - a0);
        } else {
            amps[i] = a0 * (1.0 - tau);
        }
    }
    return amps;
}

std::vector<Frame> ramp_off_frames(const RearrangementPlan& plan) {
    std::vector<Frame> frames(plan.settings.ramp_steps);
    parallel_for(frames.size(), [&](std::size_t f) {
        int r = static_cast<int>(f) + 1;
        auto amps = ramp_amp_schedule(plan, r);
        TweezerPattern pat;
        std::vector<int> ids;
        for (std::size_t i = 0; i < amps.size(); ++i) {
            if (amps[i] <= 0.0) continue;
            const auto& t = plan.initial.achieved.tweezers[i];
            pat.tweezers.push_back({t.m, t.n, amps[i], t.phase});
            ids.push_back(static_cast<int>(i));
        }
        pat.normalize();
        frames[f].hologram = optics::pattern_to_hologram(pat, plan.cfg);
        frames[f].pattern = std::move(pat);
        frames[f].tweezer_ids = std::move(ids);
    });
    return frames;
}

namespace {

TweezerPattern move_pattern(const RearrangementPlan& plan, int j) {
    const int N = plan.move_steps;
    const double tau = static_cast<double>(j) / N;
    // The final move frame must reuse the balanced end pattern verbatim so
    // its hologram is bit-identical to a direct synthesis of that pattern.
    if (j == N && plan.settings.psi_slip == 0.0) return plan.final_pattern();

    TweezerPattern pat;
    pat.normalized = plan.final_balanced.normalized;
    for (const auto& mv : plan.moves) {
        const auto& s = plan.initial.achieved.tweezers[mv.initial_index];
        const auto& t = plan.final_balanced.tweezers[mv.final_index];
        int m = static_cast<int>(std::lround(s.m + tau * (t.m - s.m)));
        int n = static_cast<int>(std::lround(s.n + tau * (t.n - s.n)));
        double dpath = plan.settings.shortest_path_phase
                           ? angular_diff(t.phase, s.phase)
                           : t.phase - s.phase;
        double phase = wrap_2pi(s.phase + tau * dpath + j * plan.settings.psi_slip);
        pat.tweezers.push_back({m, n, t.amp, phase});
    }
    return pat;
}

}  // namespace

std::vector<Frame> move_frames(const RearrangementPlan& plan) {
    if (plan.move_steps < 1)
        throw std::invalid_argument("move_frames: plan has no moves");
    std::vector<Frame> frames(plan.move_steps);
    std::vector<int> ids;
    ids.reserve(plan.moves.size());
    for (const auto& mv : plan.moves) ids.push_back(mv.initial_index);
    parallel_for(frames.size(), [&](std::size_t f) {
        TweezerPattern pat = move_pattern(plan, static_cast<int>(f) + 1);
        frames[f].hologram = optics::pattern_to_hologram(pat, plan.cfg);
        frames[f].pattern = std::move(pat);
        frames[f].tweezer_ids = ids;
    });
    return frames;
}

HologramSequence full_sequence(const RearrangementPlan& plan) {
    HologramSequence seq;
    seq.ramp_steps = plan.settings.ramp_steps;
    seq.move_steps = plan.move_steps;
    seq.frames = ramp_off_frames(plan);
    if (plan.move_steps >= 1) {
        auto moves = move_frames(plan);
        seq.frames.insert(seq.frames.end(), std::make_move_iterator(moves.begin()),
                          std::make_move_iterator(moves.end()));
    }
    return seq;
}

HologramSequence wgs_sequence(const RearrangementPlan& plan,
                              const wgs::WgsSettings& wgs_settings) {
    HologramSequence seq = full_sequence(plan);
    parallel_for(seq.frames.size(), [&](std::size_t f) {
        // Re-synthesize each frame from positions/amplitudes only; phases
        // come out of an independently seeded WGS run per frame. Spots that
        // land on the same cell mid-move are merged by power.
        TweezerPattern target;
        std::vector<int> ids;
        const auto& src = seq.frames[f];
        for (std::size_t i = 0; i < src.pattern.tweezers.size(); ++i) {
            const auto& t = src.pattern.tweezers[i];
            auto match = std::find_if(target.tweezers.begin(), target.tweezers.end(),
                                      [&](const TweezerSpec& u) {
                                          return u.m == t.m && u.n == t.n;
                                      });
            if (match == target.tweezers.end()) {
                target.tweezers.push_back({t.m, t.n, t.amp, 0.0});
                ids.push_back(src.tweezer_ids[i]);
            } else {
                match->amp = std::hypot(match->amp, t.amp);
            }
        }
        wgs::WgsSettings ws = wgs_settings;
        ws.rng_seed = derive_seed(wgs_settings.rng_seed, f);
        auto result = wgs::run_wgs(target, plan.cfg, ws);
        seq.frames[f].hologram = std::move(result.hologram);
        seq.frames[f].pattern = std::move(result.achieved);
        seq.frames[f].tweezer_ids = std::move(ids);
    });
    return seq;
}

}  // namespace holosort::sequencer
