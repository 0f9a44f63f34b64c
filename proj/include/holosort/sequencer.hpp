#pragma once

#include <vector>

#include "holosort/assignment.hpp"
#include "holosort/optics.hpp"
#include "holosort/wgs.hpp"

namespace holosort::sequencer {

struct SequencerSettings {
    int ramp_steps = 2;
    double psi_slip = 0.0;  // programmed extra tweezer phase per move step
    // Interpolate phases along the shortest angular path (default) or the
    // raw value-space difference.
    bool shortest_path_phase = true;
};

// One atom move: indices into plan.initial.achieved / plan.final.achieved.
struct Move {
    int initial_index = 0;
    int final_index = 0;
};

struct RearrangementPlan {
    wgs::WgsResult initial;
    wgs::WgsResult final;
    std::vector<bool> occupancy;  // per initial tweezer
    assignment::AssignmentSolution assignment;
    std::vector<Move> moves;      // assignment mapped back to tweezer indices
    SequencerSettings settings;
    int move_steps = 0;           // N = longest trajectory in Fourier units
    optics::OpticalConfig cfg;

    // The balanced end state every sequence finishes on: final achieved
    // pattern, unit total power. move_frames uses this object verbatim at
    // step N so the last frame is bit-identical to its synthesis.
    const optics::TweezerPattern& final_pattern() const { return final_balanced; }
    optics::TweezerPattern final_balanced;
};

struct Frame {
    optics::PhaseMap hologram;
    optics::TweezerPattern pattern;   // what was actually encoded
    std::vector<int> tweezer_ids;     // stable id per pattern entry: the
                                      // index of the initial tweezer carried
};

struct HologramSequence {
    std::vector<Frame> frames;  // ramp_steps ramp frames, then N move frames
    int ramp_steps = 0;
    int move_steps = 0;
};

// Assign occupied initial tweezers to final sites and size the move count
// to the longest trajectory (Chebyshev, one Fourier unit per step per axis).
RearrangementPlan plan(const wgs::WgsResult& initial, const wgs::WgsResult& final,
                       const std::vector<bool>& occupancy,
                       const optics::OpticalConfig& cfg,
                       const SequencerSettings& settings = {});

// Pre-normalization amplitude schedule for ramp frame r (1-based): unused
// tweezers fade linearly to zero, retained ones ramp from initial-achieved
// to final amplitudes. Exposed separately so it can be checked exactly.
std::vector<double> ramp_amp_schedule(const RearrangementPlan& plan, int r);

// Ramp frames: positions and phases pinned at initial-achieved values,
// amplitudes per ramp_amp_schedule, pattern re-normalized per frame.
// Tweezers that reach zero amplitude drop out of the encoded pattern.
std::vector<Frame> ramp_off_frames(const RearrangementPlan& plan);

// Move frames j = 1..N: positions snap to the nearest grid point of the
// linear path, phases interpolate (plus j * psi_slip), amplitudes held at
// final values. Frame N encodes exactly the final balanced pattern when
// psi_slip = 0.
std::vector<Frame> move_frames(const RearrangementPlan& plan);

HologramSequence full_sequence(const RearrangementPlan& plan);

// Same frame geometry but every hologram synthesized by an independent WGS
// run (seeded per frame), so spot phases jump freely between frames. This is
// the uncontrolled-phase baseline the interpolated sequence is compared to.
HologramSequence wgs_sequence(const RearrangementPlan& plan,
                              const wgs::WgsSettings& wgs_settings);

}  // namespace holosort::sequencer
