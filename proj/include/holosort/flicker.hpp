#pragma once

#include <vector>

#include "holosort/optics.hpp"
#include "holosort/sequencer.hpp"

namespace holosort::flicker {

// How the field behaves while the SLM switches between two holograms.
// ValuePathLinear: each pixel's displayed phase moves linearly in value space
// [0, 2*pi) from old to new (no wraparound shortcut), re-propagated per
// substep. CrossFade: field = (1-tau)*old + tau*new; cheap and analytically
// tractable (two propagations per transition).
enum class TransientMode { ValuePathLinear, CrossFade };

struct TransientModel {
    int substeps = 16;  // tau samples at s/substeps, s = 0..substeps
    TransientMode mode = TransientMode::ValuePathLinear;
};

// Probe position pair for one tweezer across a transition.
struct Probe {
    int id = 0;
    int m_old = 0, n_old = 0;
    int m_new = 0, n_new = 0;
};

struct TraceSample {
    int transition = 0;  // index of the (a -> b) frame pair
    int probe_id = 0;
    double tau = 0.0;
    double rel_intensity = 0.0;  // normalized to the settled frame-b value
    double phase = 0.0;          // at the brightest probed cell
};

struct SettledPhase {
    int frame = 0;
    int probe_id = 0;
    double phase = 0.0;  // at the tweezer's annotated cell in the settled field
};

struct FlickerTrace {
    std::vector<TraceSample> samples;
    std::vector<SettledPhase> settled;  // per-frame spot phases (settled holograms)
    // Per probe id: min over tau and transitions of the relative intensity.
    std::vector<std::pair<int, double>> min_rel_intensity_per_probe;

    double min_rel_intensity() const;
};

// Transient between two holograms, probing each tweezer with the maximum
// intensity over 3x3 neighborhoods around its old, interpolated, and new
// positions. Intensities are normalized per probe to the settled frame-b
// value.
FlickerTrace simulate_transition(const optics::PhaseMap& holo_a,
                                 const optics::PhaseMap& holo_b,
                                 const std::vector<Probe>& probes,
                                 const TransientModel& model,
                                 const optics::OpticalConfig& cfg);

// Flicker across all consecutive frame pairs of a sequence; probes follow
// each tweezer's per-frame annotated position. Sequences shorter than two
// frames yield settled values only.
FlickerTrace sequence_flicker(const sequencer::HologramSequence& seq,
                              const TransientModel& model,
                              const optics::OpticalConfig& cfg);

struct SlipScanRow {
    double dpsi = 0.0;
    double min_intensity = 0.0;    // mean over tweezers of per-tweezer minima
    double survival_proxy = 0.0;   // fraction of tweezers above threshold
};

struct SlipScanSettings {
    int steps = 5;                   // Fourier units out, then back
    double survival_threshold = 0.3; // lost below this relative intensity
    TransientModel model{16, TransientMode::CrossFade};
};

// Frames of one out-and-back run: `steps` unit moves along -m with a
// programmed slip of dpsi per step, then back with the slip sign flipped,
// so the programmed phase returns to its start on the last frame.
sequencer::HologramSequence scan_sequence(const optics::TweezerPattern& array,
                                          double dpsi, int steps,
                                          const optics::OpticalConfig& cfg);

// Out-and-back translation of the whole array per scan_sequence for each
// dpsi. The outbound direction is -m, the direction a positive unit grating
// moves a spot. With a computational-center displacement d the effective
// slip per step becomes dpsi + 2*pi*d/M and the scan curve translates
// accordingly.
//
// Interference between the old and new spot of a move needs spots wider
// than one cell, so run this with Gaussian illumination; under uniform
// illumination spots are single-cell deltas and the curve is flat.
std::vector<SlipScanRow> phase_slip_scan(const optics::TweezerPattern& array,
                                         const std::vector<double>& psi_values,
                                         int d,
                                         const SlipScanSettings& settings,
                                         const optics::OpticalConfig& cfg);

}  // namespace holosort::flicker
