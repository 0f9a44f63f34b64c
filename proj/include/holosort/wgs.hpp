#pragma once

#include <cstdint>

#include "holosort/optics.hpp"

namespace holosort::wgs {

struct WgsSettings {
    int max_iters = 100;
    // Relative trap-depth deviation to reach: (max I - min I) / mean I over spots.
    double uniformity_target = 0.01;
    double weight_floor = 1e-6;
    std::uint64_t rng_seed = 1;
    // Weight update w <- w * (<amp>/amp)^exponent; 0 freezes the weights
    // (plain Gerchberg-Saxton).
    double weight_exponent = 1.0;
};

struct WgsResult {
    optics::PhaseMap hologram;
    // Amps/phases sampled from re-propagating `hologram`; amps normalized to
    // unit total power.
    optics::TweezerPattern achieved;
    double uniformity = 0.0;
    int iters_used = 0;
    bool converged = false;
};

// Weighted Gerchberg-Saxton synthesis of a phase-only hologram whose focal
// spots match `target` positions with intensity-balanced amplitudes. Spot
// phases float freely during the iteration; the realized values are reported
// in `achieved`. Non-convergence within max_iters is not an error: the best
// final iterate is returned with converged=false.
WgsResult run_wgs(const optics::TweezerPattern& target,
                  const optics::OpticalConfig& cfg,
                  const WgsSettings& settings);

}  // namespace holosort::wgs
