#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "holosort/optics.hpp"

namespace holosort::patterns {

enum class GeometryKind { Grid, Circle, Kagome, Triangular, Custom };

struct GeometrySpec {
    GeometryKind kind = GeometryKind::Grid;
    int rows = 6;        // grid only
    int cols = 6;        // grid only
    int count = 36;      // circle/kagome/triangular: number of sites
    double spacing = 13; // nearest-neighbor spacing in Fourier units
    int center_m = 0;
    int center_n = 0;
    // custom only: explicit (m, n) list
    std::vector<std::pair<int, int>> custom_sites;
};

GeometryKind kind_from_string(const std::string& s);
std::string to_string(GeometryKind k);

// Positions rounded to the integer Fourier grid, equal amplitudes, zero
// phases (pre-balancing). Throws if sites collide after rounding.
optics::TweezerPattern generate(const GeometrySpec& spec);

// Bernoulli occupancy per site, deterministic per seed.
std::vector<bool> load_stochastic(const optics::TweezerPattern& pattern,
                                  double p_load, std::uint64_t seed);

}  // namespace holosort::patterns
