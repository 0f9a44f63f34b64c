#include "holosort/patterns.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <stdexcept>

namespace holosort::patterns {

using optics::TweezerPattern;
using optics::TweezerSpec;

GeometryKind kind_from_string(const std::string& s) {
    if (s == "grid") return GeometryKind::Grid;
    if (s == "circle") return GeometryKind::Circle;
    if (s == "kagome") return GeometryKind::Kagome;
    if (s == "triangular") return GeometryKind::Triangular;
    if (s == "custom") return GeometryKind::Custom;
    throw std::invalid_argument("unknown geometry kind: " + s);
}

std::string to_string(GeometryKind k) {
    switch (k) {
        case GeometryKind::Grid: return "grid";
        case GeometryKind::Circle: return "circle";
        case GeometryKind::Kagome: return "kagome";
        case GeometryKind::Triangular: return "triangular";
        case GeometryKind::Custom: return "custom";
    }
    return "?";
}

namespace {

struct Site {
    double x, y;
};

// `count` candidate sites nearest the origin, ties broken lexicographically,
// from a generator of lattice sites.
std::vector<Site> nearest_cutout(std::vector<Site> candidates, int count) {
    std::sort(candidates.begin(), candidates.end(), [](const Site& a, const Site& b) {
        double ra = a.x * a.x + a.y * a.y, rb = b.x * b.x + b.y * b.y;
        if (ra != rb) return ra < rb;
        return std::pair(a.x, a.y) < std::pair(b.x, b.y);
    });
    candidates.resize(count);
    return candidates;
}

std::vector<Site> lattice_sites(const GeometrySpec& spec) {
    const double s = spec.spacing;
    std::vector<Site> sites;
    switch (spec.kind) {
        case GeometryKind::Grid: {
            for (int r = 0; r < spec.rows; ++r)
                for (int c = 0; c < spec.cols; ++c)
                    sites.push_back({(c - (spec.cols - 1) / 2.0) * s,
                                     (r - (spec.rows - 1) / 2.0) * s});
            return sites;
        }
        case GeometryKind::Circle: {
            // neighbor chord length s on an n-gon
            double radius = s / (2.0 * std::sin(std::numbers::pi / spec.count));
            for (int i = 0; i < spec.count; ++i) {
                double a = 2.0 * std::numbers::pi * i / spec.count;
                sites.push_back({radius * std::cos(a), radius * std::sin(a)});
            }
            return sites;
        }
        case GeometryKind::Triangular: {
            int half = static_cast<int>(std::ceil(std::sqrt(spec.count))) + 2;
            for (int r = -half; r <= half; ++r)
                for (int c = -half; c <= half; ++c)
                    sites.push_back({(c + 0.5 * (r & 1)) * s,
                                     r * s * std::numbers::sqrt3 / 2.0});
            return nearest_cutout(std::move(sites), spec.count);
        }
        case GeometryKind::Kagome: {
            // corner-sharing triangles: triangular Bravais lattice with a
            // three-site basis, nearest-neighbor distance s
            int half = static_cast<int>(std::ceil(std::sqrt(spec.count))) + 2;
            const double ax = 2.0 * s, bx = s, by = s * std::numbers::sqrt3;
            const Site basis[3] = {{0, 0}, {s, 0}, {s / 2.0, s * std::numbers::sqrt3 / 2.0}};
            for (int r = -half; r <= half; ++r)
                for (int c = -half; c <= half; ++c)
                    for (const auto& b : basis)
                        sites.push_back({c * ax + r * bx + b.x, r * by + b.y});
            return nearest_cutout(std::move(sites), spec.count);
        }
        case GeometryKind::Custom: {
            for (auto [m, n] : spec.custom_sites)
                sites.push_back({static_cast<double>(m), static_cast<double>(n)});
            return sites;
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace

TweezerPattern generate(const GeometrySpec& spec) {
    if (spec.kind == GeometryKind::Grid) {
        if (spec.rows < 1 || spec.cols < 1)
            throw std::invalid_argument("generate: grid needs rows, cols >= 1");
    } else if (spec.kind != GeometryKind::Custom && spec.count < 1) {
        throw std::invalid_argument("generate: count must be >= 1");
    }
    if (spec.kind != GeometryKind::Custom && spec.spacing < 2)
        throw std::invalid_argument("generate: spacing must be >= 2 Fourier units");

    TweezerPattern pattern;
    std::set<std::pair<int, int>> seen;
    for (const auto& site : lattice_sites(spec)) {
        int m = static_cast<int>(std::lround(site.x)) + spec.center_m;
        int n = static_cast<int>(std::lround(site.y)) + spec.center_n;
        if (!seen.insert({m, n}).second)
            throw std::invalid_argument("generate: sites collide after rounding");
        pattern.tweezers.push_back({m, n, 1.0, 0.0});
    }
    return pattern;
}

std::vector<bool> load_stochastic(const TweezerPattern& pattern, double p_load,
                                  std::uint64_t seed) {
    if (p_load < 0.0 || p_load > 1.0)
        throw std::invalid_argument("load_stochastic: p_load must be in [0, 1]");
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution flip(p_load);
    std::vector<bool> occ(pattern.size());
    for (std::size_t i = 0; i < occ.size(); ++i) occ[i] = flip(rng);
    return occ;
}

}  // namespace holosort::patterns
