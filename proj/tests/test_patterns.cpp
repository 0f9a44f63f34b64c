#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "holosort/patterns.hpp"

using namespace holosort;
using namespace holosort::patterns;
using holosort::optics::TweezerPattern;

namespace {

double nearest_neighbor(const TweezerPattern& p, std::size_t i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < p.size(); ++j) {
        if (i == j) continue;
        double d = std::hypot(double(p.tweezers[i].m - p.tweezers[j].m),
                              double(p.tweezers[i].n - p.tweezers[j].n));
        best = std::min(best, d);
    }
    return best;
}

void check_distinct(const TweezerPattern& p) {
    std::set<std::pair<int, int>> seen;
    for (const auto& t : p.tweezers) CHECK(seen.insert({t.m, t.n}).second);
}

}  // namespace

TEST_SUITE("patterns") {

TEST_CASE("6x6 grid at spacing 13") {
    GeometrySpec spec;
    spec.rows = spec.cols = 6;
    spec.spacing = 13;
    auto p = generate(spec);
    CHECK(p.size() == 36);
    check_distinct(p);
    for (std::size_t i = 0; i < p.size(); ++i) {
        double nn = nearest_neighbor(p, i);
        CHECK(nn >= 12.0);
        CHECK(nn <= 14.0);
    }
    optics::OpticalConfig cfg;
    // physical spacing: 13 Fourier units ~ 5.85 um at 0.45 um per unit
    CHECK(13 * optics::fourier_unit(cfg) == doctest::Approx(5.85e-6).epsilon(1e-3));
}

TEST_CASE("circle of 16 sits on the polygon radius") {
    GeometrySpec spec;
    spec.kind = GeometryKind::Circle;
    spec.count = 16;
    spec.spacing = 13;
    auto p = generate(spec);
    CHECK(p.size() == 16);
    check_distinct(p);
    double expected_r = 13.0 / (2.0 * std::sin(std::numbers::pi / 16));
    for (const auto& t : p.tweezers) {
        double r = std::hypot(double(t.m), double(t.n));
        CHECK(std::abs(r - expected_r) <= 1.0);  // rounding to the grid
    }
}

TEST_CASE("triangular patch spacing survives rounding") {
    GeometrySpec spec;
    spec.kind = GeometryKind::Triangular;
    spec.count = 16;
    spec.spacing = 13;
    auto p = generate(spec);
    CHECK(p.size() == 16);
    check_distinct(p);
    for (std::size_t i = 0; i < p.size(); ++i) {
        double nn = nearest_neighbor(p, i);
        CHECK(nn >= 12.0);
        CHECK(nn <= 14.0);
    }
}

TEST_CASE("kagome patch keeps nearest-neighbor distance") {
    GeometrySpec spec;
    spec.kind = GeometryKind::Kagome;
    spec.count = 16;
    spec.spacing = 13;
    auto p = generate(spec);
    CHECK(p.size() == 16);
    check_distinct(p);
    for (std::size_t i = 0; i < p.size(); ++i) {
        double nn = nearest_neighbor(p, i);
        CHECK(nn >= 12.0);
        CHECK(nn <= 14.0);
    }
}

TEST_CASE("center offset moves every site") {
    GeometrySpec spec;
    spec.rows = spec.cols = 2;
    spec.spacing = 10;
    spec.center_m = 7;
    spec.center_n = -4;
    auto p = generate(spec);
    double mean_m = 0, mean_n = 0;
    for (const auto& t : p.tweezers) {
        mean_m += t.m;
        mean_n += t.n;
    }
    CHECK(mean_m / 4 == doctest::Approx(7.0));
    CHECK(mean_n / 4 == doctest::Approx(-4.0));
}

TEST_CASE("colliding sites after rounding raise") {
    GeometrySpec spec;
    spec.kind = GeometryKind::Custom;
    spec.custom_sites = {{0, 0}, {0, 0}};
    CHECK_THROWS_AS(generate(spec), std::invalid_argument);

    GeometrySpec bad;
    bad.spacing = 1.0;
    CHECK_THROWS_AS(generate(bad), std::invalid_argument);
}

TEST_CASE("stochastic loading") {
    GeometrySpec spec;
    spec.rows = spec.cols = 6;
    spec.spacing = 13;
    auto p = generate(spec);

    auto all = load_stochastic(p, 1.0, 1);
    CHECK(std::count(all.begin(), all.end(), true) == 36);
    auto none = load_stochastic(p, 0.0, 1);
    CHECK(std::count(none.begin(), none.end(), true) == 0);

    CHECK(load_stochastic(p, 0.45, 77) == load_stochastic(p, 0.45, 77));

    long total = 0;
    const int seeds = 10000;
    for (int s = 0; s < seeds; ++s) {
        auto occ = load_stochastic(p, 0.45, 2000 + s);
        total += std::count(occ.begin(), occ.end(), true);
    }
    double mean = double(total) / seeds;  // binomial mean 36 * 0.45 = 16.2
    CHECK(mean == doctest::Approx(16.2).epsilon(0.0062));
}

}  // TEST_SUITE
