#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "holosort/assignment.hpp"

using namespace holosort::assignment;

namespace {

AssignmentProblem random_problem(std::mt19937_64& rng, int max_targets) {
    std::uniform_int_distribution<int> coord(-20, 20);
    std::uniform_int_distribution<int> tgt_count(1, max_targets);
    std::uniform_int_distribution<int> extra(0, 4);
    int nt = tgt_count(rng);
    int ns = nt + extra(rng);
    auto draw = [&](int count) {
        std::vector<GridPos> v;
        while (static_cast<int>(v.size()) < count) {
            GridPos g{coord(rng), coord(rng)};
            if (std::find(v.begin(), v.end(), g) == v.end()) v.push_back(g);
        }
        return v;
    };
    AssignmentProblem p;
    p.sources = draw(ns);
    p.targets = draw(nt);
    return p;
}

// Position-level pairing, independent of index bookkeeping.
std::vector<std::pair<GridPos, GridPos>> position_pairs(
    const AssignmentProblem& p, const AssignmentSolution& s) {
    std::vector<std::pair<GridPos, GridPos>> out;
    for (auto [si, ti] : s.pairs) out.push_back({p.sources[si], p.targets[ti]});
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return std::tuple(a.first.m, a.first.n, a.second.m, a.second.n) <
               std::tuple(b.first.m, b.first.n, b.second.m, b.second.n);
    });
    return out;
}

}  // namespace

TEST_SUITE("assignment") {

TEST_CASE("identity instance costs zero") {
    AssignmentProblem p;
    p.sources = {{0, 0}, {5, 5}, {-3, 2}};
    p.targets = {{5, 5}, {0, 0}, {-3, 2}};
    auto s = solve(p);
    CHECK(s.total_cost == 0);
    CHECK(s.max_move == 0);
    CHECK(brute_force_solve(p).total_cost == 0);
}

TEST_CASE("two-atom line instance picks the non-crossing pairing") {
    AssignmentProblem p;
    p.sources = {{0, 0}, {3, 0}};
    p.targets = {{1, 0}, {2, 0}};
    auto brute = brute_force_solve(p);
    CHECK(brute.total_cost == 2);  // alternative pairing costs 8
    auto s = solve(p);
    CHECK(s.total_cost == 2);
    CHECK(position_pairs(p, s) ==
          std::vector<std::pair<GridPos, GridPos>>{{{0, 0}, {1, 0}},
                                                   {{3, 0}, {2, 0}}});
}

TEST_CASE("solver matches the exhaustive optimum on random instances") {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 300; ++i) {
        auto p = random_problem(rng, 6);
        auto fast = solve(p);
        auto brute = brute_force_solve(p);
        REQUIRE(fast.total_cost == brute.total_cost);

        // recomputed invariants
        std::int64_t cost = 0;
        int max_move = 0;
        std::vector<bool> target_seen(p.targets.size(), false);
        std::vector<bool> source_seen(p.sources.size(), false);
        for (auto [si, ti] : fast.pairs) {
            CHECK_FALSE(target_seen[ti]);
            CHECK_FALSE(source_seen[si]);
            target_seen[ti] = source_seen[si] = true;
            cost += squared_distance(p.sources[si], p.targets[ti]);
            max_move = std::max(max_move,
                                chebyshev_distance(p.sources[si], p.targets[ti]));
        }
        CHECK(std::all_of(target_seen.begin(), target_seen.end(),
                          [](bool b) { return b; }));
        CHECK(cost == fast.total_cost);
        CHECK(max_move == fast.max_move);
    }
}

TEST_CASE("surplus sources stay unassigned") {
    AssignmentProblem p;
    p.sources = {{0, 0}, {10, 10}, {1, 1}};
    p.targets = {{0, 1}};
    auto s = solve(p);
    REQUIRE(s.pairs.size() == 1);
    CHECK(p.sources[s.pairs[0].first] == GridPos{0, 0});
}

TEST_CASE("fewer atoms than targets raises the reload signal") {
    AssignmentProblem p;
    p.sources = {{0, 0}};
    p.targets = {{0, 1}, {1, 0}};
    CHECK_THROWS_AS(solve(p), InsufficientAtomsError);
}

TEST_CASE("source order does not change the chosen pairing") {
    std::mt19937_64 rng(123);
    for (int i = 0; i < 50; ++i) {
        auto p = random_problem(rng, 5);
        auto base = position_pairs(p, solve(p));
        AssignmentProblem q = p;
        std::shuffle(q.sources.begin(), q.sources.end(), rng);
        std::shuffle(q.targets.begin(), q.targets.end(), rng);
        CHECK(position_pairs(q, solve(q)) == base);
    }
}

TEST_CASE("squared cost trades total distance for shorter longest move") {
    // Linear cost prefers {(0,0)->(7,4), (6,0)->(5,0)} (total length 9.06,
    // longest Chebyshev move 7); squared cost prefers the pairing whose
    // longest move is 5.
    AssignmentProblem p;
    p.sources = {{0, 0}, {6, 0}};
    p.targets = {{5, 0}, {7, 4}};
    auto squared = solve(p);
    CHECK(squared.total_cost == 42);
    CHECK(squared.max_move == 5);

    double best_linear = 1e18;
    int linear_max_move = -1;
    int idx[2] = {0, 1};
    do {
        double len = 0.0;
        int worst = 0;
        for (int t = 0; t < 2; ++t) {
            len += std::sqrt(double(squared_distance(p.sources[idx[t]], p.targets[t])));
            worst = std::max(worst, chebyshev_distance(p.sources[idx[t]], p.targets[t]));
        }
        if (len < best_linear) {
            best_linear = len;
            linear_max_move = worst;
        }
    } while (std::next_permutation(idx, idx + 2));
    CHECK(linear_max_move == 7);
    CHECK(squared.max_move < linear_max_move);
}

TEST_CASE("deterministic across repeat runs") {
    std::mt19937_64 rng(5);
    auto p = random_problem(rng, 6);
    auto a = solve(p);
    auto b = solve(p);
    CHECK(a.pairs == b.pairs);
    CHECK(a.total_cost == b.total_cost);
}

TEST_CASE("brute force rejects oversized instances") {
    AssignmentProblem p;
    for (int i = 0; i < 9; ++i) {
        p.sources.push_back({i, 0});
        p.targets.push_back({i, 1});
    }
    CHECK_THROWS_AS(brute_force_solve(p), std::invalid_argument);
}

}  // TEST_SUITE
