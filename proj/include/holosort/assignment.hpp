#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace holosort::assignment {

struct GridPos {
    int m = 0;
    int n = 0;
    bool operator==(const GridPos&) const = default;
};

struct AssignmentProblem {
    std::vector<GridPos> sources;  // occupied positions
    std::vector<GridPos> targets;  // wanted positions; |sources| >= |targets|
};

struct AssignmentSolution {
    // (source index, target index), one entry per target, sorted by target index.
    std::vector<std::pair<int, int>> pairs;
    std::int64_t total_cost = 0;  // sum of squared Euclidean distances
    int max_move = 0;             // max Chebyshev distance over pairs
};

// Raised when there are fewer atoms than target sites; the caller reloads.
struct InsufficientAtomsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Minimum-cost assignment of every target to a distinct source under the
// squared-distance cost (Jonker-Volgenant shortest augmenting paths).
// Surplus sources stay unassigned; those are the tweezers to extinguish.
// The solution depends only on the position sets, not on input order.
AssignmentSolution solve(const AssignmentProblem& problem);

// Exhaustive optimum over all injections targets -> sources; test oracle.
// Capped at |targets| <= 8.
AssignmentSolution brute_force_solve(const AssignmentProblem& problem);

std::int64_t squared_distance(const GridPos& a, const GridPos& b);
int chebyshev_distance(const GridPos& a, const GridPos& b);

}  // namespace holosort::assignment
