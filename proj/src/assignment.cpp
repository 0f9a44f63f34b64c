#include "holosort/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_set>

namespace holosort::assignment {

std::int64_t squared_distance(const GridPos& a, const GridPos& b) {
    std::int64_t dm = a.m - b.m, dn = a.n - b.n;
    return dm * dm + dn * dn;
}

int chebyshev_distance(const GridPos& a, const GridPos& b) {
    return std::max(std::abs(a.m - b.m), std::abs(a.n - b.n));
}

namespace {

void check_problem(const AssignmentProblem& p) {
    if (p.targets.empty())
        throw std::invalid_argument("assignment: no targets");
    if (p.sources.size() < p.targets.size())
        throw InsufficientAtomsError("assignment: fewer atoms than target sites");
    auto check_distinct = [](const std::vector<GridPos>& v, const char* what) {
        std::unordered_set<std::int64_t> seen;
        for (const auto& g : v) {
            std::int64_t key = (static_cast<std::int64_t>(g.m) << 32) ^
                               static_cast<std::uint32_t>(g.n);
            if (!seen.insert(key).second)
                throw std::invalid_argument(std::string("assignment: duplicate ") + what);
        }
    };
    check_distinct(p.sources, "source position");
    check_distinct(p.targets, "target position");
}

// Index order sorted by position; makes the result a function of the
// position sets alone (permutation invariance) and fixes tie-breaking.
std::vector<int> position_order(const std::vector<GridPos>& v) {
    std::vector<int> order(v.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return std::pair(v[a].m, v[a].n) < std::pair(v[b].m, v[b].n);
    });
    return order;
}

AssignmentSolution finish(const AssignmentProblem& p,
                          std::vector<std::pair<int, int>> pairs) {
    AssignmentSolution sol;
    std::sort(pairs.begin(), pairs.end(),
              [](const auto& a, const auto& b) { return a.second < b.second; });
    sol.pairs = std::move(pairs);
    for (const auto& [si, ti] : sol.pairs) {
        sol.total_cost += squared_distance(p.sources[si], p.targets[ti]);
        sol.max_move = std::max(sol.max_move,
                                chebyshev_distance(p.sources[si], p.targets[ti]));
    }
    return sol;
}

}  // namespace

AssignmentSolution solve(const AssignmentProblem& problem) {
    check_problem(problem);
    const auto src_order = position_order(problem.sources);
    const auto tgt_order = position_order(problem.targets);
    const int nt = static_cast<int>(problem.targets.size());
    const int ns = static_cast<int>(problem.sources.size());

    auto cost = [&](int row, int col) {
        return static_cast<double>(squared_distance(
            problem.targets[tgt_order[row]], problem.sources[src_order[col]]));
    };

    // Shortest augmenting paths with dual potentials; rows = targets (all
    // assigned), columns = sources (surplus stays free). Standard JV core.
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(nt + 1, 0.0), v(ns + 1, 0.0);
    std::vector<int> col_to_row(ns + 1, 0);  // 1-based; 0 = free
    std::vector<int> way(ns + 1, 0);

    for (int row = 1; row <= nt; ++row) {
        col_to_row[0] = row;
        int j0 = 0;
        std::vector<double> minv(ns + 1, inf);
        std::vector<char> used(ns + 1, false);
        do {
            used[j0] = true;
            int i0 = col_to_row[j0], j1 = -1;
            double delta = inf;
            for (int j = 1; j <= ns; ++j) {
                if (used[j]) continue;
                double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= ns; ++j) {
                if (used[j]) {
                    u[col_to_row[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (col_to_row[j0] != 0);
        do {
            int j1 = way[j0];
            col_to_row[j0] = col_to_row[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(nt);
    for (int j = 1; j <= ns; ++j)
        if (col_to_row[j] != 0)
            pairs.emplace_back(src_order[j - 1], tgt_order[col_to_row[j] - 1]);
    return finish(problem, std::move(pairs));
}

AssignmentSolution brute_force_solve(const AssignmentProblem& problem) {
    check_problem(problem);
    if (problem.targets.size() > 8)
        throw std::invalid_argument("brute_force_solve: more than 8 targets");
    const auto src_order = position_order(problem.sources);
    const auto tgt_order = position_order(problem.targets);
    const int nt = static_cast<int>(problem.targets.size());
    const int ns = static_cast<int>(problem.sources.size());

    std::vector<int> pick(nt, -1);
    std::vector<char> used(ns, false);
    std::vector<int> best;
    std::int64_t best_cost = std::numeric_limits<std::int64_t>::max();

    // Depth-first over targets in canonical order; the first optimum found
    // is kept, which fixes tie-breaking to lowest canonical source choice.
    auto recurse = [&](auto&& self, int row, std::int64_t acc) -> void {
        if (acc >= best_cost) return;
        if (row == nt) {
            best = pick;
            best_cost = acc;
            return;
        }
        for (int col = 0; col < ns; ++col) {
            if (used[col]) continue;
            used[col] = true;
            pick[row] = col;
            self(self, row + 1,
                 acc + squared_distance(problem.targets[tgt_order[row]],
                                        problem.sources[src_order[col]]));
            used[col] = false;
        }
    };
    recurse(recurse, 0, 0);

    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(nt);
    for (int row = 0; row < nt; ++row)
        pairs.emplace_back(src_order[best[row]], tgt_order[row]);
    return finish(problem, std::move(pairs));
}

}  // namespace holosort::assignment
