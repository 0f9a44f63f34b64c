#include "holosort/montecarlo.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "holosort/util.hpp"

namespace holosort::montecarlo {

void McConfig::validate() const {
    auto prob = [](double p) { return p >= 0.0 && p <= 1.0; };
    if (!prob(p_load) || !prob(cycle_success) || !prob(image_survival))
        throw std::invalid_argument("McConfig: probabilities must be in [0, 1]");
    if (n_target < 1 || n_initial < n_target)
        throw std::invalid_argument("McConfig: need 1 <= n_target <= n_initial");
    if (trials < 1 || n_cycles < 1)
        throw std::invalid_argument("McConfig: trials and n_cycles must be >= 1");
}

namespace {

struct TrialOutcome {
    int missing = 0;
    int cycles_used = 0;
    long redraws = 0;
    bool load_failed = false;
};

TrialOutcome run_trial(const McConfig& cfg, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution load(cfg.p_load);
    std::bernoulli_distribution move_ok(cfg.cycle_success);
    std::bernoulli_distribution image_ok(cfg.image_survival);

    TrialOutcome out;
    int loaded = 0;
    for (;;) {
        loaded = 0;
        for (int i = 0; i < cfg.n_initial; ++i)
            if (load(rng)) ++loaded;
        if (loaded >= cfg.n_target || !cfg.postselect_loading) break;
        ++out.redraws;
    }
    if (loaded < cfg.n_target) {
        out.missing = cfg.n_target - loaded;
        out.load_failed = true;
        return out;
    }

    // settled: atoms sitting on a target site; unplaced: loaded atoms held
    // aside as reserve. Movers run the full cycle (success then image);
    // everyone else only has to survive the verification image.
    int settled = 0;
    int unplaced = loaded;
    for (int cycle = 1; cycle <= cfg.n_cycles; ++cycle) {
        out.cycles_used = cycle;
        int keep = 0;
        for (int i = 0; i < settled; ++i)
            if (image_ok(rng)) ++keep;
        int gaps = cfg.n_target - keep;
        int movers = std::min(gaps, unplaced);
        unplaced -= movers;
        int arrivals = 0;
        for (int i = 0; i < movers; ++i)
            if (move_ok(rng) && image_ok(rng)) ++arrivals;
        int reserve_kept = 0;
        for (int i = 0; i < unplaced; ++i)
            if (image_ok(rng)) ++reserve_kept;
        unplaced = reserve_kept;
        settled = keep + arrivals;
        if (cfg.reload_between_cycles && cycle < cfg.n_cycles) {
            int free_sites = cfg.n_initial - cfg.n_target - unplaced;
            for (int i = 0; i < free_sites; ++i)
                if (load(rng)) ++unplaced;
        }
        if (cfg.stop_when_complete && settled == cfg.n_target) break;
    }
    out.missing = cfg.n_target - settled;
    return out;
}

}  // namespace

McReport run(const McConfig& cfg) {
    cfg.validate();
    const std::size_t n = static_cast<std::size_t>(cfg.trials);
    std::vector<TrialOutcome> outcomes(n);
    parallel_for(n, [&](std::size_t t) {
        outcomes[t] = run_trial(cfg, derive_seed(cfg.rng_seed, t));
    });

    McReport rep;
    rep.trials = cfg.trials;
    rep.missing_histogram.assign(cfg.n_target + 1, 0);
    double filled_sum = 0.0, cycles_sum = 0.0;
    for (const auto& o : outcomes) {
        if (o.missing == 0) ++rep.defect_free;
        rep.missing_histogram[std::min<int>(o.missing, cfg.n_target)] += 1;
        filled_sum += static_cast<double>(cfg.n_target - o.missing) / cfg.n_target;
        cycles_sum += o.cycles_used;
        rep.discarded_loads += o.redraws;
    }
    rep.defect_free_fraction = static_cast<double>(rep.defect_free) / cfg.trials;
    rep.mean_filling = filled_sum / cfg.trials;
    rep.mean_cycles_used = cycles_sum / cfg.trials;
    return rep;
}

std::vector<SweepRow> multicycle_sweep(const McConfig& base,
                                       const std::vector<int>& n_values,
                                       int max_cycles) {
    if (max_cycles < 1)
        throw std::invalid_argument("multicycle_sweep: max_cycles must be >= 1");
    std::vector<SweepRow> rows;
    for (int n_target : n_values) {
        for (int cycles = 1; cycles <= max_cycles; ++cycles) {
            McConfig cfg = base;
            cfg.n_target = n_target;
            cfg.n_initial = std::max(base.n_initial, n_target);
            cfg.n_cycles = cycles;
            McReport rep = run(cfg);
            rows.push_back({n_target, cycles, rep.defect_free_fraction});
        }
    }
    return rows;
}

}  // namespace holosort::montecarlo
