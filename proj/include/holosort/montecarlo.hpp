#pragma once

#include <cstdint>
#include <vector>

namespace holosort::montecarlo {

struct McConfig {
    double p_load = 0.45;       // Bernoulli loading probability per site
    double cycle_success = 1.0; // per-atom success R for a rearrangement cycle
    double image_survival = 1.0;// per-atom survival S of one verification image
    int n_cycles = 1;
    int n_initial = 36;         // loadable sites
    int n_target = 16;          // sites that must end up filled
    long trials = 100000;
    std::uint64_t rng_seed = 1;
    // Condition on >= n_target atoms loaded (skip-and-redraw); when false,
    // underloaded trials count as failures.
    bool postselect_loading = true;
    // Allow topping the reserve back up from the MOT between cycles.
    bool reload_between_cycles = false;
    // Later cycles only run to repair defects; when false, every cycle runs
    // (forced re-sorts, as when cycling through different geometries).
    bool stop_when_complete = true;

    void validate() const;
};

struct McReport {
    long trials = 0;
    long defect_free = 0;
    double defect_free_fraction = 0.0;
    double mean_filling = 0.0;          // mean fraction of target sites filled
    std::vector<long> missing_histogram; // count of trials by missing atoms
    double mean_cycles_used = 0.0;
    long discarded_loads = 0;           // redraws due to postselection
};

// Stochastic loading plus n_cycles of rearrangement. Per cycle, atoms newly
// placed on a target succeed with cycle_success; atoms already settled only
// face image_survival. Empty sites refill from surplus loaded atoms. Trials
// use independent derived RNG streams, so the report is deterministic for a
// given seed regardless of thread count.
McReport run(const McConfig& cfg);

struct SweepRow {
    int n_target = 0;
    int n_cycles = 0;
    double defect_free_fraction = 0.0;
};

// Grid evaluation of run() over target sizes and cycle counts.
std::vector<SweepRow> multicycle_sweep(const McConfig& base,
                                       const std::vector<int>& n_values,
                                       int max_cycles);

}  // namespace holosort::montecarlo
