#pragma once

#include <string>
#include <vector>

#include "holosort/optics.hpp"

namespace holosort::bench {

enum class TransferEmulation { BufferCopy, FixedDelay };

struct BenchConfig {
    std::vector<int> n_tw_values;   // default squares 3^2 .. 49^2
    int steps = 10;                 // move steps per repetition
    int repetitions = 100;          // paper-scale runs use 10000
    double display_ms = 1.772;      // emulated SLM refresh
    double transfer_ms = 0.821;     // used by FixedDelay emulation
    TransferEmulation transfer = TransferEmulation::FixedDelay;
    bool pipelined = false;
    int grid = 512;                 // hologram side length
    std::uint64_t rng_seed = 1;

    BenchConfig();
    void validate() const;
};

struct StageStats {
    double mean_ms = 0.0;
    double sdev_ms = 0.0;
};

struct BenchRow {
    int n_tw = 0;
    StageStats update;    // next positions/phases arithmetic
    StageStats compute;   // spectrum fill + transform + phase extraction
    StageStats transfer;  // buffer copy or fixed delay
    StageStats display;   // emulated refresh
    StageStats total;     // per-hologram wall time
    std::string mode;     // "serialized" | "pipelined"
};

// Per-hologram stage timing for each tweezer count. Serialized mode measures
// the stages of one frame back to back; pipelined mode overlaps the display
// of frame i with the compute path of frame i+1 using a one-slot queue
// between a producer and a consumer thread.
std::vector<BenchRow> run_bench(const BenchConfig& cfg);

}  // namespace holosort::bench
