#include "holosort/bench.hpp"

#include <chrono>
#include <cmath>
#include <condition_variable>
#include <cstring>
#include <mutex>
#include <optional>
#include <random>
#include <stdexcept>
#include <thread>

#include "holosort/fft.hpp"
#include "holosort/util.hpp"

namespace holosort::bench {

namespace {

using Clock = std::chrono::steady_clock;

double ms_between(Clock::time_point a, Clock::time_point b) {
    return std::chrono::duration<double, std::milli>(b - a).count();
}

// Coarse sleep plus a spin tail. Kernel sleep granularity can exceed a
// millisecond here, so anything under the guard is pure spin.
void precise_wait(double ms) {
    constexpr auto guard = std::chrono::milliseconds(2);
    auto deadline = Clock::now() + std::chrono::duration<double, std::milli>(ms);
    if (deadline - Clock::now() > guard)
        std::this_thread::sleep_until(deadline - guard);
    while (Clock::now() < deadline) {
    }
}

StageStats stats_of(const std::vector<double>& xs) {
    StageStats s;
    for (double x : xs) s.mean_ms += x;
    s.mean_ms /= xs.size();
    double var = 0.0;
    for (double x : xs) var += (x - s.mean_ms) * (x - s.mean_ms);
    s.sdev_ms = xs.size() > 1 ? std::sqrt(var / (xs.size() - 1)) : 0.0;
    return s;
}

// One tweezer in flight: interpolation endpoints plus the per-step state the
// update stage recomputes.
struct MovingTweezer {
    double m0, n0, m1, n1;
    double phase0, dphase;
    double amp;
    int m = 0, n = 0;
    double phase = 0.0;
};

struct FrameWorkspace {
    int grid;
    std::vector<MovingTweezer> tweezers;
    std::vector<std::complex<double>> spectrum;
    std::vector<std::complex<double>> slm;
    std::vector<double> hologram;
    std::vector<std::uint8_t> staging;  // transfer target for BufferCopy

    FrameWorkspace(int grid_, int n_tw, std::uint64_t seed) : grid(grid_) {
        std::mt19937_64 rng(seed);
        int side = static_cast<int>(std::lround(std::sqrt(double(n_tw))));
        int spacing = std::max(2, (grid / 2 - 4) / std::max(side, 1));
        std::uniform_real_distribution<double> uphase(0.0, two_pi);
        for (int r = 0; r < side; ++r) {
            for (int c = 0; c < side; ++c) {
                MovingTweezer t;
                t.m0 = (c - (side - 1) / 2.0) * spacing;
                t.n0 = (r - (side - 1) / 2.0) * spacing;
                t.m1 = t.m0 + 8;
                t.n1 = t.n0 + 8;
                t.phase0 = uphase(rng);
                t.dphase = uphase(rng) - std::numbers::pi;
                t.amp = 1.0;
                tweezers.push_back(t);
            }
        }
        std::size_t cells = static_cast<std::size_t>(grid) * grid;
        spectrum.resize(cells);
        slm.resize(cells);
        hologram.resize(cells);
        staging.resize(cells);
    }

    // Stage 1: next positions and phases; linear in the tweezer count.
    void update(int step, int total_steps) {
        double tau = static_cast<double>(step) / total_steps;
        for (auto& t : tweezers) {
            t.m = static_cast<int>(std::lround(t.m0 + tau * (t.m1 - t.m0)));
            t.n = static_cast<int>(std::lround(t.n0 + tau * (t.n1 - t.n0)));
            t.phase = wrap_2pi(t.phase0 + tau * t.dphase);
        }
    }

    // Stage 2: spectrum fill, transform, phase extraction.
    void compute() {
        std::fill(spectrum.begin(), spectrum.end(), std::complex<double>(0, 0));
        for (const auto& t : tweezers) {
            std::size_t i = static_cast<std::size_t>(t.n + grid / 2) * grid +
                            (t.m + grid / 2);
            spectrum[i] += std::polar(t.amp, t.phase);
        }
        fft::centered_dft(spectrum.data(), slm.data(), grid, grid,
                          fft::Sign::Negative);
        for (std::size_t i = 0; i < slm.size(); ++i)
            hologram[i] = wrap_2pi(std::arg(slm[i]));
    }

    // Stage 3: hand the 8-bit frame to the "display" side.
    void transfer(const BenchConfig& cfg) {
        if (cfg.transfer == TransferEmulation::FixedDelay) {
            precise_wait(cfg.transfer_ms);
            return;
        }
        for (std::size_t i = 0; i < hologram.size(); ++i)
            staging[i] = static_cast<std::uint8_t>(
                std::lround(hologram[i] * 256.0 / two_pi)) &
                0xff;
    }
};

struct FrameTimes {
    double update = 0, compute = 0, transfer = 0, display = 0, total = 0;
};

FrameTimes time_one_frame(FrameWorkspace& ws, int step, const BenchConfig& cfg) {
    FrameTimes ft;
    auto t0 = Clock::now();
    ws.update(step, cfg.steps);
    auto t1 = Clock::now();
    ws.compute();
    auto t2 = Clock::now();
    ws.transfer(cfg);
    auto t3 = Clock::now();
    precise_wait(cfg.display_ms);
    auto t4 = Clock::now();
    ft.update = ms_between(t0, t1);
    ft.compute = ms_between(t1, t2);
    ft.transfer = ms_between(t2, t3);
    ft.display = ms_between(t3, t4);
    ft.total = ms_between(t0, t4);
    return ft;
}

// Frames interleave the tweezer counts and alternate sweep direction, so
// machine noise spreads evenly instead of biasing one count.
std::vector<std::vector<FrameTimes>> run_serialized(const BenchConfig& cfg) {
    std::vector<FrameWorkspace> workspaces;
    for (int n_tw : cfg.n_tw_values)
        workspaces.emplace_back(cfg.grid, n_tw, cfg.rng_seed);
    for (auto& ws : workspaces) {  // warmup: touch buffers, build FFT plans
        ws.update(1, cfg.steps);
        ws.compute();
    }
    std::vector<std::vector<FrameTimes>> all(workspaces.size());
    for (int frame = 0; frame < cfg.repetitions * cfg.steps; ++frame) {
        int step = frame % cfg.steps + 1;
        for (std::size_t i = 0; i < workspaces.size(); ++i) {
            std::size_t w = (frame % 2 == 0) ? i : workspaces.size() - 1 - i;
            all[w].push_back(time_one_frame(workspaces[w], step, cfg));
        }
    }
    return all;
}

// Producer computes frames into a one-slot queue; consumer displays them.
// At most one frame in the compute path and one on display at a time.
std::vector<FrameTimes> run_pipelined(const BenchConfig& cfg, int n_tw) {
    FrameWorkspace ws(cfg.grid, n_tw, cfg.rng_seed);
    ws.update(1, cfg.steps);  // warmup
    ws.compute();
    const int total_frames = cfg.repetitions * cfg.steps;

    std::mutex mu;
    std::condition_variable cv;
    std::optional<int> slot;  // frame id ready for display
    bool done = false;

    std::vector<FrameTimes> times(total_frames);

    std::thread consumer([&] {
        for (;;) {
            std::unique_lock<std::mutex> lock(mu);
            cv.wait(lock, [&] { return slot.has_value() || done; });
            if (!slot.has_value()) return;
            int frame = *slot;
            slot.reset();
            lock.unlock();
            cv.notify_all();
            auto d0 = Clock::now();
            precise_wait(cfg.display_ms);
            times[frame].display = ms_between(d0, Clock::now());
        }
    });

    auto start = Clock::now();
    for (int frame = 0; frame < total_frames; ++frame) {
        int step = frame % cfg.steps + 1;
        auto t0 = Clock::now();
        ws.update(step, cfg.steps);
        auto t1 = Clock::now();
        ws.compute();
        auto t2 = Clock::now();
        ws.transfer(cfg);
        auto t3 = Clock::now();
        {
            std::unique_lock<std::mutex> lock(mu);
            cv.wait(lock, [&] { return !slot.has_value(); });
            slot = frame;
        }
        cv.notify_all();
        times[frame].update = ms_between(t0, t1);
        times[frame].compute = ms_between(t1, t2);
        times[frame].transfer = ms_between(t2, t3);
    }
    {
        std::lock_guard<std::mutex> lock(mu);
        done = true;
    }
    cv.notify_all();
    consumer.join();
    auto stop = Clock::now();

    // Steady-state cadence: wall time per frame across the whole run.
    double per_frame = ms_between(start, stop) / total_frames;
    for (auto& ft : times) ft.total = per_frame;
    return times;
}

}  // namespace

BenchConfig::BenchConfig() {
    for (int side = 3; side <= 49; side += 2) n_tw_values.push_back(side * side);
}

void BenchConfig::validate() const {
    if (n_tw_values.empty() || steps < 1 || repetitions < 1)
        throw std::invalid_argument("BenchConfig: counts must be positive");
    if (display_ms < 0 || transfer_ms < 0)
        throw std::invalid_argument("BenchConfig: latencies must be >= 0");
    if (grid < 16 || grid % 2 != 0)
        throw std::invalid_argument("BenchConfig: grid must be even and >= 16");
    for (int n : n_tw_values) {
        int side = static_cast<int>(std::lround(std::sqrt(double(n))));
        if (side * side != n)
            throw std::invalid_argument("BenchConfig: n_tw values must be squares");
        if (side >= grid / 2)
            throw std::invalid_argument("BenchConfig: array does not fit the grid");
    }
}

std::vector<BenchRow> run_bench(const BenchConfig& cfg) {
    cfg.validate();
    std::vector<std::vector<FrameTimes>> all;
    if (cfg.pipelined) {
        for (int n_tw : cfg.n_tw_values) all.push_back(run_pipelined(cfg, n_tw));
    } else {
        all = run_serialized(cfg);
    }

    std::vector<BenchRow> rows;
    for (std::size_t i = 0; i < cfg.n_tw_values.size(); ++i) {
        std::vector<double> u, c, t, d, tot;
        for (const auto& ft : all[i]) {
            u.push_back(ft.update);
            c.push_back(ft.compute);
            t.push_back(ft.transfer);
            d.push_back(ft.display);
            tot.push_back(ft.total);
        }
        BenchRow row;
        row.n_tw = cfg.n_tw_values[i];
        row.update = stats_of(u);
        row.compute = stats_of(c);
        row.transfer = stats_of(t);
        row.display = stats_of(d);
        row.total = stats_of(tot);
        row.mode = cfg.pipelined ? "pipelined" : "serialized";
        rows.push_back(row);
    }
    return rows;
}

}  // namespace holosort::bench
