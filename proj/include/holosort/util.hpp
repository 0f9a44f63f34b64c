#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

namespace holosort {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Wrap an angle into [0, 2*pi).
inline double wrap_2pi(double x) {
    double r = x - two_pi * std::floor(x / two_pi);
    if (r >= two_pi) r -= two_pi;
    if (r < 0.0) r = 0.0;
    return r;
}

// Signed angular difference b - a, wrapped into (-pi, pi].
inline double angular_diff(double b, double a) {
    double d = std::remainder(b - a, two_pi);
    if (d <= -std::numbers::pi) d = std::numbers::pi;
    return d;
}

// Distance between two angles on the circle, in [0, pi].
inline double angular_dist(double a, double b) {
    return std::abs(angular_diff(a, b));
}

// FNV-1a over a byte string; used for config hashes in manifests.
inline std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string fnv1a_hex(const std::string& bytes);

// Effective worker count: min(hardware, HOLOSORT_THREADS if set), at least 1.
unsigned effective_threads();

// Index-sharded parallel loop. fn(i) is called exactly once for every
// i in [0, n); shards are contiguous so results written by index are
// deterministic regardless of scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

// SplitMix64 step; used to derive independent per-trial RNG seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    std::uint64_t s = base ^ (0x6a09e667f3bcc909ull + stream * 0x9e3779b97f4a7c15ull);
    return splitmix64(s);
}

}  // namespace holosort
