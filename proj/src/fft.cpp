#include "holosort/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace holosort::fft {

namespace {

// Quadrant swap between centered and standard (DC at index 0) order.
// For even dimensions the swap is an involution, so one function serves
// both directions.
void swap_quadrants(const std::complex<double>* src, std::complex<double>* dst,
                    int mx, int my) {
    const int hx = mx / 2, hy = my / 2;
    for (int r = 0; r < my; ++r) {
        int rs = (r + hy) % my;
        const std::complex<double>* in_row = src + static_cast<std::size_t>(r) * mx;
        std::complex<double>* out_row = dst + static_cast<std::size_t>(rs) * mx;
        std::memcpy(out_row + hx, in_row, sizeof(std::complex<double>) * hx);
        std::memcpy(out_row, in_row + hx, sizeof(std::complex<double>) * hx);
    }
}

// FFTW planning is not thread-safe; execution via fftw_execute_dft is.
// Plans are created with FFTW_UNALIGNED so they can run on any buffer.
std::mutex plan_mutex;

fftw_plan get_plan(int mx, int my, int fftw_sign) {
    static std::map<std::tuple<int, int, int>, fftw_plan> cache;
    std::lock_guard<std::mutex> lock(plan_mutex);
    auto key = std::make_tuple(mx, my, fftw_sign);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::vector<std::complex<double>> dummy(static_cast<std::size_t>(mx) * my);
    auto* p = reinterpret_cast<fftw_complex*>(dummy.data());
    // FFTW is row-major with the slowest dimension first: rows = my.
    fftw_plan plan = fftw_plan_dft_2d(my, mx, p, p, fftw_sign,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!plan) throw std::runtime_error("fftw plan creation failed");
    cache.emplace(key, plan);
    return plan;
}

struct Scratch {
    std::vector<std::complex<double>> a, b;
};

Scratch& scratch_for(std::size_t n) {
    thread_local Scratch s;
    if (s.a.size() < n) {
        s.a.resize(n);
        s.b.resize(n);
    }
    return s;
}

}  // namespace

void centered_dft(const std::complex<double>* in, std::complex<double>* out,
                  int mx, int my, Sign sign) {
    if (mx <= 0 || my <= 0 || mx % 2 != 0 || my % 2 != 0)
        throw std::invalid_argument("centered_dft: dimensions must be positive and even");
    const std::size_t n = static_cast<std::size_t>(mx) * my;
    Scratch& s = scratch_for(n);

    swap_quadrants(in, s.a.data(), mx, my);
    // e^{+i...} is FFTW_BACKWARD, e^{-i...} is FFTW_FORWARD; both unnormalized.
    int fsign = (sign == Sign::Positive) ? FFTW_BACKWARD : FFTW_FORWARD;
    fftw_plan plan = get_plan(mx, my, fsign);
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(s.a.data()),
                     reinterpret_cast<fftw_complex*>(s.b.data()));
    swap_quadrants(s.b.data(), out, mx, my);
}

std::vector<std::complex<double>> centered_dft(
    const std::vector<std::complex<double>>& in, int mx, int my, Sign sign) {
    if (in.size() != static_cast<std::size_t>(mx) * my)
        throw std::invalid_argument("centered_dft: buffer size mismatch");
    std::vector<std::complex<double>> out(in.size());
    centered_dft(in.data(), out.data(), mx, my, sign);
    return out;
}

}  // namespace holosort::fft
