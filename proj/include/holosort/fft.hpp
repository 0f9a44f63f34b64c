#pragma once

#include <complex>
#include <vector>

namespace holosort::fft {

// Exponent sign of the transform kernel e^{sign * 2*pi*i * (k m / Mx + l n / My)}.
enum class Sign { Positive, Negative };

// Unnormalized centered 2-D DFT. Input and output use centered storage:
// value at grid coordinate (k, l) lives at row (l + my/2), column (k + mx/2),
// with k in [-mx/2, mx/2) and l in [-my/2, my/2). Dimensions must be even.
//
// F(m, n) = sum_{k,l} f(k, l) e^{sign * 2*pi*i * (k m / mx + l n / my)}
//
// Thread-safe: concurrent calls on distinct buffers are fine.
void centered_dft(const std::complex<double>* in, std::complex<double>* out,
                  int mx, int my, Sign sign);

std::vector<std::complex<double>> centered_dft(
    const std::vector<std::complex<double>>& in, int mx, int my, Sign sign);

}  // namespace holosort::fft
