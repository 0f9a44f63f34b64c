#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

namespace holosort::optics {

enum class Illumination { Uniform, Gaussian };

// Geometry of the SLM -> focal plane system. Grid coordinates are centered:
// SLM pixels (k, l) and focal-plane cells (m, n) both run
// [-M/2, M/2) with (0, 0) at the array center.
struct OpticalConfig {
    int mx = 1024;              // SLM pixel count along x
    int my = 1024;              // SLM pixel count along y
    double lambda = 813e-9;     // laser wavelength [m]
    double focal = 4e-3;        // objective focal length [m]
    double m_demag = 0.41;      // demagnification of the SLM image
    // Chip side length [m]; default chosen so the Fourier unit is 0.45 um.
    double chip_len = 17.63e-3;
    int dx = 0;                 // displacement of the computational center
    int dy = 0;                 //   from the optical axis [SLM pixels]
    Illumination illumination = Illumination::Uniform;
    double gaussian_waist = 6e-3;  // 1/e field radius [m], beam on optical axis

    void validate() const;
    // Illumination field amplitude at SLM pixel (k, l), centered coordinates.
    double illum_amp(int k, int l) const;
    double pixel_dx() const { return chip_len / mx; }
    double pixel_dy() const { return chip_len / my; }
};

// Phase hologram on the SLM; every entry wrapped to [0, 2*pi).
struct PhaseMap {
    int mx = 0;
    int my = 0;
    std::vector<double> values;  // row-major, row = l + my/2, col = k + mx/2

    PhaseMap() = default;
    PhaseMap(int mx_, int my_, double fill = 0.0)
        : mx(mx_), my(my_),
          values(static_cast<std::size_t>(mx_) * my_, fill) {}

    double& at(int k, int l) {
        return values[idx(k, l)];
    }
    double at(int k, int l) const {
        return values[idx(k, l)];
    }
    std::size_t idx(int k, int l) const {
        return static_cast<std::size_t>(l + my / 2) * mx + (k + mx / 2);
    }
    bool same_shape(const PhaseMap& o) const { return mx == o.mx && my == o.my; }
};

// Complex field in the focal (Fourier) plane, centered storage like PhaseMap.
struct ComplexField {
    int mx = 0;
    int my = 0;
    std::vector<std::complex<double>> values;

    ComplexField() = default;
    ComplexField(int mx_, int my_)
        : mx(mx_), my(my_),
          values(static_cast<std::size_t>(mx_) * my_) {}

    std::complex<double>& at(int m, int n) { return values[idx(m, n)]; }
    std::complex<double> at(int m, int n) const { return values[idx(m, n)]; }
    std::size_t idx(int m, int n) const {
        return static_cast<std::size_t>(n + my / 2) * mx + (m + mx / 2);
    }
    double total_power() const;
};

// One tweezer: focal-grid position, field amplitude, optical phase.
struct TweezerSpec {
    int m = 0;
    int n = 0;
    double amp = 1.0;
    double phase = 0.0;  // [0, 2*pi)
};

struct TweezerPattern {
    std::vector<TweezerSpec> tweezers;
    bool normalized = false;  // true if sum of amp^2 == 1

    std::size_t size() const { return tweezers.size(); }
    bool empty() const { return tweezers.empty(); }
    // Scale amplitudes so total power (sum amp^2) is 1.
    void normalize();
    // Throws if positions collide or lie outside the grid of cfg.
    void validate(const OpticalConfig& cfg) const;
};

// Focal-plane field of a displayed hologram. The hologram is rolled by the
// computational-center displacement (circular boundary) against the fixed
// illumination/FFT grid, then transformed with the positive-exponent kernel.
ComplexField propagate(const PhaseMap& hologram, const OpticalConfig& cfg);

// |U| and arg(U) at one focal cell; phase wrapped to [0, 2*pi).
std::pair<double, double> sample_tweezer(const ComplexField& field, int m, int n);

// Phase-only synthesis: centered spectrum from the pattern, inverse transform,
// keep the argument. Coincident spots (possible mid-move after grid rounding)
// add coherently in the spectrum. The computational center is the grid center;
// any displacement in cfg applies only when the result is propagated.
PhaseMap pattern_to_hologram(const TweezerPattern& pattern, const OpticalConfig& cfg);

// Tweezer phase slip per unit move for a computational-center displacement of
// d pixels on an M-pixel axis: 2*pi*d/M, signed, not wrapped.
double phase_slip(int d, int M);

// Focal-plane position quantum lambda*f/(m_demag*L) [m].
double fourier_unit(const OpticalConfig& cfg);

// Element-wise sum modulo 2*pi.
PhaseMap compose_holograms(const std::vector<PhaseMap>& parts);

// phi(k, l) = 2*pi*(kx*k/Mx + ky*l/My) mod 2*pi; kx, ky in Fourier units.
PhaseMap blazed_grating(double kx, double ky, const OpticalConfig& cfg);

// Quadratic lens phase: phi(k, l) = -pi/(lambda*f_lens) * ((k*dx)^2 + (l*dy)^2).
PhaseMap fresnel_lens(double f_lens, const OpticalConfig& cfg);

// Circular roll: output(k, l) = input(k - sx, l - sy), toroidal boundary.
PhaseMap roll(const PhaseMap& map, int sx, int sy);
ComplexField roll(const ComplexField& field, int sx, int sy);

}  // namespace holosort::optics
