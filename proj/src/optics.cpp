#include "holosort/optics.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "holosort/fft.hpp"
#include "holosort/util.hpp"

namespace holosort::optics {

void OpticalConfig::validate() const {
    if (mx <= 0 || my <= 0 || mx % 2 != 0 || my % 2 != 0)
        throw std::invalid_argument("OpticalConfig: pixel counts must be positive and even");
    if (lambda <= 0 || focal <= 0 || chip_len <= 0)
        throw std::invalid_argument("OpticalConfig: lambda, focal, chip_len must be > 0");
    if (m_demag <= 0 || m_demag > 1)
        throw std::invalid_argument("OpticalConfig: m_demag must be in (0, 1]");
    if (std::abs(dx) >= mx / 2 || std::abs(dy) >= my / 2)
        throw std::invalid_argument("OpticalConfig: |displacement| must be < M/2");
    if (illumination == Illumination::Gaussian && gaussian_waist <= 0)
        throw std::invalid_argument("OpticalConfig: gaussian_waist must be > 0");
}

double OpticalConfig::illum_amp(int k, int l) const {
    if (illumination == Illumination::Uniform) return 1.0;
    double x = k * pixel_dx();
    double y = l * pixel_dy();
    double w2 = gaussian_waist * gaussian_waist;
    return std::exp(-(x * x + y * y) / w2);
}

double ComplexField::total_power() const {
    double p = 0.0;
    for (const auto& v : values) p += std::norm(v);
    return p;
}

void TweezerPattern::normalize() {
    double power = 0.0;
    for (const auto& t : tweezers) power += t.amp * t.amp;
    if (power <= 0.0)
        throw std::invalid_argument("TweezerPattern::normalize: zero total power");
    double s = 1.0 / std::sqrt(power);
    for (auto& t : tweezers) t.amp *= s;
    normalized = true;
}

void TweezerPattern::validate(const OpticalConfig& cfg) const {
    std::unordered_set<std::int64_t> seen;
    for (const auto& t : tweezers) {
        if (t.m < -cfg.mx / 2 || t.m >= cfg.mx / 2 || t.n < -cfg.my / 2 || t.n >= cfg.my / 2)
            throw std::out_of_range("TweezerPattern: position outside Fourier grid");
        if (t.amp < 0)
            throw std::invalid_argument("TweezerPattern: negative amplitude");
        std::int64_t key = (static_cast<std::int64_t>(t.m) << 32) ^
                           static_cast<std::uint32_t>(t.n);
        if (!seen.insert(key).second)
            throw std::invalid_argument("TweezerPattern: duplicate position");
    }
}

ComplexField propagate(const PhaseMap& hologram, const OpticalConfig& cfg) {
    cfg.validate();
    if (hologram.mx != cfg.mx || hologram.my != cfg.my)
        throw std::invalid_argument("propagate: hologram dimensions do not match config");

    // Displayed phase at grid pixel (k, l) is hologram(k + dx, l + dy): the
    // hologram is rolled by (-dx, -dy) while the illumination stays fixed.
    const int mx = cfg.mx, my = cfg.my;
    auto wrap = [](int c, int half) {
        if (c >= half) return c - 2 * half;
        if (c < -half) return c + 2 * half;
        return c;
    };
    std::vector<std::complex<double>> slm(static_cast<std::size_t>(mx) * my);
    for (int l = -my / 2; l < my / 2; ++l) {
        int lk = wrap(l + cfg.dy, my / 2);
        for (int k = -mx / 2; k < mx / 2; ++k) {
            int kk = wrap(k + cfg.dx, mx / 2);
            slm[hologram.idx(k, l)] = std::polar(cfg.illum_amp(k, l), hologram.at(kk, lk));
        }
    }

    ComplexField out(mx, my);
    fft::centered_dft(slm.data(), out.values.data(), mx, my, fft::Sign::Positive);
    return out;
}

std::pair<double, double> sample_tweezer(const ComplexField& field, int m, int n) {
    if (m < -field.mx / 2 || m >= field.mx / 2 || n < -field.my / 2 || n >= field.my / 2)
        throw std::out_of_range("sample_tweezer: position outside field");
    std::complex<double> u = field.at(m, n);
    return {std::abs(u), wrap_2pi(std::arg(u))};
}

PhaseMap pattern_to_hologram(const TweezerPattern& pattern, const OpticalConfig& cfg) {
    cfg.validate();
    if (pattern.empty())
        throw std::invalid_argument("pattern_to_hologram: empty pattern");

    const int mx = cfg.mx, my = cfg.my;
    std::vector<std::complex<double>> spectrum(static_cast<std::size_t>(mx) * my);
    for (const auto& t : pattern.tweezers) {
        if (t.m < -mx / 2 || t.m >= mx / 2 || t.n < -my / 2 || t.n >= my / 2)
            throw std::out_of_range("pattern_to_hologram: tweezer outside grid");
        std::size_t i = static_cast<std::size_t>(t.n + my / 2) * mx + (t.m + mx / 2);
        spectrum[i] += std::polar(t.amp, t.phase);
    }

    std::vector<std::complex<double>> slm(spectrum.size());
    fft::centered_dft(spectrum.data(), slm.data(), mx, my, fft::Sign::Negative);

    PhaseMap holo(mx, my);
    for (std::size_t i = 0; i < slm.size(); ++i)
        holo.values[i] = wrap_2pi(std::arg(slm[i]));
    return holo;
}

double phase_slip(int d, int M) {
    return two_pi * d / M;
}

double fourier_unit(const OpticalConfig& cfg) {
    cfg.validate();
    return cfg.lambda * cfg.focal / (cfg.m_demag * cfg.chip_len);
}

PhaseMap compose_holograms(const std::vector<PhaseMap>& parts) {
    if (parts.empty())
        throw std::invalid_argument("compose_holograms: no parts");
    PhaseMap out = parts.front();
    for (std::size_t p = 1; p < parts.size(); ++p) {
        if (!out.same_shape(parts[p]))
            throw std::invalid_argument("compose_holograms: dimension mismatch");
        for (std::size_t i = 0; i < out.values.size(); ++i)
            out.values[i] += parts[p].values[i];
    }
    for (auto& v : out.values) v = wrap_2pi(v);
    return out;
}

PhaseMap blazed_grating(double kx, double ky, const OpticalConfig& cfg) {
    cfg.validate();
    PhaseMap out(cfg.mx, cfg.my);
    for (int l = -cfg.my / 2; l < cfg.my / 2; ++l)
        for (int k = -cfg.mx / 2; k < cfg.mx / 2; ++k)
            out.at(k, l) = wrap_2pi(two_pi * (kx * k / cfg.mx + ky * l / cfg.my));
    return out;
}

PhaseMap fresnel_lens(double f_lens, const OpticalConfig& cfg) {
    cfg.validate();
    if (f_lens == 0.0)
        throw std::invalid_argument("fresnel_lens: focal length must be nonzero");
    PhaseMap out(cfg.mx, cfg.my);
    double c = -std::numbers::pi / (cfg.lambda * f_lens);
    double px = cfg.pixel_dx(), py = cfg.pixel_dy();
    for (int l = -cfg.my / 2; l < cfg.my / 2; ++l)
        for (int k = -cfg.mx / 2; k < cfg.mx / 2; ++k) {
            double x = k * px, y = l * py;
            out.at(k, l) = wrap_2pi(c * (x * x + y * y));
        }
    return out;
}

namespace {
template <typename T>
std::vector<T> roll_values(const std::vector<T>& in, int mx, int my, int sx, int sy) {
    std::vector<T> out(in.size());
    auto mod = [](int a, int m) { return ((a % m) + m) % m; };
    for (int r = 0; r < my; ++r) {
        int rs = mod(r + sy, my);
        for (int c = 0; c < mx; ++c) {
            int cs = mod(c + sx, mx);
            out[static_cast<std::size_t>(rs) * mx + cs] =
                in[static_cast<std::size_t>(r) * mx + c];
        }
    }
    return out;
}
}  // namespace

PhaseMap roll(const PhaseMap& map, int sx, int sy) {
    PhaseMap out(map.mx, map.my);
    out.values = roll_values(map.values, map.mx, map.my, sx, sy);
    return out;
}

ComplexField roll(const ComplexField& field, int sx, int sy) {
    ComplexField out(field.mx, field.my);
    out.values = roll_values(field.values, field.mx, field.my, sx, sy);
    return out;
}

}  // namespace holosort::optics
