#include "holosort/wgs.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "holosort/fft.hpp"
#include "holosort/util.hpp"

namespace holosort::wgs {

using optics::ComplexField;
using optics::OpticalConfig;
using optics::PhaseMap;
using optics::TweezerPattern;

namespace {

double uniformity_of(const std::vector<double>& amps) {
    double lo = amps[0] * amps[0], hi = lo, mean = 0.0;
    for (double a : amps) {
        double inten = a * a;
        lo = std::min(lo, inten);
        hi = std::max(hi, inten);
        mean += inten;
    }
    mean /= amps.size();
    return mean > 0 ? (hi - lo) / mean : 0.0;
}

}  // namespace

WgsResult run_wgs(const TweezerPattern& target, const OpticalConfig& cfg,
                  const WgsSettings& settings) {
    cfg.validate();
    target.validate(cfg);
    if (target.empty())
        throw std::invalid_argument("run_wgs: empty target pattern");
    if (settings.max_iters < 1 || settings.uniformity_target <= 0 ||
        settings.uniformity_target >= 1)
        throw std::invalid_argument("run_wgs: invalid settings");

    const int mx = cfg.mx, my = cfg.my;
    const std::size_t nspots = target.size();

    std::mt19937_64 rng(settings.rng_seed);
    std::uniform_real_distribution<double> uphase(0.0, two_pi);
    std::vector<double> phases(nspots);
    for (auto& p : phases) p = uphase(rng);

    std::vector<double> weights(nspots, 1.0);
    std::vector<double> amps(nspots, 0.0);

    WgsResult result;
    std::vector<std::complex<double>> spectrum(static_cast<std::size_t>(mx) * my);
    std::vector<std::complex<double>> slm(spectrum.size());

    for (int iter = 1; iter <= settings.max_iters; ++iter) {
        // Weighted target spectrum with the current free-floating spot phases.
        std::fill(spectrum.begin(), spectrum.end(), std::complex<double>(0, 0));
        for (std::size_t i = 0; i < nspots; ++i) {
            const auto& t = target.tweezers[i];
            std::size_t idx = static_cast<std::size_t>(t.n + my / 2) * mx + (t.m + mx / 2);
            spectrum[idx] = std::polar(weights[i] * t.amp, phases[i]);
        }
        fft::centered_dft(spectrum.data(), slm.data(), mx, my, fft::Sign::Negative);

        // Phase-only constraint; the wrapped PhaseMap is what propagate sees,
        // so `achieved` stays bit-consistent with the returned hologram.
        PhaseMap holo(mx, my);
        for (std::size_t i = 0; i < slm.size(); ++i)
            holo.values[i] = wrap_2pi(std::arg(slm[i]));

        ComplexField field = optics::propagate(holo, cfg);
        for (std::size_t i = 0; i < nspots; ++i) {
            const auto& t = target.tweezers[i];
            auto [a, p] = optics::sample_tweezer(field, t.m, t.n);
            amps[i] = a;
            phases[i] = p;
        }

        result.hologram = std::move(holo);
        result.uniformity = uniformity_of(amps);
        result.iters_used = iter;
        if (result.uniformity <= settings.uniformity_target) {
            result.converged = true;
            break;
        }
        if (iter == settings.max_iters) break;

        double mean_amp = 0.0;
        for (double a : amps) mean_amp += a;
        mean_amp /= nspots;
        for (std::size_t i = 0; i < nspots; ++i) {
            if (amps[i] > 0.0)
                weights[i] *= std::pow(mean_amp / amps[i], settings.weight_exponent);
            weights[i] = std::max(weights[i], settings.weight_floor);
        }
    }

    result.achieved.tweezers.reserve(nspots);
    for (std::size_t i = 0; i < nspots; ++i) {
        const auto& t = target.tweezers[i];
        result.achieved.tweezers.push_back({t.m, t.n, amps[i], phases[i]});
    }
    result.achieved.normalize();
    return result;
}

}  // namespace holosort::wgs
