#include "holosort/flicker.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "holosort/util.hpp"

namespace holosort::flicker {

using optics::ComplexField;
using optics::OpticalConfig;
using optics::PhaseMap;
using optics::TweezerPattern;

namespace {

// Max |U|^2 over the 3x3 neighborhoods around the old, interpolated and new
// positions; also reports the phase at the brightest cell.
std::pair<double, double> probe_field(const ComplexField& field, const Probe& p,
                                      double tau) {
    int mi = static_cast<int>(std::lround(p.m_old + tau * (p.m_new - p.m_old)));
    int ni = static_cast<int>(std::lround(p.n_old + tau * (p.n_new - p.n_old)));
    const int centers[3][2] = {{p.m_old, p.n_old}, {mi, ni}, {p.m_new, p.n_new}};
    double best = -1.0, phase = 0.0;
    for (const auto& c : centers) {
        for (int dn = -1; dn <= 1; ++dn) {
            for (int dm = -1; dm <= 1; ++dm) {
                int m = c[0] + dm, n = c[1] + dn;
                if (m < -field.mx / 2 || m >= field.mx / 2 ||
                    n < -field.my / 2 || n >= field.my / 2)
                    continue;
                double inten = std::norm(field.at(m, n));
                if (inten > best) {
                    best = inten;
                    phase = wrap_2pi(std::arg(field.at(m, n)));
                }
            }
        }
    }
    return {std::max(best, 0.0), phase};
}

}  // namespace

double FlickerTrace::min_rel_intensity() const {
    double lo = std::numeric_limits<double>::infinity();
    for (const auto& [id, v] : min_rel_intensity_per_probe) lo = std::min(lo, v);
    return lo;
}

FlickerTrace simulate_transition(const PhaseMap& holo_a, const PhaseMap& holo_b,
                                 const std::vector<Probe>& probes,
                                 const TransientModel& model,
                                 const OpticalConfig& cfg) {
    if (!holo_a.same_shape(holo_b))
        throw std::invalid_argument("simulate_transition: hologram dimension mismatch");
    if (model.substeps < 2)
        throw std::invalid_argument("simulate_transition: substeps must be >= 2");

    FlickerTrace trace;
    const ComplexField field_b = optics::propagate(holo_b, cfg);

    // Per-probe normalization: settled intensity at the new position.
    std::vector<double> norm_b(probes.size());
    for (std::size_t i = 0; i < probes.size(); ++i) {
        Probe settled = probes[i];
        settled.m_old = settled.m_new;
        settled.n_old = settled.n_new;
        norm_b[i] = probe_field(field_b, settled, 1.0).first;
    }

    std::map<int, double> minima;
    auto record = [&](std::size_t i, double tau, double inten, double phase) {
        double rel = norm_b[i] > 0.0 ? inten / norm_b[i] : 0.0;
        trace.samples.push_back({0, probes[i].id, tau, rel, phase});
        auto [it, fresh] = minima.emplace(probes[i].id, rel);
        if (!fresh) it->second = std::min(it->second, rel);
    };

    if (model.mode == TransientMode::CrossFade) {
        const ComplexField field_a = optics::propagate(holo_a, cfg);
        ComplexField mix(field_a.mx, field_a.my);
        for (int s = 0; s <= model.substeps; ++s) {
            double tau = static_cast<double>(s) / model.substeps;
            for (std::size_t j = 0; j < mix.values.size(); ++j)
                mix.values[j] = (1.0 - tau) * field_a.values[j] + tau * field_b.values[j];
            for (std::size_t i = 0; i < probes.size(); ++i) {
                auto [inten, phase] = probe_field(mix, probes[i], tau);
                record(i, tau, inten, phase);
            }
        }
    } else {
        PhaseMap mix(holo_a.mx, holo_a.my);
        for (int s = 0; s <= model.substeps; ++s) {
            double tau = static_cast<double>(s) / model.substeps;
            for (std::size_t j = 0; j < mix.values.size(); ++j)
                mix.values[j] = (1.0 - tau) * holo_a.values[j] + tau * holo_b.values[j];
            ComplexField field = optics::propagate(mix, cfg);
            for (std::size_t i = 0; i < probes.size(); ++i) {
                auto [inten, phase] = probe_field(field, probes[i], tau);
                record(i, tau, inten, phase);
            }
        }
    }

    for (const auto& [id, v] : minima)
        trace.min_rel_intensity_per_probe.emplace_back(id, v);
    return trace;
}

FlickerTrace sequence_flicker(const sequencer::HologramSequence& seq,
                              const TransientModel& model,
                              const OpticalConfig& cfg) {
    FlickerTrace trace;
    std::map<int, double> minima;

    // Settled per-frame phase trace at each tweezer's annotated cell.
    std::vector<ComplexField> settled(seq.frames.size());
    parallel_for(seq.frames.size(), [&](std::size_t f) {
        settled[f] = optics::propagate(seq.frames[f].hologram, cfg);
    });
    for (std::size_t f = 0; f < seq.frames.size(); ++f) {
        const auto& frame = seq.frames[f];
        for (std::size_t i = 0; i < frame.pattern.tweezers.size(); ++i) {
            const auto& t = frame.pattern.tweezers[i];
            auto [amp, phase] = optics::sample_tweezer(settled[f], t.m, t.n);
            (void)amp;
            trace.settled.push_back({static_cast<int>(f), frame.tweezer_ids[i], phase});
        }
    }

    for (std::size_t f = 0; f + 1 < seq.frames.size(); ++f) {
        const auto& fa = seq.frames[f];
        const auto& fb = seq.frames[f + 1];
        std::vector<Probe> probes;
        for (std::size_t i = 0; i < fb.pattern.tweezers.size(); ++i) {
            int id = fb.tweezer_ids[i];
            auto it = std::find(fa.tweezer_ids.begin(), fa.tweezer_ids.end(), id);
            if (it == fa.tweezer_ids.end()) continue;
            const auto& told = fa.pattern.tweezers[it - fa.tweezer_ids.begin()];
            const auto& tnew = fb.pattern.tweezers[i];
            probes.push_back({id, told.m, told.n, tnew.m, tnew.n});
        }
        FlickerTrace part = simulate_transition(fa.hologram, fb.hologram, probes,
                                                model, cfg);
        for (auto s : part.samples) {
            s.transition = static_cast<int>(f);
            trace.samples.push_back(s);
        }
        for (const auto& [id, v] : part.min_rel_intensity_per_probe) {
            auto [it, fresh] = minima.emplace(id, v);
            if (!fresh) it->second = std::min(it->second, v);
        }
    }

    for (const auto& [id, v] : minima)
        trace.min_rel_intensity_per_probe.emplace_back(id, v);
    return trace;
}

sequencer::HologramSequence scan_sequence(const TweezerPattern& array,
                                          double dpsi, int steps,
                                          const OpticalConfig& cfg) {
    cfg.validate();
    array.validate(cfg);
    if (array.empty())
        throw std::invalid_argument("scan_sequence: empty array");
    if (steps < 1)
        throw std::invalid_argument("scan_sequence: steps must be >= 1");

    TweezerPattern base = array;
    base.normalize();
    const int total = 2 * steps;

    sequencer::HologramSequence seq;
    seq.move_steps = total;
    seq.frames.resize(total + 1);
    for (int j = 0; j <= total; ++j) {
        int offset = (j <= steps) ? j : total - j;
        TweezerPattern pat;
        pat.normalized = base.normalized;
        std::vector<int> ids;
        for (std::size_t i = 0; i < base.tweezers.size(); ++i) {
            const auto& t = base.tweezers[i];
            pat.tweezers.push_back({t.m - offset, t.n, t.amp,
                                    wrap_2pi(t.phase + offset * dpsi)});
            ids.push_back(static_cast<int>(i));
        }
        seq.frames[j].hologram = optics::pattern_to_hologram(pat, cfg);
        seq.frames[j].pattern = std::move(pat);
        seq.frames[j].tweezer_ids = std::move(ids);
    }
    return seq;
}

std::vector<SlipScanRow> phase_slip_scan(const TweezerPattern& array,
                                         const std::vector<double>& psi_values,
                                         int d,
                                         const SlipScanSettings& settings,
                                         const OpticalConfig& cfg) {
    OpticalConfig cfg_d = cfg;  // displacement applies to the optics only;
    cfg_d.dx = d;               // holograms are computed unaware of it
    cfg_d.dy = 0;
    cfg_d.validate();

    std::vector<SlipScanRow> rows(psi_values.size());
    parallel_for(psi_values.size(), [&](std::size_t pi) {
        const double dpsi = psi_values[pi];
        sequencer::HologramSequence seq =
            scan_sequence(array, dpsi, settings.steps, cfg);
        FlickerTrace trace = sequence_flicker(seq, settings.model, cfg_d);
        double mean_min = 0.0;
        int survived = 0;
        for (const auto& [id, v] : trace.min_rel_intensity_per_probe) {
            mean_min += v;
            if (v >= settings.survival_threshold) ++survived;
        }
        mean_min /= trace.min_rel_intensity_per_probe.size();
        rows[pi] = {dpsi, mean_min,
                    static_cast<double>(survived) /
                        trace.min_rel_intensity_per_probe.size()};
    });
    return rows;
}

}  // namespace holosort::flicker
