#include "holosort/stats.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace holosort::stats {

namespace {

void check_detector(double f0, double f1) {
    if (f0 < 0 || f0 > 1 || f1 < 0 || f1 > 1)
        throw std::invalid_argument("stats: fidelities must be in [0, 1]");
    if (f0 + f1 <= 1.0)
        throw std::invalid_argument("stats: degenerate detector (F0 + F1 <= 1)");
}

}  // namespace

double p_detect(double f0, double f1, double p1) {
    return f1 * p1 + (1.0 - f0) * (1.0 - p1);
}

FidelityParams FidelityParams::with_corrected(double p1) const {
    FidelityParams out = *this;
    out.s = corrected_survival(f0, f1, s0, p1);
    return out;
}

double corrected_survival(double f0, double f1, double s0, double p1) {
    check_detector(f0, f1);
    if (p1 <= 0.0 || p1 > 1.0)
        throw std::invalid_argument("stats: p1 must be in (0, 1]");
    return (s0 + f0 - 1.0) / (f1 + f0 - 1.0) *
           (1.0 + (1.0 - f0) * (1.0 - p1) / (p1 * f1));
}

double raw_survival_from(double f0, double f1, double s, double p1) {
    check_detector(f0, f1);
    // P(I1 and I0) / P(I0) with the detector applied to both images.
    double pi0 = p_detect(f0, f1, p1);
    double pi1_and_i0 = f1 * f1 * s * p1 +
                        f1 * (1.0 - f0) * (1.0 - s) * p1 +
                        (1.0 - f0) * (1.0 - f0) * (1.0 - p1);
    return pi1_and_i0 / pi0;
}

namespace {

double rearrangement_raw(double r0, int n, const FidelityParams& a36,
                         const FidelityParams& a16, double p1) {
    check_detector(a36.f0, a36.f1);
    check_detector(a16.f0, a16.f1);
    if (p1 <= 0.0 || p1 > 1.0)
        throw std::invalid_argument("stats: p1 must be in (0, 1]");
    if (n < 1) throw std::invalid_argument("stats: n must be >= 1");
    double num = (r0 + a16.f0 - 1.0) * p_detect(a36.f0, a36.f1, p1);
    double den = std::pow(a16.s, n - 1) * a36.s * a36.f1 * p1 *
                 (a16.f1 + a16.f0 - 1.0);
    return std::pow(num / den, 1.0 / n);
}

}  // namespace

double corrected_rearrangement(double r0, const FidelityParams& arr36,
                               const FidelityParams& arr16, double p1) {
    return std::min(1.0, rearrangement_raw(r0, 1, arr36, arr16, p1));
}

double corrected_rearrangement_n(double r0, int n, const FidelityParams& arr36,
                                 const FidelityParams& arr16, double p1) {
    return std::min(1.0, rearrangement_raw(r0, n, arr36, arr16, p1));
}

namespace {

// First-order propagation: sigma^2 = sum ((df/dx_i) * err_i)^2 via central
// finite differences over the quoted uncertainties.
double propagate_errors(const std::function<double(const std::vector<double>&)>& f,
                        std::vector<double> x, const std::vector<double>& err) {
    double var = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (err[i] == 0.0) continue;
        double h = err[i] * 1e-3;
        double save = x[i];
        x[i] = save + h;
        double fp = f(x);
        x[i] = save - h;
        double fm = f(x);
        x[i] = save;
        var += std::pow((fp - fm) / (2.0 * h) * err[i], 2);
    }
    return std::sqrt(var);
}

}  // namespace

ValueWithError corrected_survival_with_error(const FidelityParams& arr, double p1) {
    auto eval = [p1](const std::vector<double>& x) {
        return corrected_survival(x[0], x[1], x[2], p1);
    };
    double value = eval({arr.f0, arr.f1, arr.s0});
    double sigma = propagate_errors(eval, {arr.f0, arr.f1, arr.s0},
                                    {arr.f0_err, arr.f1_err, arr.s0_err});
    ValueWithError out;
    out.value = std::min(1.0, value);
    out.err_minus = sigma;
    out.err_plus = std::min(sigma, 1.0 - out.value);
    return out;
}

ValueWithError corrected_rearrangement_with_error(
    double r0, double r0_err, int n, const FidelityParams& arr36,
    const FidelityParams& arr16, double p1) {
    // x = {r0, f0_36, f1_36, s0_36, f0_16, f1_16, s0_16}
    auto eval = [n, p1](const std::vector<double>& x) {
        FidelityParams a36, a16;
        a36.f0 = x[1];
        a36.f1 = x[2];
        a36.s = corrected_survival(x[1], x[2], x[3], p1);
        a16.f0 = x[4];
        a16.f1 = x[5];
        a16.s = corrected_survival(x[4], x[5], x[6], p1);
        return rearrangement_raw(x[0], n, a36, a16, p1);
    };
    std::vector<double> x = {r0, arr36.f0, arr36.f1, arr36.s0,
                             arr16.f0, arr16.f1, arr16.s0};
    std::vector<double> err = {r0_err, arr36.f0_err, arr36.f1_err, arr36.s0_err,
                               arr16.f0_err, arr16.f1_err, arr16.s0_err};
    double value = eval(x);
    double sigma = propagate_errors(eval, x, err);
    ValueWithError out;
    out.value = std::min(1.0, value);
    out.err_minus = sigma;
    out.err_plus = std::min(sigma, 1.0 - out.value);
    return out;
}

double defect_free_probability(double p, double n_tw) {
    if (p < 0.0 || p > 1.0)
        throw std::invalid_argument("stats: p must be in [0, 1]");
    return std::pow(p, n_tw);
}

bool multicycle_beneficial(double loss, double n_tw) {
    if (loss < 0.0 || loss > 1.0)
        throw std::invalid_argument("stats: loss must be in [0, 1]");
    return loss < 1.0 / std::sqrt(n_tw);
}

}  // namespace holosort::stats
