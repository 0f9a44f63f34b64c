#pragma once

namespace holosort::stats {

// Detection fidelities and survival for one array configuration. Either the
// raw survival s0 or the corrected s may be primary depending on direction.
struct FidelityParams {
    double f0 = 1.0;  // true-negative fidelity
    double f1 = 1.0;  // true-positive fidelity
    double s0 = 1.0;  // raw (conditional) imaging survival
    double s = 1.0;   // corrected imaging survival
    // one-sigma uncertainties, used by the linearized propagation
    double f0_err = 0.0;
    double f1_err = 0.0;
    double s0_err = 0.0;

    // Copy with s filled in from s0 via corrected_survival.
    FidelityParams with_corrected(double p1) const;
};

struct ValueWithError {
    double value = 0.0;
    double err_plus = 0.0;   // clamped so value + err_plus <= 1
    double err_minus = 0.0;
};

// Probability of detecting an atom given occupation prior p1:
// F1*p1 + (1-F0)*(1-p1).
double p_detect(double f0, double f1, double p1);

// SPAM-corrected imaging survival from the raw conditional survival s0.
double corrected_survival(double f0, double f1, double s0, double p1);

// Forward model: raw conditional survival s0 produced by a true survival s.
// Inverse of corrected_survival; used as its independent check.
double raw_survival_from(double f0, double f1, double s, double p1);

// Corrected per-atom rearrangement success from the measured retention r0,
// for a move from the 36-site array (first image) to the 16-site array
// (verification image). Clamped at 1.
double corrected_rearrangement(double r0, const FidelityParams& arr36,
                               const FidelityParams& arr16, double p1);

// n-cycle extension; n = 1 reduces to corrected_rearrangement.
double corrected_rearrangement_n(double r0, int n, const FidelityParams& arr36,
                                 const FidelityParams& arr16, double p1);

// Linearized error propagation through corrected_rearrangement_n with the
// physical clamp at 1 applied to the upper error bar.
ValueWithError corrected_rearrangement_with_error(
    double r0, double r0_err, int n, const FidelityParams& arr36,
    const FidelityParams& arr16, double p1);

ValueWithError corrected_survival_with_error(const FidelityParams& arr, double p1);

// p^N_tw: chance that all N_tw sites succeed independently.
double defect_free_probability(double p, double n_tw);

// Extra rearrangement cycles help while per-cycle loss stays below
// 1/sqrt(N_tw).
bool multicycle_beneficial(double loss, double n_tw);

}  // namespace holosort::stats
