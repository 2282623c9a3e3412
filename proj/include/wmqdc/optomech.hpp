#pragma once

// Analytic model of the optomechanical protocol: Kerr coherent mirror state,
// dark-port postselected mirror state, closed-form <q(t)> and <p(t)>,
// small-time expansions, postselection success probability and photon
// arrival density.
//
// The corrected closed forms below are re-derived from the conditional state
// A|xi> + B|0> with A = cos(a)/(2 sqrt 2) - sin(a)/4, B = sin(a)/4 and
// <0|xi> = e^{i phase} e^{-|amp|^2/2}. The printed forms in the source
// material contain slips (a conjugation written as e^{i phase*}, one
// denominator sign, a missing Gaussian overlap factor and a squared term);
// paper_literal evaluators reproduce the printed forms verbatim so that the
// divergence can be reported.

#include <complex>
#include <vector>

#include "wmqdc/fockspace.hpp"

namespace wmqdc::opto {

using fock::cplx;
using fock::ConditionalResult;
using fock::FockVector;

struct OptoParams {
    double k = 0.005;         // g / omega_m, in (0, 0.25]
    double alpha = 0.0;       // ancilla rotation, radians in [0, pi/2]
    int cutoff = 0;           // 0 = auto
    double kappa_ratio = 0.25; // kappa / omega_m, arrival-rate ops only

    void validate() const;
    int effective_cutoff() const;
};

// Kerr phase and coherent amplitude at dimensionless time tau = omega_m t.
struct KerrState {
    double tau = 0;
    double phase = 0; // k^2 (tau - sin tau)
    cplx amp{0, 0};   // k (1 - e^{-i tau})
};

KerrState kerr_state(const OptoParams& params, double tau);

// e^{i phase} |amp> as a Fock vector.
FockVector xi_state(const OptoParams& params, double tau);

// Unnormalized (cos a/(2 sqrt 2))|xi> - (sin a/4)(|xi> - |0>); the success
// probability is its squared norm, which equals the joint probability of the
// ancilla D_H and dark-port D_a' detections (constant factor 1).
ConditionalResult mirror_conditional(const OptoParams& params, double tau);

enum class Route { closed_form, state_path };

// <q>/sigma of the conditional mirror state.
double mean_q(const OptoParams& params, double tau, Route route = Route::closed_form);
// <p>/(hbar/2sigma).
double mean_p(const OptoParams& params, double tau, Route route = Route::closed_form);

// Joint probability of (ancilla detected H) and (photon at dark port a').
// Equals 1/4 of the printed success-probability expression once the missing
// overlap factor is restored.
double success_probability(const OptoParams& params, double tau);

// kappa e^{-kappa t} x success_probability, expressed on the tau axis.
std::vector<double> arrival_density(const OptoParams& params, const std::vector<double>& tau_grid);

// Second-order state near T = (2n+1)pi: (pi/2-a)/sqrt(2)|0> - k|1>.
FockVector expansion_odd(const OptoParams& params, int cutoff);
// Two-level <q>/sigma from the odd expansion: -2 a k/(a^2+k^2), a=(pi/2-alpha)/sqrt(2).
double mean_q_odd(const OptoParams& params);
bool odd_window_valid(const OptoParams& params, double tau);

// Second-order state near T = 2n pi: (pi/2-a)/sqrt(2)|0> - i (k/2)(tau-T)|1>.
// Extrema +-1 of <p> sit at (pi/2-a)/sqrt(2) = -+ k(tau-T)/2.
FockVector expansion_even(const OptoParams& params, double tau, int cutoff);
double mean_p_even(const OptoParams& params, double tau);
bool even_window_valid(const OptoParams& params, double tau);

// 1/(4k); the achieved displacement at the optimum is -sigma, so the signed
// factor reported by the figures is negative.
double amplification_factor(const OptoParams& params);

// Printed forms evaluated verbatim (complex because the printed conjugations
// do not close over the reals).
namespace paper_literal {
cplx mean_q_eq25(const OptoParams& params, double tau);
cplx mean_p_eq29(const OptoParams& params, double tau);
cplx success_probability_eq31(const OptoParams& params, double tau);
double mean_q_odd_eq28(const OptoParams& params);
} // namespace paper_literal

// Corrected counterpart of the printed Eq-31 convention: 4x the joint
// probability, overlap factor included.
double success_probability_paper_scale(const OptoParams& params, double tau);

} // namespace wmqdc::opto
