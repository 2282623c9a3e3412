#pragma once

// Brute-force verification path: the full interferometer protocol simulated
// as explicit unitaries on photon path x polarization x mirror Fock space,
// with the optomechanical evolution obtained by numerically exponentiating
// the one-photon sector Hamiltonian n - k(c + c^dag) (units hbar = omega_m = 1).
// No closed-form Kerr result is assumed anywhere on this path.

#include <array>
#include <string>
#include <vector>

#include "wmqdc/optomech.hpp"

namespace wmqdc::oracle {

using fock::ConditionalResult;
using fock::FockVector;
using opto::OptoParams;

// Lab-frame propagators for the two photon sectors, eigendecomposed once per
// (k, cutoff) and shared read-only across a sweep.
class MirrorEvolver {
public:
    MirrorEvolver(double k, int cutoff);

    // exp(-i H tau) with H = n - k(c+c^dag) when the photon occupies the
    // optomechanical arm, H = n otherwise.
    FockVector evolve(const FockVector& mirror, bool photon_in_A, double tau) const;

    double k() const { return k_; }
    int cutoff() const { return cutoff_; }

private:
    double k_;
    int cutoff_;
    Eigen::VectorXd evals_;
    fock::Mat evecs_;
};

FockVector evolve_optomech(const FockVector& mirror, bool photon_in_A, double k, double tau);

// Detector outcomes: ancilla {H, V} x signal port {a', a'', b', b''}.
struct ProtocolOutcome {
    std::array<double, 8> probabilities{}; // anc-major order; sums to 1
    ConditionalResult dark_port;           // (anc H, port a') conditional mirror state
};

ProtocolOutcome run_protocol_full(const OptoParams& params, double tau);

// Conditional mirror state and joint success probability of (anc H, port a').
ConditionalResult run_protocol(const OptoParams& params, double tau);

struct CrosscheckGrid {
    std::vector<double> ks{0.001, 0.005, 0.01, 0.1};
    std::vector<double> alpha_fracs{0.0, 0.5, 0.9, 0.996, 0.9995, 1.0};
    int tau_points = 200;
    double tau_stop = 4.0 * M_PI;
    int cutoff = 0; // 0 = auto per k
};

struct EquationDivergence {
    std::string equation;
    double max_divergence = 0;
    bool printed_form_matches = false; // |literal - derived| stays below 1e-10
};

struct CrosscheckReport {
    double max_dev_q = 0;
    double max_dev_p = 0;
    double max_dev_prob = 0;
    int evaluated = 0;
    int skipped_degenerate = 0;
    double worst_k = 0, worst_alpha_frac = 0, worst_tau = 0;
    std::vector<EquationDivergence> literal_divergences; // filled when requested

    double max_deviation() const;
    bool pass(double tol = 1e-8) const { return max_deviation() < tol; }
};

// Max |closed form - oracle| over the grid for <q>/sigma, <p>/(hbar/2sigma)
// and the success probability. paper_literal additionally tabulates the
// printed-vs-derived divergence for Eqs. 25, 28, 29 and 31.
CrosscheckReport crosscheck(const CrosscheckGrid& grid, bool paper_literal = false,
                            bool parallel = true);

} // namespace wmqdc::oracle
