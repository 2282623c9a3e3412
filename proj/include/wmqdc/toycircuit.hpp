#pragma once

// Abstract three-qubit scheme: system qubit + ancilla qubit + pointer mode.
// Weak conditional displacement, controlled-Hadamard (quantum beam splitter),
// postselection and the second-order two-level approximation.

#include "wmqdc/fockspace.hpp"

namespace wmqdc::toy {

using fock::cplx;
using fock::ConditionalResult;
using fock::FockVector;

struct ToyParams {
    double eta = 0.0;   // dimensionless weak-coupling strength, eta = hbar*chi/(2 sigma)
    double alpha = 0.0; // ancilla angle, radians in [0, pi/2]

    // eta > 0.1 is outside the weak regime but allowed for stress tests.
    bool weak_regime() const { return eta <= 0.1; }
};

// (system 2) x (ancilla 2) x (pointer cutoff+1), system index slowest.
struct JointState {
    Eigen::VectorXcd amps;
    int cutoff = 0;

    JointState(int cutoff_) : amps(Eigen::VectorXcd::Zero(4 * (cutoff_ + 1))), cutoff(cutoff_) {}

    int dim() const { return cutoff + 1; }
    Eigen::VectorBlock<Eigen::VectorXcd> slice(int s, int a) {
        return amps.segment((s * 2 + a) * dim(), dim());
    }
    Eigen::VectorBlock<const Eigen::VectorXcd> slice(int s, int a) const {
        return amps.segment((s * 2 + a) * dim(), dim());
    }
    double norm() const { return amps.norm(); }
};

enum class PostselectMode {
    // Detect system |1'>, then measure the ancilla in (|0> - |1>)/sqrt(2).
    system_one_then_ancilla_minus,
    // Project onto the entangled state (|1>_s|0>_anc - |->_s|1>_anc)/sqrt(2).
    entangled
};

// |+>_s (cos a |0> + sin a |1>)_anc |0>_m
JointState prepare_initial(const ToyParams& params, int cutoff);

// Pointer displaced by +eta on the system |0> branch, -eta on |1>.
JointState weak_interact(const JointState& state, double eta);

// Hadamard on the system qubit conditioned on ancilla |1>; self-inverse.
JointState quantum_beam_splitter(const JointState& state);

// Takes the state AFTER the quantum beam splitter. Both modes give the same
// conditional pointer state and probability (the entangled projector applied
// before the QBS equals the sequential projection after it).
ConditionalResult postselect_toy(const JointState& state, PostselectMode mode);

// Two-level approximation (pi/2-alpha)/sqrt(2)|0> - eta|1>, embedded in the
// cutoff space. Valid for eta <= 0.05 and pi/2-alpha <= 0.05.
FockVector expansion_state_toy(const ToyParams& params, int cutoff);
bool expansion_valid_toy(const ToyParams& params);

// -2 a eta / (a^2 + eta^2) with a = (pi/2 - alpha)/sqrt(2).
double two_level_mean_q(const ToyParams& params);

} // namespace wmqdc::toy
