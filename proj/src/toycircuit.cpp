#include "wmqdc/toycircuit.hpp"

#include <cmath>

namespace wmqdc::toy {

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
}

JointState prepare_initial(const ToyParams& params, int cutoff) {
    JointState st(cutoff);
    const double ca = std::cos(params.alpha);
    const double sa = std::sin(params.alpha);
    // |+>_s x (cos a, sin a)_anc x |0>_m
    st.slice(0, 0)[0] = kInvSqrt2 * ca;
    st.slice(0, 1)[0] = kInvSqrt2 * sa;
    st.slice(1, 0)[0] = kInvSqrt2 * ca;
    st.slice(1, 1)[0] = kInvSqrt2 * sa;
    return st;
}

JointState weak_interact(const JointState& state, double eta) {
    const fock::Mat dplus = fock::displacement_matrix(eta, state.cutoff);
    const fock::Mat dminus = fock::displacement_matrix(-eta, state.cutoff);
    JointState out(state.cutoff);
    for (int a = 0; a < 2; ++a) {
        out.slice(0, a) = dplus * state.slice(0, a);
        out.slice(1, a) = dminus * state.slice(1, a);
    }
    for (int s = 0; s < 2; ++s)
        for (int a = 0; a < 2; ++a)
            fock::check_tail(fock::FockVector(Eigen::VectorXcd(out.slice(s, a))), "weak_interact");
    return out;
}

JointState quantum_beam_splitter(const JointState& state) {
    JointState out = state;
    // H on the system qubit within the ancilla |1> block.
    Eigen::VectorXcd s0 = state.slice(0, 1);
    Eigen::VectorXcd s1 = state.slice(1, 1);
    out.slice(0, 1) = kInvSqrt2 * (s0 + s1);
    out.slice(1, 1) = kInvSqrt2 * (s0 - s1);
    return out;
}

ConditionalResult postselect_toy(const JointState& state, PostselectMode mode) {
    const int dim = state.dim();
    Eigen::VectorXcd pointer(dim);
    if (mode == PostselectMode::system_one_then_ancilla_minus) {
        // <1|_s then <phi|_anc with |phi> = (|0> - |1>)/sqrt(2)
        pointer = kInvSqrt2 * (Eigen::VectorXcd(state.slice(1, 0)) - Eigen::VectorXcd(state.slice(1, 1)));
    } else {
        // The entangled projector acts before the QBS; undo the (self-inverse)
        // QBS, then apply (<1,0| - <-,1|)/sqrt(2).
        const JointState pre = quantum_beam_splitter(state);
        Eigen::VectorXcd minus =
            kInvSqrt2 * (Eigen::VectorXcd(pre.slice(0, 1)) - Eigen::VectorXcd(pre.slice(1, 1)));
        pointer = kInvSqrt2 * (Eigen::VectorXcd(pre.slice(1, 0)) - minus);
    }
    FockVector fv{Eigen::VectorXcd(pointer)};
    const double prob = fv.squared_norm();
    if (fv.norm() < fock::kDegenerateNorm)
        throw DegeneratePostselectionError("postselect_toy: zero-norm projection");
    return {fock::fix_global_phase(std::move(fv)), prob};
}

FockVector expansion_state_toy(const ToyParams& params, int cutoff) {
    FockVector v(cutoff);
    v.amps[0] = (M_PI_2 - params.alpha) * kInvSqrt2;
    v.amps[1] = -params.eta;
    return v;
}

bool expansion_valid_toy(const ToyParams& params) {
    return params.eta <= 0.05 && (M_PI_2 - params.alpha) <= 0.05;
}

double two_level_mean_q(const ToyParams& params) {
    const double a = (M_PI_2 - params.alpha) * kInvSqrt2;
    return -2.0 * a * params.eta / (a * a + params.eta * params.eta);
}

} // namespace wmqdc::toy
