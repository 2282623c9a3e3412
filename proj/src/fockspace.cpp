#include "wmqdc/fockspace.hpp"

#include <cmath>
#include <string>

namespace wmqdc::fock {

namespace {
const cplx kI{0.0, 1.0};
}

ModeOperator annihilation(int cutoff) {
    Mat m = Mat::Zero(cutoff + 1, cutoff + 1);
    for (int n = 1; n <= cutoff; ++n) m(n - 1, n) = std::sqrt(static_cast<double>(n));
    return {std::move(m), OperatorKind::annihilation};
}

ModeOperator creation(int cutoff) {
    Mat m = annihilation(cutoff).matrix.adjoint();
    return {std::move(m), OperatorKind::creation};
}

ModeOperator number_op(int cutoff) {
    Mat m = Mat::Zero(cutoff + 1, cutoff + 1);
    for (int n = 0; n <= cutoff; ++n) m(n, n) = static_cast<double>(n);
    return {std::move(m), OperatorKind::number};
}

ModeOperator position_op(int cutoff) {
    Mat c = annihilation(cutoff).matrix;
    Mat m = c + c.adjoint();
    return {std::move(m), OperatorKind::position};
}

ModeOperator momentum_op(int cutoff) {
    Mat c = annihilation(cutoff).matrix;
    Mat m = -kI * (c - Mat(c.adjoint()));
    return {std::move(m), OperatorKind::momentum};
}

FockVector vacuum(int cutoff) {
    FockVector v(cutoff);
    v.amps[0] = 1.0;
    return v;
}

FockVector number_state(int n, int cutoff) {
    if (n < 0 || n > cutoff) throw ConfigError("number_state: n out of range");
    FockVector v(cutoff);
    v.amps[n] = 1.0;
    return v;
}

FockVector coherent_state(cplx beta, int cutoff) {
    if (cutoff < 1) throw ConfigError("coherent_state: cutoff must be >= 1");
    FockVector v(cutoff);
    v.amps[0] = std::exp(-0.5 * std::norm(beta));
    for (int n = 1; n <= cutoff; ++n)
        v.amps[n] = v.amps[n - 1] * beta / std::sqrt(static_cast<double>(n));
    check_tail(v, "coherent_state");
    return v;
}

Mat displacement_matrix(cplx eta, int cutoff) {
    const Mat c = annihilation(cutoff).matrix;
    // G = eta c^dag - conj(eta) c is anti-Hermitian; exp(G) = exp(-iH), H = iG.
    Mat h = kI * (eta * Mat(c.adjoint()) - std::conj(eta) * c);
    Eigen::SelfAdjointEigenSolver<Mat> es(h);
    Vec phases(cutoff + 1);
    for (int j = 0; j <= cutoff; ++j) phases[j] = std::exp(-kI * es.eigenvalues()[j]);
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

FockVector displace(const FockVector& state, cplx eta) {
    FockVector out(Vec(displacement_matrix(eta, state.cutoff()) * state.amps));
    check_tail(out, "displace");
    return out;
}

cplx inner(const FockVector& a, const FockVector& b) {
    if (a.cutoff() != b.cutoff())
        throw ConfigError("inner: cutoff mismatch (" + std::to_string(a.cutoff()) + " vs " +
                          std::to_string(b.cutoff()) + ")");
    return a.amps.dot(b.amps);
}

cplx expect(const FockVector& state, const ModeOperator& op) {
    return state.amps.dot(op.matrix * state.amps);
}

cplx normalized_expect(const FockVector& state, const ModeOperator& op) {
    const double n2 = state.squared_norm();
    if (state.norm() < kDegenerateNorm)
        throw DegeneratePostselectionError("normalized_expect: zero-norm state");
    return expect(state, op) / n2;
}

int auto_cutoff(double beta_max) {
    const double lambda = beta_max * beta_max;
    double term = std::exp(-lambda);
    double cum = term;
    int n = 0;
    while (1.0 - cum >= 1e-14 && n < 512) {
        ++n;
        term *= lambda / n;
        cum += term;
    }
    return std::max(16, n + 1);
}

void check_tail(const FockVector& state, const char* context) {
    const double tail = std::norm(state.amps[state.cutoff()]);
    if (tail > kTailBound)
        throw TruncationError(std::string(context) + ": |amp[cutoff]|^2 = " +
                              std::to_string(tail) + " exceeds tail bound; increase cutoff");
}

FockVector fix_global_phase(FockVector state) {
    int imax = 0;
    double amax = 0.0;
    for (int n = 0; n <= state.cutoff(); ++n) {
        const double a = std::abs(state.amps[n]);
        if (a > amax) {
            amax = a;
            imax = n;
        }
    }
    if (amax > 0.0) state.amps *= std::conj(state.amps[imax] / amax);
    return state;
}

} // namespace wmqdc::fock
