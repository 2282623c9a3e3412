#pragma once

// Truncated Fock-space kernel for a single bosonic mode: states, ladder and
// quadrature operators, coherent states, displacement, inner products and
// expectation values. Internal units set hbar = 1 and sigma = 1, so the
// position quadrature is c + c^dag and the momentum quadrature is
// -i(c - c^dag); callers report the dimensionless ratios <q>/sigma and
// <p>/(hbar/2sigma) directly.

#include <complex>

#include <Eigen/Dense>

#include "wmqdc/errors.hpp"

namespace wmqdc::fock {

using cplx = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

inline constexpr double kNormEps = 1e-10;
inline constexpr double kTailBound = 1e-12;     // max |amp[cutoff]|^2 for any produced state
inline constexpr double kDegenerateNorm = 1e-14;

// Complex amplitudes over number states 0..cutoff.
struct FockVector {
    Vec amps;

    FockVector() = default;
    explicit FockVector(int cutoff) : amps(Vec::Zero(cutoff + 1)) {}
    explicit FockVector(Vec a) : amps(std::move(a)) {}

    int cutoff() const { return static_cast<int>(amps.size()) - 1; }
    double norm() const { return amps.norm(); }
    double squared_norm() const { return amps.squaredNorm(); }
};

enum class OperatorKind { annihilation, creation, position, momentum, number, custom };

struct ModeOperator {
    Mat matrix;
    OperatorKind kind = OperatorKind::custom;
};

// c: nonzero entries sqrt(n) at (n-1, n) only.
ModeOperator annihilation(int cutoff);
ModeOperator creation(int cutoff);
ModeOperator number_op(int cutoff);
// q/sigma = c + c^dag
ModeOperator position_op(int cutoff);
// p/(hbar/2sigma) = -i(c - c^dag)
ModeOperator momentum_op(int cutoff);

FockVector vacuum(int cutoff);
FockVector number_state(int n, int cutoff);

// amp[n] = exp(-|beta|^2/2) beta^n / sqrt(n!). Throws TruncationError when the
// cutoff violates the tail rule for this beta.
FockVector coherent_state(cplx beta, int cutoff);

// exp(eta c^dag - conj(eta) c), evaluated through a Hermitian
// eigendecomposition so it is unitary up to floating point and serves as an
// independent check of coherent_state.
Mat displacement_matrix(cplx eta, int cutoff);
FockVector displace(const FockVector& state, cplx eta);

// Conjugate-linear in the first argument. Throws on cutoff mismatch.
cplx inner(const FockVector& a, const FockVector& b);

cplx expect(const FockVector& state, const ModeOperator& op);
// <psi|A|psi> / <psi|psi>; throws DegeneratePostselectionError on (near-)zero norm.
cplx normalized_expect(const FockVector& state, const ModeOperator& op);

// Smallest cutoff whose Poisson tail for |beta_max|^2 drops below 1e-14,
// never less than 16.
int auto_cutoff(double beta_max);

// Enforces |amp[cutoff]|^2 <= 1e-12.
void check_tail(const FockVector& state, const char* context);

// Rotate a global phase so the largest-magnitude amplitude is real-positive.
FockVector fix_global_phase(FockVector state);

// Unnormalized conditional pointer/mirror state plus the success probability
// of the postselection that produced it.
struct ConditionalResult {
    FockVector state;       // unnormalized
    double probability = 0; // squared norm of the projected component
};

} // namespace wmqdc::fock
