#include "wmqdc/oracle.hpp"

#include <cmath>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace wmqdc::oracle {

namespace {

const fock::cplx kI{0.0, 1.0};
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

ProtocolOutcome run_protocol_full_with(const MirrorEvolver& ev, const OptoParams& params,
                                       double tau) {
    const int dim = ev.cutoff() + 1;
    using Slice = Eigen::VectorXcd;
    const double ca = std::cos(params.alpha);
    const double sa = std::sin(params.alpha);

    // Bell input + symmetric first beam splitter. Indices: [anc pol][signal pol],
    // path A/B; the signal polarization equals the ancilla's before the EOM.
    // anc/sig pol: 0 = H, 1 = V.
    Slice zero = Slice::Zero(dim);
    zero[0] = 0.5; // 1/2 prefactor of the post-BS state
    Slice armA[2][2] = {{zero, Slice::Zero(dim)}, {Slice::Zero(dim), zero}};
    Slice armB[2][2] = {{zero, Slice::Zero(dim)}, {Slice::Zero(dim), zero}};

    // Weak optomechanical interaction: arm A couples, arm B evolves freely.
    for (int anc = 0; anc < 2; ++anc)
        for (int pol = 0; pol < 2; ++pol) {
            armA[anc][pol] = ev.evolve(FockVector(Slice(armA[anc][pol])), true, tau).amps;
            armB[anc][pol] = ev.evolve(FockVector(Slice(armB[anc][pol])), false, tau).amps;
        }

    // PDBS: total reflection for H (A->C, B->D); 50/50 for V with the internal
    // convention A -> (-C + D)/sqrt(2), B -> (C + D)/sqrt(2).
    Slice armC[2][2], armD[2][2];
    for (int anc = 0; anc < 2; ++anc) {
        armC[anc][0] = armA[anc][0];
        armD[anc][0] = armB[anc][0];
        armC[anc][1] = kInvSqrt2 * (-armA[anc][1] + armB[anc][1]);
        armD[anc][1] = kInvSqrt2 * (armA[anc][1] + armB[anc][1]);
    }

    // Erasure PBS_1/PBS_2 at 45 deg: C -> {a', a''}, D -> {b', b''}; the
    // output modes carry a definite diagonal polarization, so the signal
    // polarization index collapses. Ports: 0=a', 1=a'', 2=b', 3=b''.
    Slice port[2][4];
    for (int anc = 0; anc < 2; ++anc) {
        port[anc][0] = kInvSqrt2 * (armC[anc][0] - armC[anc][1]);
        port[anc][1] = kInvSqrt2 * (armC[anc][0] + armC[anc][1]);
        port[anc][2] = kInvSqrt2 * (armD[anc][0] - armD[anc][1]);
        port[anc][3] = kInvSqrt2 * (armD[anc][0] + armD[anc][1]);
    }

    // EOM rotation of the ancilla polarization by alpha.
    ProtocolOutcome out;
    Slice rotated[2][4];
    for (int p = 0; p < 4; ++p) {
        rotated[0][p] = ca * port[0][p] - sa * port[1][p];
        rotated[1][p] = sa * port[0][p] + ca * port[1][p];
    }
    for (int anc = 0; anc < 2; ++anc)
        for (int p = 0; p < 4; ++p)
            out.probabilities[anc * 4 + p] = rotated[anc][p].squaredNorm();

    // PBS_3 + D_H on the ancilla, then the dark port D_a'.
    FockVector dark{Slice(rotated[0][0])};
    out.dark_port.probability = dark.squared_norm();
    out.dark_port.state = fock::fix_global_phase(std::move(dark));
    return out;
}

} // namespace

MirrorEvolver::MirrorEvolver(double k, int cutoff) : k_(k), cutoff_(cutoff) {
    fock::Mat h = fock::number_op(cutoff).matrix - k * fock::position_op(cutoff).matrix;
    Eigen::SelfAdjointEigenSolver<fock::Mat> es(h);
    evals_ = es.eigenvalues();
    evecs_ = es.eigenvectors();
}

FockVector MirrorEvolver::evolve(const FockVector& mirror, bool photon_in_A, double tau) const {
    if (mirror.cutoff() != cutoff_) throw ConfigError("MirrorEvolver: cutoff mismatch");
    if (!photon_in_A) {
        FockVector out = mirror;
        for (int n = 0; n <= cutoff_; ++n) out.amps[n] *= std::exp(-kI * (double(n) * tau));
        return out;
    }
    Eigen::VectorXcd phases(cutoff_ + 1);
    for (int j = 0; j <= cutoff_; ++j) phases[j] = std::exp(-kI * (evals_[j] * tau));
    return FockVector(Eigen::VectorXcd(
        evecs_ * (phases.asDiagonal() * (evecs_.adjoint() * mirror.amps))));
}

FockVector evolve_optomech(const FockVector& mirror, bool photon_in_A, double k, double tau) {
    MirrorEvolver ev(k, mirror.cutoff());
    return ev.evolve(mirror, photon_in_A, tau);
}

ProtocolOutcome run_protocol_full(const OptoParams& params, double tau) {
    params.validate();
    MirrorEvolver ev(params.k, params.effective_cutoff());
    return run_protocol_full_with(ev, params, tau);
}

ConditionalResult run_protocol(const OptoParams& params, double tau) {
    ProtocolOutcome out = run_protocol_full(params, tau);
    if (out.dark_port.state.norm() < fock::kDegenerateNorm)
        throw DegeneratePostselectionError("run_protocol: zero-norm conditional state");
    return out.dark_port;
}

double CrosscheckReport::max_deviation() const {
    return std::max(max_dev_q, std::max(max_dev_p, max_dev_prob));
}

CrosscheckReport crosscheck(const CrosscheckGrid& grid, bool paper_literal, bool parallel) {
    const int nk = static_cast<int>(grid.ks.size());
    const int na = static_cast<int>(grid.alpha_fracs.size());
    const int nt = grid.tau_points;
    const int total = nk * na * nt;

    std::vector<MirrorEvolver> evolvers;
    std::vector<fock::ModeOperator> qops, pops;
    evolvers.reserve(nk);
    for (int ik = 0; ik < nk; ++ik) {
        OptoParams p;
        p.k = grid.ks[ik];
        p.cutoff = grid.cutoff;
        const int cut = p.effective_cutoff();
        evolvers.emplace_back(grid.ks[ik], cut);
        qops.push_back(fock::position_op(cut));
        pops.push_back(fock::momentum_op(cut));
    }

    const double nan = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> dq(total, nan), dp(total, nan), dprob(total, nan);

#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
    for (int idx = 0; idx < total; ++idx) {
        const int ik = idx / (na * nt);
        const int ia = (idx / nt) % na;
        const int it = idx % nt;
        OptoParams p;
        p.k = grid.ks[ik];
        p.alpha = grid.alpha_fracs[ia] * M_PI_2;
        p.cutoff = grid.cutoff > 0 ? grid.cutoff : evolvers[ik].cutoff();
        const double tau = grid.tau_stop * it / (nt - 1);

        ProtocolOutcome oc = run_protocol_full_with(evolvers[ik], p, tau);
        // Comparison conditioning: the dark-port amplitudes come out of a
        // near-total destructive interference, so their relative accuracy is
        // ~1e-13 / sqrt(prob). Below prob ~ 1e-9 the normalized expectations
        // carry more than 1e-8 of roundoff, so such points count as
        // (near-)degenerate rather than as disagreement.
        if (oc.dark_port.probability < 1e-9) continue;
        try {
            const double oq = fock::normalized_expect(oc.dark_port.state, qops[ik]).real();
            const double op = fock::normalized_expect(oc.dark_port.state, pops[ik]).real();
            dq[idx] = std::abs(opto::mean_q(p, tau) - oq);
            dp[idx] = std::abs(opto::mean_p(p, tau) - op);
            dprob[idx] = std::abs(opto::success_probability(p, tau) - oc.dark_port.probability);
        } catch (const DegeneratePostselectionError&) {
            dq[idx] = dp[idx] = dprob[idx] = nan; // borderline point, skip
        }
    }

    CrosscheckReport rep;
    for (int idx = 0; idx < total; ++idx) {
        if (std::isnan(dq[idx])) {
            ++rep.skipped_degenerate;
            continue;
        }
        ++rep.evaluated;
        const double worst = std::max(dq[idx], std::max(dp[idx], dprob[idx]));
        if (worst > rep.max_deviation()) {
            const int ik = idx / (na * nt);
            const int ia = (idx / nt) % na;
            const int it = idx % nt;
            rep.worst_k = grid.ks[ik];
            rep.worst_alpha_frac = grid.alpha_fracs[ia];
            rep.worst_tau = grid.tau_stop * it / (nt - 1);
        }
        rep.max_dev_q = std::max(rep.max_dev_q, dq[idx]);
        rep.max_dev_p = std::max(rep.max_dev_p, dp[idx]);
        rep.max_dev_prob = std::max(rep.max_dev_prob, dprob[idx]);
    }

    if (paper_literal) {
        EquationDivergence e25{"Eq. (25) <q>", 0, false};
        EquationDivergence e29{"Eq. (29) <p>", 0, false};
        EquationDivergence e31{"Eq. (31) success probability", 0, false};
        EquationDivergence e28{"Eq. (28) expansion <q>", 0, false};
        for (int ik = 0; ik < nk; ++ik)
            for (int ia = 0; ia < na; ++ia)
                for (int it = 0; it < nt; ++it) {
                    OptoParams p;
                    p.k = grid.ks[ik];
                    p.alpha = grid.alpha_fracs[ia] * M_PI_2;
                    p.cutoff = grid.cutoff > 0 ? grid.cutoff : evolvers[ik].cutoff();
                    const double tau = grid.tau_stop * it / (nt - 1);
                    try {
                        e25.max_divergence =
                            std::max(e25.max_divergence,
                                     std::abs(opto::paper_literal::mean_q_eq25(p, tau) -
                                              opto::mean_q(p, tau)));
                        e29.max_divergence =
                            std::max(e29.max_divergence,
                                     std::abs(opto::paper_literal::mean_p_eq29(p, tau) -
                                              opto::mean_p(p, tau)));
                    } catch (const DegeneratePostselectionError&) {
                    }
                    e31.max_divergence = std::max(
                        e31.max_divergence,
                        std::abs(opto::paper_literal::success_probability_eq31(p, tau) -
                                 opto::success_probability_paper_scale(p, tau)));
                }
        // Eq. (28) only holds in its small-quantity window.
        for (double k : {0.001, 0.003, 0.005, 0.01})
            for (double afrac : {0.996, 0.998, 0.9995}) {
                OptoParams p;
                p.k = k;
                p.alpha = afrac * M_PI_2;
                e28.max_divergence =
                    std::max(e28.max_divergence,
                             std::abs(opto::paper_literal::mean_q_odd_eq28(p) -
                                      opto::mean_q_odd(p)));
            }
        for (EquationDivergence* e : {&e25, &e28, &e29, &e31})
            e->printed_form_matches = e->max_divergence < 1e-10;
        rep.literal_divergences = {e25, e28, e29, e31};
    }
    return rep;
}

} // namespace wmqdc::oracle
