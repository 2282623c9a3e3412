#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wmqdc/optomech.hpp"

using namespace wmqdc;
using namespace wmqdc::opto;

namespace {

OptoParams make(double k, double alpha_frac) {
    OptoParams p;
    p.k = k;
    p.alpha = alpha_frac * M_PI_2;
    return p;
}

} // namespace

TEST_CASE("kerr state fields") {
    OptoParams p = make(0.005, 0.5);
    KerrState ks = kerr_state(p, 0.0);
    CHECK(ks.phase == 0.0);
    CHECK(std::abs(ks.amp) == 0.0);

    ks = kerr_state(p, M_PI);
    CHECK(ks.phase == doctest::Approx(0.005 * 0.005 * M_PI).epsilon(1e-12));
    CHECK(ks.amp.real() == doctest::Approx(0.01).epsilon(1e-12));
    CHECK(std::abs(ks.amp.imag()) <= 1e-15);

    ks = kerr_state(p, 2.0 * M_PI);
    CHECK(std::abs(ks.amp) <= 1e-15);
    CHECK(ks.phase == doctest::Approx(2.0 * M_PI * 0.005 * 0.005).epsilon(1e-12));

    // |amp| <= 2k everywhere
    for (double tau = 0; tau < 13.0; tau += 0.37)
        CHECK(std::abs(kerr_state(p, tau).amp) <= 2.0 * p.k + 1e-15);
}

TEST_CASE("parameter validation") {
    OptoParams p = make(0.3, 0.5);
    CHECK_THROWS_AS(p.validate(), ConfigError);
    p = make(0.005, 0.5);
    p.kappa_ratio = 0.0;
    CHECK_THROWS_AS(p.validate(), ConfigError);
    CHECK(make(0.25, 1.0).effective_cutoff() >= 16);
}

TEST_CASE("conditional mirror state") {
    SUBCASE("tau = 0 collapses to vacuum") {
        OptoParams p = make(0.005, 0.5);
        auto res = mirror_conditional(p, 0.0);
        CHECK(res.state.amps[0].real() ==
              doctest::Approx(std::cos(p.alpha) / (2.0 * std::sqrt(2.0))).epsilon(1e-12));
        for (int n = 1; n <= res.state.cutoff(); ++n) CHECK(std::abs(res.state.amps[n]) == 0.0);
        CHECK(mean_q(p, 0.0) == doctest::Approx(0.0));
    }

    SUBCASE("alpha = 0 is the bare coherent push") {
        OptoParams p = make(0.005, 0.0);
        CHECK(mean_q(p, M_PI) == doctest::Approx(4.0 * p.k).epsilon(1e-10));
        CHECK(mean_q(p, M_PI, Route::state_path) == doctest::Approx(4.0 * p.k).epsilon(1e-10));
    }

    SUBCASE("amplified point reaches -1") {
        OptoParams p = make(0.005, 0.996);
        CHECK(mean_q(p, M_PI) == doctest::Approx(-1.0).epsilon(0.02));
    }

    SUBCASE("degenerate point raises") {
        OptoParams p = make(0.005, 1.0);
        CHECK_THROWS_AS((void)mirror_conditional(p, 0.0), DegeneratePostselectionError);
        CHECK_THROWS_AS((void)mean_q(p, 0.0), DegeneratePostselectionError);
    }
}

TEST_CASE("state path agrees with closed form") {
    for (double k : {0.001, 0.005, 0.01, 0.1})
        for (double afrac : {0.0, 0.5, 0.9, 0.996, 0.9995, 1.0})
            for (int it = 0; it < 25; ++it) {
                const double tau = 4.0 * M_PI * it / 24.0;
                OptoParams p = make(k, afrac);
                // below ~1e-6 postselection probability the state-path
                // normalization amplifies roundoff past the 1e-10 budget
                if (success_probability(p, tau) < 1e-6) continue;
                double dq, dp;
                try {
                    dq = std::abs(mean_q(p, tau) - mean_q(p, tau, Route::state_path));
                    dp = std::abs(mean_p(p, tau) - mean_p(p, tau, Route::state_path));
                } catch (const DegeneratePostselectionError&) {
                    continue;
                }
                CHECK(dq <= 1e-10);
                CHECK(dp <= 1e-10);
            }
}

TEST_CASE("periodicity at alpha = 0") {
    OptoParams p = make(0.01, 0.0);
    for (double tau : {0.3, 1.7, 2.9})
        CHECK(std::abs(mean_q(p, tau) - mean_q(p, tau + 2.0 * M_PI)) <= 1e-12);
}

TEST_CASE("bounds over the grid") {
    for (double k : {0.001, 0.005, 0.01, 0.1})
        for (double afrac : {0.0, 0.5, 0.9, 0.996, 0.9995, 1.0})
            for (int it = 0; it < 60; ++it) {
                const double tau = 4.0 * M_PI * it / 59.0;
                OptoParams p = make(k, afrac);
                try {
                    const double q = std::abs(mean_q(p, tau));
                    const double pm = std::abs(mean_p(p, tau));
                    CHECK(q <= 1.0 + 10.0 * k);
                    CHECK(pm <= 1.0 + 10.0 * k);
                } catch (const DegeneratePostselectionError&) {
                }
                const double prob = success_probability(p, tau);
                CHECK(prob >= 0.0);
                CHECK(prob <= 1.0);
            }
}

TEST_CASE("odd expansion") {
    OptoParams p = make(0.005, 0.996);
    const double a = (M_PI_2 - p.alpha) / std::sqrt(2.0);

    fock::FockVector v = expansion_odd(p, 16);
    CHECK(v.amps[0].real() == doctest::Approx(a).epsilon(1e-12));
    CHECK(v.amps[1].real() == doctest::Approx(-0.005).epsilon(1e-12));

    CHECK(mean_q_odd(p) == doctest::Approx(-0.993).epsilon(1e-3));

    // minimum -1 exactly at k = (pi/2 - alpha)/sqrt(2)
    OptoParams opt = p;
    opt.k = a;
    CHECK(mean_q_odd(opt) == doctest::Approx(-1.0).epsilon(1e-12));

    CHECK(mean_q_odd(make(0.005, 1.0)) == doctest::Approx(0.0));
    CHECK(odd_window_valid(p, M_PI));
    CHECK_FALSE(odd_window_valid(p, M_PI + 0.5));
}

TEST_CASE("even expansion") {
    OptoParams p = make(0.005, 0.999);
    const double a = (M_PI_2 - p.alpha) / std::sqrt(2.0);
    const double dtau = 2.0 * a / p.k; // extremum where k(tau-T)/2 matches a

    CHECK(mean_p_even(p, 2.0 * M_PI) == doctest::Approx(0.0));
    CHECK(mean_p_even(p, 2.0 * M_PI + dtau) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(mean_p_even(p, 2.0 * M_PI - dtau) == doctest::Approx(1.0).epsilon(1e-12));

    fock::FockVector v = expansion_even(p, 2.0 * M_PI + 0.05, 16);
    CHECK(v.amps[1].real() == doctest::Approx(0.0));
    CHECK(v.amps[1].imag() == doctest::Approx(-0.5 * p.k * 0.05).epsilon(1e-10));
}

TEST_CASE("expansion agreement with the closed form near its windows") {
    for (double k : {0.002, 0.005, 0.01})
        for (double gap_frac : {0.002, 0.004, 0.008}) {
            OptoParams p = make(k, 1.0 - gap_frac);
            // the two-level truncation drops |2> terms of relative weight
            // ~ k^2/(pi/2-alpha); keep the hierarchy so 5% is meaningful
            if (M_PI_2 - p.alpha < 40.0 * k * k) continue;
            const double full = mean_q(p, M_PI);
            CHECK(std::abs(full - mean_q_odd(p)) <= 0.05 * std::max(std::abs(full), 0.01));

            for (double dt : {-0.05, 0.03}) {
                const double tau = 2.0 * M_PI + dt;
                const double fp = mean_p(p, tau);
                CHECK(std::abs(fp - mean_p_even(p, tau)) <= 0.05 * std::max(std::abs(fp), 0.01));
            }
        }
}

TEST_CASE("success probability") {
    SUBCASE("alpha = 0 is tau-independent") {
        OptoParams p = make(0.01, 0.0);
        const double p0 = success_probability(p, 0.0);
        CHECK(p0 == doctest::Approx(1.0 / 8.0).epsilon(1e-12));
        for (double tau : {0.5, 2.0, 5.0, 11.0})
            CHECK(success_probability(p, tau) == doctest::Approx(p0).epsilon(1e-12));
    }

    SUBCASE("tau = 0 equals the squared vacuum prefactor") {
        OptoParams p = make(0.005, 0.996);
        const double ca = std::cos(p.alpha);
        CHECK(success_probability(p, 0.0) == doctest::Approx(ca * ca / 8.0).epsilon(1e-12));
        // printed-scale convention is exactly 4x the joint probability at tau=0
        CHECK(success_probability_paper_scale(p, 0.0) ==
              doctest::Approx(ca * ca / 2.0).epsilon(1e-12));
    }
}

TEST_CASE("arrival density") {
    OptoParams p = make(0.005, 0.996);
    p.kappa_ratio = 0.25;
    std::vector<double> grid;
    for (int i = 0; i < 200; ++i) grid.push_back(4.0 * M_PI * i / 199.0);
    const std::vector<double> d = arrival_density(p, grid);
    CHECK(d[0] == doctest::Approx(p.kappa_ratio * success_probability(p, 0.0)).epsilon(1e-12));
    for (double v : d) CHECK(v >= 0.0);
}

TEST_CASE("amplification factor") {
    CHECK(amplification_factor(make(0.005, 0.996)) == doctest::Approx(50.0));
    CHECK(amplification_factor(make(0.25, 0.996)) == doctest::Approx(1.0));
    CHECK(amplification_factor(make(0.05, 0.996)) == doctest::Approx(5.0));
}

TEST_CASE("printed forms diverge from the derived ones") {
    OptoParams p = make(0.1, 0.9);
    const double tau = 1.3;
    CHECK(std::abs(paper_literal::mean_q_eq25(p, tau) - mean_q(p, tau)) > 1e-6);
    CHECK(std::abs(paper_literal::mean_p_eq29(p, tau) - mean_p(p, tau)) > 1e-6);
    CHECK(std::abs(paper_literal::success_probability_eq31(p, tau) -
                   success_probability_paper_scale(p, tau)) > 1e-6);
    CHECK(std::abs(paper_literal::mean_q_odd_eq28(make(0.005, 0.996)) -
                   mean_q_odd(make(0.005, 0.996))) > 1e-3);
}
