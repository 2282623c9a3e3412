#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "wmqdc/sweep.hpp"

using namespace wmqdc;
using namespace wmqdc::sweep;

namespace {

opto::OptoParams make(double k, double alpha_frac) {
    opto::OptoParams p;
    p.k = k;
    p.alpha = alpha_frac * M_PI_2;
    return p;
}

const std::vector<std::string> kAllCols{"q", "p", "prob", "arrival"};

} // namespace

TEST_CASE("tau grid") {
    std::vector<double> g = tau_grid(0.0, 1.0, 5);
    REQUIRE(g.size() == 5);
    CHECK(g.front() == 0.0);
    CHECK(g.back() == 1.0);
    for (size_t i = 1; i < g.size(); ++i) CHECK(g[i] > g[i - 1]);
}

TEST_CASE("serial and parallel kernels are bit-identical") {
    opto::OptoParams p = make(0.005, 0.996);
    SweepSeries a = run_sweep(p, 0.0, 4.0 * M_PI, 500, Exec::serial);
    SweepSeries b = run_sweep(p, 0.0, 4.0 * M_PI, 500, Exec::parallel);
    REQUIRE(a.points.size() == b.points.size());
    for (size_t i = 0; i < a.points.size(); ++i) {
        CHECK(a.points[i].tau == b.points[i].tau);
        CHECK(a.points[i].q == b.points[i].q);
        CHECK(a.points[i].p == b.points[i].p);
        CHECK(a.points[i].prob_success == b.points[i].prob_success);
        CHECK(a.points[i].arrival_density == b.points[i].arrival_density);
    }
}

TEST_CASE("sweep values agree with pointwise evaluation") {
    opto::OptoParams p = make(0.01, 0.9);
    SweepSeries s = run_sweep(p, 0.5, 6.0, 12);
    for (const SweepPoint& pt : s.points) {
        REQUIRE(pt.q.has_value());
        CHECK(*pt.q == opto::mean_q(p, pt.tau));
        CHECK(*pt.p == opto::mean_p(p, pt.tau));
        CHECK(pt.prob_success == opto::success_probability(p, pt.tau));
    }
}

TEST_CASE("degenerate points leave q and p empty") {
    // alpha = pi/2 at tau = 0: postselected norm vanishes
    SweepSeries s = run_sweep(make(0.005, 1.0), 0.0, M_PI, 10);
    CHECK_FALSE(s.points[0].q.has_value());
    CHECK_FALSE(s.points[0].p.has_value());
    CHECK(s.points[1].q.has_value());
    CHECK(s.points[0].prob_success >= 0.0);
}

TEST_CASE("csv output") {
    SweepSeries s = run_sweep(make(0.005, 1.0), 0.0, M_PI, 6);
    s.label = "demo";
    std::ostringstream os;
    write_csv(os, {s}, kAllCols);
    const std::string text = os.str();

    CHECK(text.rfind("tau,q_over_sigma,p_over_hbar2sigma,prob_success,arrival_density\n", 0) == 0);
    CHECK(text.find("# series demo") != std::string::npos);
    CHECK(text.find("nan") == std::string::npos);

    // the degenerate first row keeps its field slots empty
    std::istringstream is(text);
    std::string line;
    std::getline(is, line); // header
    std::getline(is, line); // series comment
    std::getline(is, line); // tau = 0 row
    CHECK(line.substr(line.size() - 2) != ",,");
    CHECK(line.find(",,,") != std::string::npos);

    // column selection blanks out the unselected slots
    std::ostringstream probonly;
    write_csv(probonly, {s}, {"prob"});
    std::istringstream is2(probonly.str());
    std::getline(is2, line);
    CHECK(line == "tau,q_over_sigma,p_over_hbar2sigma,prob_success,arrival_density");
    std::getline(is2, line);
    std::getline(is2, line);
    CHECK(line.substr(line.size() - 1) == ",");

    // byte-identical on repeat
    std::ostringstream os2;
    write_csv(os2, {s}, kAllCols);
    CHECK(os.str() == os2.str());
}

TEST_CASE("json output") {
    SweepSeries s = run_sweep(make(0.005, 0.996), 0.0, 2.0, 4);
    s.label = "j";
    std::ostringstream os;
    write_json(os, {s}, kAllCols);
    const std::string text = os.str();
    CHECK(text.find("\"j\"") != std::string::npos);
    CHECK(text.find("q_over_sigma") != std::string::npos);
    CHECK(text.find("nan") == std::string::npos);
}
