// Compares the serial reference sweep kernel against the OpenMP kernel and
// verifies that both produce identical output.

#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "wmqdc/oracle.hpp"
#include "wmqdc/sweep.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP not enabled; parallel kernels run serially\n");
#endif

    wmqdc::opto::OptoParams params;
    params.k = 0.005;
    params.alpha = 0.996 * M_PI_2;
    const int steps = 200000;

    auto t0 = Clock::now();
    const auto serial =
        wmqdc::sweep::run_sweep(params, 0.0, 4.0 * M_PI, steps, wmqdc::sweep::Exec::serial);
    const double ts = seconds_since(t0);

    t0 = Clock::now();
    const auto par =
        wmqdc::sweep::run_sweep(params, 0.0, 4.0 * M_PI, steps, wmqdc::sweep::Exec::parallel);
    const double tp = seconds_since(t0);

    bool identical = serial.points.size() == par.points.size();
    for (size_t i = 0; identical && i < serial.points.size(); ++i)
        identical = serial.points[i].q == par.points[i].q &&
                    serial.points[i].p == par.points[i].p &&
                    serial.points[i].prob_success == par.points[i].prob_success &&
                    serial.points[i].arrival_density == par.points[i].arrival_density;

    std::printf("sweep (%d points):      serial %.3fs  parallel %.3fs  speedup %.2fx  %s\n",
                steps, ts, tp, ts / tp, identical ? "bit-identical" : "MISMATCH");

    wmqdc::oracle::CrosscheckGrid grid;
    t0 = Clock::now();
    const auto rep_s = wmqdc::oracle::crosscheck(grid, false, false);
    const double cs = seconds_since(t0);
    t0 = Clock::now();
    const auto rep_p = wmqdc::oracle::crosscheck(grid, false, true);
    const double cp = seconds_since(t0);
    const bool same = rep_s.max_dev_q == rep_p.max_dev_q &&
                      rep_s.max_dev_p == rep_p.max_dev_p &&
                      rep_s.max_dev_prob == rep_p.max_dev_prob;
    std::printf("oracle crosscheck grid: serial %.3fs  parallel %.3fs  speedup %.2fx  %s\n",
                cs, cp, cs / cp, same ? "bit-identical" : "MISMATCH");
    return identical && same ? 0 : 1;
}
