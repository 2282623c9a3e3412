#pragma once

// Time-grid sweeps of the closed-form observables. The parallel kernel is an
// OpenMP loop over grid points; the serial kernel is the reference. Both
// write each point independently by index, so their outputs are bit-identical.

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "wmqdc/optomech.hpp"

namespace wmqdc::sweep {

enum class Exec { serial, parallel };

struct SweepPoint {
    double tau = 0;
    std::optional<double> q;       // empty at degenerate points
    std::optional<double> p;       // empty at degenerate points
    double prob_success = 0;
    double arrival_density = 0;
};

struct SweepSeries {
    std::string label;
    opto::OptoParams params;
    std::vector<SweepPoint> points;
};

std::vector<double> tau_grid(double tau_start, double tau_stop, int steps);

SweepSeries run_sweep(const opto::OptoParams& params, double tau_start, double tau_stop,
                      int steps, Exec exec = Exec::parallel);

// Fixed header tau,q_over_sigma,p_over_hbar2sigma,prob_success,arrival_density.
// Each series is preceded by a '# series <label>' comment line; missing values
// serialize as empty fields. `columns` selects which data columns are filled
// (subset of {"q","p","prob","arrival"}).
void write_csv(std::ostream& os, const std::vector<SweepSeries>& series,
               const std::vector<std::string>& columns);

void write_json(std::ostream& os, const std::vector<SweepSeries>& series,
                const std::vector<std::string>& columns);

} // namespace wmqdc::sweep
