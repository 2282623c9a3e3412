#include "wmqdc/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <json.hpp>

namespace wmqdc::sweep {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

SweepPoint eval_point(const opto::OptoParams& params, double tau) {
    SweepPoint pt;
    pt.tau = tau;
    pt.prob_success = opto::success_probability(params, tau);
    pt.arrival_density =
        params.kappa_ratio * std::exp(-params.kappa_ratio * tau) * pt.prob_success;
    try {
        pt.q = opto::mean_q(params, tau);
        pt.p = opto::mean_p(params, tau);
    } catch (const DegeneratePostselectionError&) {
        // recorded as missing values, not an abort
    }
    return pt;
}

bool has(const std::vector<std::string>& cols, const char* name) {
    return std::find(cols.begin(), cols.end(), name) != cols.end();
}

} // namespace

std::vector<double> tau_grid(double tau_start, double tau_stop, int steps) {
    if (steps < 2) throw ConfigError("tau_grid: steps must be >= 2");
    if (!(tau_stop > tau_start)) throw ConfigError("tau_grid: tau_stop must exceed tau_start");
    std::vector<double> grid(steps);
    for (int i = 0; i < steps; ++i)
        grid[i] = tau_start + (tau_stop - tau_start) * i / (steps - 1);
    return grid;
}

SweepSeries run_sweep(const opto::OptoParams& params, double tau_start, double tau_stop,
                      int steps, Exec exec) {
    params.validate();
    const std::vector<double> grid = tau_grid(tau_start, tau_stop, steps);
    SweepSeries series;
    series.params = params;
    series.points.resize(steps);
    if (exec == Exec::parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
        for (int i = 0; i < steps; ++i) series.points[i] = eval_point(params, grid[i]);
    } else {
        for (int i = 0; i < steps; ++i) series.points[i] = eval_point(params, grid[i]);
    }
    return series;
}

void write_csv(std::ostream& os, const std::vector<SweepSeries>& series,
               const std::vector<std::string>& columns) {
    os << "tau,q_over_sigma,p_over_hbar2sigma,prob_success,arrival_density\n";
    for (const SweepSeries& s : series) {
        if (!s.label.empty()) os << "# series " << s.label << "\n";
        for (const SweepPoint& pt : s.points) {
            os << fmt(pt.tau) << ',';
            if (has(columns, "q") && pt.q) os << fmt(*pt.q);
            os << ',';
            if (has(columns, "p") && pt.p) os << fmt(*pt.p);
            os << ',';
            if (has(columns, "prob")) os << fmt(pt.prob_success);
            os << ',';
            if (has(columns, "arrival")) os << fmt(pt.arrival_density);
            os << '\n';
        }
    }
}

void write_json(std::ostream& os, const std::vector<SweepSeries>& series,
                const std::vector<std::string>& columns) {
    nlohmann::json out = nlohmann::json::array();
    for (const SweepSeries& s : series) {
        nlohmann::json js;
        js["label"] = s.label;
        js["k"] = s.params.k;
        js["alpha_over_halfpi"] = s.params.alpha / M_PI_2;
        js["kappa_ratio"] = s.params.kappa_ratio;
        nlohmann::json rows = nlohmann::json::array();
        for (const SweepPoint& pt : s.points) {
            nlohmann::json row;
            row["tau"] = pt.tau;
            if (has(columns, "q")) row["q_over_sigma"] = pt.q ? nlohmann::json(*pt.q) : nullptr;
            if (has(columns, "p"))
                row["p_over_hbar2sigma"] = pt.p ? nlohmann::json(*pt.p) : nullptr;
            if (has(columns, "prob")) row["prob_success"] = pt.prob_success;
            if (has(columns, "arrival")) row["arrival_density"] = pt.arrival_density;
            rows.push_back(std::move(row));
        }
        js["rows"] = std::move(rows);
        out.push_back(std::move(js));
    }
    os << out.dump(2) << "\n";
}

} // namespace wmqdc::sweep
