#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "wmqdc/config.hpp"
#include "wmqdc/oracle.hpp"
#include "wmqdc/sweep.hpp"

namespace {

using wmqdc::cli::RunConfig;
using wmqdc::opto::OptoParams;
using wmqdc::sweep::SweepSeries;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitDeviation = 3;
constexpr int kExitTruncation = 4;

struct CommonOpts {
    std::string config_path;
    std::string out_path;
    std::string format = "csv";
    RunConfig overrides;
    bool has_k = false, has_alpha = false, has_tau_start = false, has_tau_stop = false;
    bool has_steps = false, has_cutoff = false, has_kappa = false, has_literal = false;
    std::string cutoff_text;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_path, "JSON config file");
    cmd->add_option("--k", o.overrides.k, "dimensionless coupling g/omega_m")
        ->each([&](const std::string&) { o.has_k = true; });
    cmd->add_option("--alpha-frac", o.overrides.alpha_over_halfpi,
                    "ancilla angle as a fraction of pi/2")
        ->each([&](const std::string&) { o.has_alpha = true; });
    cmd->add_option("--tau-start", o.overrides.tau_start, "sweep start (omega_m t)")
        ->each([&](const std::string&) { o.has_tau_start = true; });
    cmd->add_option("--tau-stop", o.overrides.tau_stop, "sweep stop (omega_m t)")
        ->each([&](const std::string&) { o.has_tau_stop = true; });
    cmd->add_option("--steps", o.overrides.steps, "grid points")
        ->each([&](const std::string&) { o.has_steps = true; });
    cmd->add_option("--cutoff", o.cutoff_text, "Fock cutoff (integer or 'auto')")
        ->each([&](const std::string&) { o.has_cutoff = true; });
    cmd->add_option("--kappa-ratio", o.overrides.kappa_ratio, "kappa/omega_m")
        ->each([&](const std::string&) { o.has_kappa = true; });
    cmd->add_flag("--paper-literal", o.overrides.paper_literal,
                  "evaluate the printed formulas verbatim and report divergence")
        ->each([&](const std::string&) { o.has_literal = true; });
    cmd->add_option("--out", o.out_path, "output file (default stdout)");
    cmd->add_option("--format", o.format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
}

RunConfig resolve(const CommonOpts& o) {
    RunConfig c;
    if (!o.config_path.empty()) c = wmqdc::cli::load_config(o.config_path);
    if (o.has_k) c.k = o.overrides.k;
    if (o.has_alpha) c.alpha_over_halfpi = o.overrides.alpha_over_halfpi;
    if (o.has_tau_start) c.tau_start = o.overrides.tau_start;
    if (o.has_tau_stop) c.tau_stop = o.overrides.tau_stop;
    if (o.has_steps) c.steps = o.overrides.steps;
    if (o.has_cutoff) {
        if (o.cutoff_text == "auto")
            c.cutoff = 0;
        else
            c.cutoff = std::stoi(o.cutoff_text);
    }
    if (o.has_kappa) c.kappa_ratio = o.overrides.kappa_ratio;
    if (o.has_literal) c.paper_literal = o.overrides.paper_literal;
    c.validate();
    return c;
}

void emit(const CommonOpts& o, const std::vector<SweepSeries>& series,
          const std::vector<std::string>& columns) {
    std::ostringstream buf;
    if (o.format == "json")
        wmqdc::sweep::write_json(buf, series, columns);
    else
        wmqdc::sweep::write_csv(buf, series, columns);
    if (o.out_path.empty()) {
        std::cout << buf.str();
    } else {
        std::ofstream out(o.out_path, std::ios::binary);
        if (!out) throw wmqdc::ConfigError("cannot open output file '" + o.out_path + "'");
        out << buf.str();
    }
}

std::string series_label(const OptoParams& p) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "k=%g alpha_frac=%g kappa_ratio=%g", p.k,
                  p.alpha / M_PI_2, p.kappa_ratio);
    return buf;
}

int cmd_fig(const CommonOpts& o, const std::vector<double>& alpha_fracs,
            const std::vector<double>& kappa_ratios, const std::vector<std::string>& columns) {
    const RunConfig c = resolve(o);
    std::vector<SweepSeries> series;
    for (double af : alpha_fracs.empty() ? std::vector<double>{c.alpha_over_halfpi}
                                         : alpha_fracs)
        for (double kr : kappa_ratios.empty() ? std::vector<double>{c.kappa_ratio}
                                              : kappa_ratios) {
            OptoParams p = c.opto_params();
            p.alpha = af * M_PI_2;
            p.kappa_ratio = kr;
            SweepSeries s = wmqdc::sweep::run_sweep(p, c.tau_start, c.tau_stop, c.steps);
            s.label = series_label(p);
            series.push_back(std::move(s));
        }
    emit(o, series, columns);
    return kExitOk;
}

int cmd_point(const CommonOpts& o, double tau) {
    const RunConfig c = resolve(o);
    OptoParams p = c.opto_params();
    nlohmann::json rec;
    rec["k"] = p.k;
    rec["alpha_over_halfpi"] = c.alpha_over_halfpi;
    rec["tau"] = tau;
    rec["degenerate"] = false;
    try {
        rec["q_over_sigma"] = wmqdc::opto::mean_q(p, tau);
        rec["p_over_hbar2sigma"] = wmqdc::opto::mean_p(p, tau);
    } catch (const wmqdc::DegeneratePostselectionError&) {
        rec["degenerate"] = true;
        rec["q_over_sigma"] = nullptr;
        rec["p_over_hbar2sigma"] = nullptr;
    }
    rec["prob_success"] = wmqdc::opto::success_probability(p, tau);
    if (wmqdc::opto::odd_window_valid(p, tau)) {
        nlohmann::json ex;
        ex["mean_q_odd"] = wmqdc::opto::mean_q_odd(p);
        if (!rec["degenerate"].get<bool>())
            ex["delta_q"] = std::abs(wmqdc::opto::mean_q_odd(p) -
                                     rec["q_over_sigma"].get<double>());
        rec["expansion_odd"] = ex;
    }
    if (wmqdc::opto::even_window_valid(p, tau)) {
        nlohmann::json ex;
        ex["mean_p_even"] = wmqdc::opto::mean_p_even(p, tau);
        if (!rec["degenerate"].get<bool>())
            ex["delta_p"] = std::abs(wmqdc::opto::mean_p_even(p, tau) -
                                     rec["p_over_hbar2sigma"].get<double>());
        rec["expansion_even"] = ex;
    }
    if (c.paper_literal) {
        rec["paper_literal_q_re"] = wmqdc::opto::paper_literal::mean_q_eq25(p, tau).real();
        rec["paper_literal_p_re"] = wmqdc::opto::paper_literal::mean_p_eq29(p, tau).real();
    }
    std::string text = rec.dump(2) + "\n";
    if (o.out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(o.out_path, std::ios::binary);
        out << text;
    }
    return kExitOk;
}

int cmd_check(const CommonOpts& o) {
    const RunConfig c = resolve(o);
    wmqdc::oracle::CrosscheckGrid grid;
    grid.cutoff = c.cutoff;
    const wmqdc::oracle::CrosscheckReport rep =
        wmqdc::oracle::crosscheck(grid, c.paper_literal);
    if (rep.evaluated == 0) {
        std::cerr << "check: every grid point is degenerate; adjust the grid\n";
        return kExitConfig;
    }
    std::printf("crosscheck: %d points evaluated, %d degenerate points skipped\n",
                rep.evaluated, rep.skipped_degenerate);
    std::printf("  max |closed form - oracle|  <q>/sigma        : %.3e\n", rep.max_dev_q);
    std::printf("  max |closed form - oracle|  <p>/(hbar/2sigma): %.3e\n", rep.max_dev_p);
    std::printf("  max |closed form - oracle|  success prob     : %.3e\n", rep.max_dev_prob);
    std::printf("  worst point: k=%g alpha_frac=%g tau=%g\n", rep.worst_k,
                rep.worst_alpha_frac, rep.worst_tau);
    if (!rep.literal_divergences.empty()) {
        std::printf("\nprinted-form adjudication (|printed - derived| over the grid):\n");
        std::printf("  %-32s %-14s %s\n", "equation", "max divergence", "verdict");
        for (const auto& d : rep.literal_divergences)
            std::printf("  %-32s %-14.3e %s\n", d.equation.c_str(), d.max_divergence,
                        d.printed_form_matches ? "matches derived form"
                                               : "diverges from derived form");
    }
    if (!rep.pass()) {
        std::printf("crosscheck FAILED: max deviation %.3e >= 1e-8\n", rep.max_deviation());
        return kExitDeviation;
    }
    std::printf("crosscheck passed: max deviation %.3e < 1e-8\n", rep.max_deviation());
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Postselected weak-measurement / quantum-delayed-choice simulator"};
    app.require_subcommand(1);

    CommonOpts fig3o, fig4o, fig5o, checko, pointo, sweepo;
    double point_tau = M_PI;

    CLI::App* fig3 = app.add_subcommand("fig3", "mirror <q>/sigma vs tau for three angles");
    add_common(fig3, fig3o);
    CLI::App* fig4 =
        app.add_subcommand("fig4", "mirror <p>/(hbar/2sigma) vs tau for three angles");
    add_common(fig4, fig4o);
    CLI::App* fig5 =
        app.add_subcommand("fig5", "photon arrival density for omega_m/kappa in {1,2,4}");
    add_common(fig5, fig5o);
    CLI::App* check = app.add_subcommand("check", "oracle crosscheck of the closed forms");
    add_common(check, checko);
    CLI::App* point = app.add_subcommand("point", "single-point evaluation as JSON");
    add_common(point, pointo);
    point->add_option("--tau", point_tau, "dimensionless time omega_m t");
    CLI::App* sweepc = app.add_subcommand("sweep", "single-series sweep with config outputs");
    add_common(sweepc, sweepo);

    CLI11_PARSE(app, argc, argv);

    try {
        if (fig3->parsed())
            return cmd_fig(fig3o, {0.996, 0.9995, 1.0}, {}, {"q", "prob"});
        if (fig4->parsed())
            return cmd_fig(fig4o, {0.996, 0.999, 1.0}, {}, {"p", "prob"});
        if (fig5->parsed())
            return cmd_fig(fig5o, {}, {1.0, 0.5, 0.25}, {"prob", "arrival"});
        if (check->parsed()) return cmd_check(checko);
        if (point->parsed()) return cmd_point(pointo, point_tau);
        if (sweepc->parsed()) {
            const RunConfig c = resolve(sweepo);
            SweepSeries s = wmqdc::sweep::run_sweep(c.opto_params(), c.tau_start, c.tau_stop,
                                                    c.steps);
            s.label = series_label(c.opto_params());
            emit(sweepo, {std::move(s)}, c.outputs);
            return kExitOk;
        }
    } catch (const wmqdc::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const wmqdc::TruncationError& e) {
        std::cerr << "truncation failure: " << e.what() << "\n";
        return kExitTruncation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitOk;
}
