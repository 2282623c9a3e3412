#pragma once

// Run configuration shared by the CLI subcommands. JSON in/out; unknown keys
// are rejected and serialization round-trips bit-exactly.

#include <string>
#include <vector>

#include "wmqdc/optomech.hpp"

namespace wmqdc::cli {

struct RunConfig {
    double k = 0.005;
    double alpha_over_halfpi = 0.996;
    int cutoff = 0; // 0 = auto
    double tau_start = 0.0;
    double tau_stop = 4.0 * M_PI;
    int steps = 2000;
    double kappa_ratio = 0.25; // kappa / omega_m
    std::vector<std::string> outputs{"q", "p", "prob", "arrival"};
    bool paper_literal = false;

    void validate() const;
    opto::OptoParams opto_params() const;

    bool operator==(const RunConfig&) const = default;
};

RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);
std::string serialize_config(const RunConfig& config);

} // namespace wmqdc::cli
