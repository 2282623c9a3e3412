#include "wmqdc/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace wmqdc::cli {

using nlohmann::json;

void RunConfig::validate() const {
    if (!(k > 0.0) || k > 0.25) throw ConfigError("config: k must lie in (0, 0.25]");
    if (alpha_over_halfpi < 0.0 || alpha_over_halfpi > 1.0)
        throw ConfigError("config: alpha_over_halfpi must lie in [0, 1]");
    if (cutoff < 0) throw ConfigError("config: cutoff must be >= 0 (0 = auto)");
    if (steps < 2) throw ConfigError("config: steps must be >= 2");
    if (!(tau_stop > tau_start)) throw ConfigError("config: tau_stop must exceed tau_start");
    if (!(kappa_ratio > 0.0)) throw ConfigError("config: kappa_ratio must be > 0");
    static const std::set<std::string> known{"q", "p", "prob", "arrival"};
    for (const std::string& o : outputs)
        if (!known.count(o)) throw ConfigError("config: unknown output '" + o + "'");
}

opto::OptoParams RunConfig::opto_params() const {
    opto::OptoParams p;
    p.k = k;
    p.alpha = alpha_over_halfpi * M_PI_2;
    p.cutoff = cutoff;
    p.kappa_ratio = kappa_ratio;
    return p;
}

RunConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config: top level must be a JSON object");
    static const std::set<std::string> known{
        "k",     "alpha_over_halfpi", "cutoff",  "tau_start",    "tau_stop",
        "steps", "kappa_ratio",       "outputs", "paper_literal"};
    for (const auto& [key, value] : j.items())
        if (!known.count(key)) throw ConfigError("config: unknown key '" + key + "'");

    RunConfig c;
    try {
        if (j.contains("k")) c.k = j["k"].get<double>();
        if (j.contains("alpha_over_halfpi"))
            c.alpha_over_halfpi = j["alpha_over_halfpi"].get<double>();
        if (j.contains("cutoff")) {
            if (j["cutoff"].is_string()) {
                if (j["cutoff"].get<std::string>() != "auto")
                    throw ConfigError("config: cutoff must be an integer or \"auto\"");
                c.cutoff = 0;
            } else {
                c.cutoff = j["cutoff"].get<int>();
            }
        }
        if (j.contains("tau_start")) c.tau_start = j["tau_start"].get<double>();
        if (j.contains("tau_stop")) c.tau_stop = j["tau_stop"].get<double>();
        if (j.contains("steps")) c.steps = j["steps"].get<int>();
        if (j.contains("kappa_ratio")) c.kappa_ratio = j["kappa_ratio"].get<double>();
        if (j.contains("outputs")) c.outputs = j["outputs"].get<std::vector<std::string>>();
        if (j.contains("paper_literal")) c.paper_literal = j["paper_literal"].get<bool>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    c.validate();
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& c) {
    json j;
    j["k"] = c.k;
    j["alpha_over_halfpi"] = c.alpha_over_halfpi;
    j["cutoff"] = c.cutoff;
    j["tau_start"] = c.tau_start;
    j["tau_stop"] = c.tau_stop;
    j["steps"] = c.steps;
    j["kappa_ratio"] = c.kappa_ratio;
    j["outputs"] = c.outputs;
    j["paper_literal"] = c.paper_literal;
    return j.dump(2);
}

} // namespace wmqdc::cli
