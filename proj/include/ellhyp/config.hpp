#pragma once

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "common.hpp"

namespace ellhyp {

struct RunConfig {
    double tol = 1e-10;       // quadrature
    double ode_tol = 1e-5;
    double tau_min = 0.05;
    int max_level = 10;
    std::string format = "json";
    std::uint64_t seed = 20240611;

    void validate() const {
        if (!(tol > 0) || !(ode_tol > 0)) throw PreconditionError("config: tolerances must be positive");
        if (!(tau_min > 0)) throw PreconditionError("config: tau_min must be positive");
        if (max_level < 1 || max_level > 14) throw PreconditionError("config: max_level must be in [1,14]");
        if (format != "json" && format != "csv") throw PreconditionError("config: format must be json or csv");
    }

    void set(const std::string& key, const std::string& value) {
        if (key == "tol") tol = std::stod(value);
        else if (key == "ode_tol") ode_tol = std::stod(value);
        else if (key == "tau_min") tau_min = std::stod(value);
        else if (key == "max_level") max_level = std::stoi(value);
        else if (key == "format") format = value;
        else if (key == "seed") seed = std::stoull(value);
        else throw PreconditionError("config: unknown key '" + key + "'");
    }
};

inline std::string trim_ws(const std::string& s) {
    const char* ws = " \t\r\n";
    auto b = s.find_first_not_of(ws);
    if (b == std::string::npos) return "";
    return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

// key = value lines; '#' starts a comment
inline RunConfig parse_config(std::istream& in) {
    RunConfig c;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = trim_ws(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw PreconditionError("config: line " + std::to_string(lineno) + " lacks '='");
        c.set(trim_ws(line.substr(0, eq)), trim_ws(line.substr(eq + 1)));
    }
    c.validate();
    return c;
}

// file named by ELLHYP_CONFIG, defaults otherwise
inline RunConfig load_config() {
    const char* path = std::getenv("ELLHYP_CONFIG");
    if (!path || !*path) return RunConfig{};
    std::ifstream f(path);
    if (!f) throw PreconditionError(std::string("config: cannot open ") + path);
    return parse_config(f);
}

}  // namespace ellhyp
