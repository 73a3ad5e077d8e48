#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cpdyn/oracle.hpp"
#include "cpdyn/potential.hpp"

namespace cpdyn::cli {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class OutputFormat { csv, json };

enum class OracleRoute { mode_sum, single_sum, both };

struct RunConfig {
    SystemParams params;
    EvalOptions eval;
    OracleCtrl oracle;

    Vec3 point_R = Vec3(0.0, 0.0, 1.0);
    double point_t = 0.0;

    // sweep points lie along sweep_direction at the distances in R_grid
    Vec3 sweep_direction = Vec3::UnitZ();
    std::vector<double> R_grid;
    std::vector<double> t_grid;

    // reduced (x, tau) pairs, oriented along sweep_direction
    std::vector<std::pair<double, double>> oracle_points;
    OracleRoute oracle_route = OracleRoute::both;
    double oracle_bound = 0.02;

    std::vector<int> check_only;
    double check_perturb_tensor = 0.0;

    OutputFormat format = OutputFormat::csv;
    // empty or "-" writes to standard output
    std::string out_path;
};

using KeyValues = std::map<std::string, std::string>;

// "key = value" lines; '#' starts a comment; later keys win
KeyValues parse_key_values(const std::string& text);
KeyValues read_config_file(const std::string& path);

// natural units, k0 = 1, mu_A along z, static_constant B with alpha0 = 1
RunConfig default_config();

// applies the keys on top of default_config(); unknown keys and malformed or
// out-of-range values raise ConfigError
RunConfig build_config(const KeyValues& kv);

std::vector<std::string> known_keys();

}  // namespace cpdyn::cli
