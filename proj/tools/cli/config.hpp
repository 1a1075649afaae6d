#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "heunwell/wavepackets.hpp"

namespace heunwell::cli {

/// Bad configuration or command line; maps to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct AxisSpec {
    double min = -6.0;
    double max = 6.0;
    int n = 241;
};

struct RunConfig {
    struct Potential {
        double V0 = 74.785;
        double d = 1.0;
    } potential;
    struct Quantiser {
        int n_eval = 1000;
        double tol = 1e-17;
        int grid_density = 40;
    } quantiser;
    WavepacketSpec packet = DleSpec{7.0, 0.25};
    struct Times {
        double t_start = 0.0;
        double t_end = 200.0;
        int n_samples = 4001;
    } times;
    struct Frequencies {
        int k = 5;
        double relative_threshold = 0.1;
        double flat_tolerance = 1e-3;
    } frequencies;
    struct Wigner {
        AxisSpec x{-6.0, 6.0, 241};
        AxisSpec p{-10.0, 10.0, 401};
        std::vector<double> snapshots{0.0, 0.4, 1.0};
        std::set<int> indices;  // empty: all states
    } wigner;
    struct Eigenfunctions {
        AxisSpec x{-8.0, 8.0, 801};
    } eigenfunctions;
    struct Validate {
        double fd_L = 12.0;
        int fd_n = 4001;
        double dt = 1e-3;
        double t_end = 4.0;
        int sample_every = 10;
    } validate;
    std::filesystem::path output_dir = "out";
};

/// Built-in defaults as JSON (the same values as a default-constructed RunConfig).
nlohmann::json default_config_json();

/// Applies `--a.b.c value` style overrides. Values are parsed as JSON when
/// possible, otherwise taken as strings. Unknown paths raise ConfigError.
void apply_override(nlohmann::json& cfg, const std::string& dotted, const std::string& value);

/// Recursively merges `patch` into `base`; keys absent from base raise ConfigError.
void merge_config(nlohmann::json& base, const nlohmann::json& patch, const std::string& where = "");

/// Typed view with every field checked against the owning module's preconditions.
RunConfig parse_config(const nlohmann::json& j);

nlohmann::json packet_to_json(const WavepacketSpec& spec);
WavepacketSpec packet_from_json(const nlohmann::json& j);

/// Comma separated list of integers, e.g. "0,2".
std::set<int> parse_indices(const std::string& text);

}  // namespace heunwell::cli
