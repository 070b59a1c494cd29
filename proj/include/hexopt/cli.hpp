#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace hexopt {

// One certificate entry.
struct CheckItem {
    std::string check_name;
    bool passed = false;
    double margin = 0.0;
    nlohmann::json inputs = nlohmann::json::object();
};

struct SuiteReport {
    std::string suite;
    std::vector<CheckItem> items;

    bool passed() const;
    nlohmann::json to_json() const;
};

// all | design | minimality | inequalities | energy.
const std::vector<std::string>& suite_names();

// Throws std::invalid_argument for an unknown name.
SuiteReport run_suite(const std::string& suite, std::uint64_t seed = 20240601);

// Supported α range for raw-difference probes.
inline constexpr double probe_alpha_min = 0.6;
inline constexpr double probe_alpha_max = 5.0;

struct ProbeConfig {
    std::vector<double> alphas;
    std::vector<int> periods;
    int trials = 1;
    std::uint64_t seed = 7;
    // Fixed sup-norm; min(1/α, r⋆/20) when absent.
    std::optional<double> sup_norm;
};

struct ProbeTrial {
    double alpha = 0.0;
    int N = 1;
    int trial = 0;
    double sup_norm = 0.0;
    double energy_diff = 0.0;
    double error_bound = 0.0;
    double fs = 0.0;
    double sm = 0.0;
    double ratio = 0.0;  // energy_diff / (e^{-παr⋆²} fs); 0 when excluded
    bool excluded = false;  // constant perturbation
    bool certified = false;  // energy_diff - error_bound >= 0
};

struct ProbeReport {
    std::uint64_t seed = 0;
    int trials = 0;
    std::vector<ProbeTrial> rows;
    double min_ratio = 0.0;

    bool all_certified() const;
    nlohmann::json to_json() const;
};

// Throws std::invalid_argument on trials < 1, empty lists, N < 1, a sup-norm above r⋆/20,
// or α outside [probe_alpha_min, probe_alpha_max].
ProbeReport probe(const ProbeConfig& config);

// Writes grid_n² rows "ux,uy,psi,gap" over H after a header line. Throws
// std::invalid_argument for grid_n < 8 and std::runtime_error naming the path on I/O failure.
void landscape(double alpha, double v_angle, int grid_n, const std::string& out_path);

}  // namespace hexopt
