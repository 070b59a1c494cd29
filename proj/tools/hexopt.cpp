#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hexopt/cli.hpp"
#include "hexopt/energy.hpp"
#include "hexopt/perturbation.hpp"

namespace {

constexpr int kPass = 0;
constexpr int kCheckFailure = 1;
constexpr int kUsage = 2;
constexpr int kIo = 3;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void emit(const nlohmann::json& doc, const std::string& out_path) {
    const std::string text = doc.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out || !(out << text)) throw IoError("cannot write " + out_path);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hexagonal lattice local-optimality verifier"};
    app.require_subcommand(1);

    std::string out_path;
    std::optional<std::uint64_t> seed_flag;

    auto* suite_cmd = app.add_subcommand("suite", "run a verification suite and print a JSON certificate");
    std::string suite = "all";
    suite_cmd->add_option("--suite", suite, "all | design | minimality | inequalities | energy");
    suite_cmd->add_option("--seed", seed_flag, "seed for randomized checks");
    suite_cmd->add_option("--out", out_path, "certificate path (stdout when absent)");

    auto* probe_cmd = app.add_subcommand("probe", "random local-optimality probes");
    std::vector<double> alphas{0.8, 1.0, 2.0, 4.0};
    std::vector<int> periods{2, 3, 4, 6};
    int trials = 200;
    std::optional<double> sup_norm;
    probe_cmd->add_option("--alpha", alphas, "α values in [0.6, 5]")->delimiter(',');
    probe_cmd->add_option("--n-period", periods, "periods N")->delimiter(',');
    probe_cmd->add_option("--trials", trials, "trials per (α, N)");
    probe_cmd->add_option("--seed", seed_flag, "base seed (default 7)");
    probe_cmd->add_option("--sup-norm", sup_norm, "fixed sup-norm; default min(1/α, r⋆/20)");
    probe_cmd->add_option("--out", out_path, "report path (stdout when absent)");

    auto* land_cmd = app.add_subcommand("landscape", "export Ψ over the Voronoi cell as CSV");
    double land_alpha = 1.0;
    double v_angle = 0.0;
    int grid = 60;
    std::string land_out;
    land_cmd->add_option("--alpha", land_alpha, "α > 0");
    land_cmd->add_option("--v-angle", v_angle, "direction of v in radians");
    land_cmd->add_option("--grid", grid, "grid_n >= 8");
    land_cmd->add_option("--out", land_out, "CSV path")->required();

    auto* energy_cmd = app.add_subcommand("energy", "perturbed Gaussian energy difference");
    std::string json_path;
    double energy_alpha = 1.0;
    double tol = 1e-14;
    energy_cmd->add_option("--json", json_path, "perturbation file")->required();
    energy_cmd->add_option("--alpha", energy_alpha, "α > 0");
    energy_cmd->add_option("--tol", tol, "truncation tolerance");
    energy_cmd->add_option("--out", out_path, "result path (stdout when absent)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kPass : kUsage;
    }

    try {
        if (*suite_cmd) {
            const hexopt::SuiteReport report = hexopt::run_suite(suite, seed_flag.value_or(20240601));
            emit(report.to_json(), out_path);
            return report.passed() ? kPass : kCheckFailure;
        }
        if (*probe_cmd) {
            hexopt::ProbeConfig config;
            config.alphas = alphas;
            config.periods = periods;
            config.trials = trials;
            config.seed = seed_flag.value_or(7);
            config.sup_norm = sup_norm;
            const hexopt::ProbeReport report = hexopt::probe(config);
            emit(report.to_json(), out_path);
            return report.all_certified() ? kPass : kCheckFailure;
        }
        if (*land_cmd) {
            hexopt::landscape(land_alpha, v_angle, grid, land_out);
            return kPass;
        }
        if (*energy_cmd) {
            const hexopt::PeriodicPerturbation p = hexopt::load_perturbation(json_path);
            const hexopt::EnergyValue e = hexopt::perturbed_energy_diff(p, energy_alpha, tol);
            emit({{"alpha", energy_alpha},
                  {"N", p.period()},
                  {"energy_diff", e.value},
                  {"error_bound", e.error_bound},
                  {"terms_used", e.terms_used},
                  {"fs", hexopt::fs_size(p)},
                  {"sm", hexopt::sm_size(p)}},
                 out_path);
            return kPass;
        }
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIo;
    }
    return kUsage;
}
