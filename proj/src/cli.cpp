#include "hexopt/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "hexopt/design.hpp"
#include "hexopt/energy.hpp"
#include "hexopt/lattice.hpp"
#include "hexopt/minimality.hpp"
#include "hexopt/perturbation.hpp"
#include "hexopt/rng.hpp"

namespace hexopt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

CheckItem item(std::string name, double margin, nlohmann::json inputs, bool strict = false) {
    CheckItem c;
    c.check_name = std::move(name);
    c.passed = strict ? margin > 0.0 : margin >= 0.0;
    c.margin = margin;
    c.inputs = std::move(inputs);
    return c;
}

// Uniform point of 3Ω.
Vec2 sample_three_omega(Rng& rng) {
    const LatticeGeometry& g = geometry();
    const Vec2 k = rng.uniform() * g.sigma_hat + rng.uniform() * g.tau_hat;
    return 3.0 * voronoi_reduce(k, LatticeKind::reciprocal);
}

// Uniform point of H.
Vec2 sample_cell(Rng& rng) {
    const LatticeGeometry& g = geometry();
    return voronoi_reduce(rng.uniform() * g.sigma + rng.uniform() * g.tau);
}

void design_suite(std::vector<CheckItem>& out, std::uint64_t seed) {
    {
        double lo = kInf;
        double eig_gap = 0.0;
        double trace_gap = 0.0;
        int used = 0;
        for (const Vec2& k : cell_grid(100, LatticeKind::reciprocal)) {
            DesignMatrix d;
            try {
                d = geom_matrix(k);
            } catch (const DegenerateWeights&) {
                continue;
            }
            ++used;
            lo = std::min(lo, d.lambda_min);
            eig_gap = std::max(eig_gap, std::fabs(eigen(d.M).lambda1 - d.lambda_min));
            trace_gap = std::max(trace_gap, std::fabs(trace(d.M) - 1.0));
        }
        out.push_back(item("design.lambda_min_grid", lo - (0.25 - 1e-12),
                           {{"points", used}, {"observed_min", lo}}));
        out.push_back(item("design.lambda_min_sharpness", 0.2501 - lo, {{"observed_min", lo}}));
        out.push_back(item("design.lambda_min_matches_eigen", 1e-12 - eig_gap, {{"max_gap", eig_gap}}));
        out.push_back(item("design.trace_one", 1e-12 - trace_gap, {{"max_gap", trace_gap}}));
    }
    {
        Rng rng(seed, 1);
        double lo = kInf;
        double w_gap = kInf;
        double trig = 0.0;
        const int n = 100000;
        for (int i = 0; i < n; ++i) {
            const Vec2 k = sample_three_omega(rng);
            const WInequality w = w_inequality_check(k);
            w_gap = std::min(w_gap, w.lhs - w.rhs);
            trig = std::max(trig, std::fabs((w.lhs - w.rhs) - w.trig_gap));
            try {
                lo = std::min(lo, geom_matrix(k).lambda_min);
            } catch (const DegenerateWeights&) {
            }
        }
        out.push_back(item("design.lambda_min_random", lo - (0.25 - 1e-12),
                           {{"samples", n}, {"observed_min", lo}}));
        out.push_back(item("design.w_inequality", w_gap + 1e-12, {{"samples", n}, {"min_gap", w_gap}}));
        out.push_back(item("design.w_inequality_trig_route", 1e-12 - trig, {{"max_disagreement", trig}}));
    }
    for (const double r : {r_star, std::sqrt(3.0) * r_star}) {
        const Shell shell = shell_of_radius(r);
        double min_ratio = kInf;
        double worst = kInf;
        double plancherel = 0.0;
        for (int t = 0; t < 1000; ++t) {
            Rng rng(seed, 1000 + static_cast<std::uint64_t>(t));
            const int N = 2 + t % 7;
            const PeriodicPerturbation p = random_perturbation(N, max_sup_norm, rng);
            const PeriodicDesignCheck c = periodic_two_design_check(p, shell);
            worst = std::min(worst, c.lhs - c.rhs + 1e-12 * (1.0 + c.rhs));
            if (c.rhs > 0.0) min_ratio = std::min(min_ratio, c.lhs / c.rhs);
            const double scale = 1.0 + std::max(c.lhs, c.rhs);
            plancherel = std::max({plancherel, std::fabs(c.lhs - c.spectral_lhs) / scale,
                                   std::fabs(c.rhs - c.spectral_rhs) / scale});
        }
        const std::string tag = r == r_star ? "first_shell" : "second_shell";
        out.push_back(item("design.periodic_two_design_" + tag, worst,
                           {{"radius", r}, {"trials", 1000}, {"min_ratio", min_ratio}}));
        out.push_back(item("design.plancherel_" + tag, 1e-10 - plancherel,
                           {{"radius", r}, {"max_relative_gap", plancherel}}));
    }
    {
        double dev = 0.0;
        double defect = 0.0;
        Rng rng(seed, 3);
        for (const LatticeKind kind : {LatticeKind::direct, LatticeKind::reciprocal}) {
            for (const Shell& s : enumerate_ball(4.0 * r_star + 1e-9, true, kind)) {
                if (s.radius == 0.0) continue;
                dev = std::max(dev, design_moment_check(s, 5, 50, seed));
                if (kind == LatticeKind::direct) {
                    for (int i = 0; i < 100; ++i) {
                        defect = std::max(defect, std::fabs(two_design_defect(s, rng.in_disk(1.0))));
                    }
                }
            }
        }
        out.push_back(item("design.five_design_moments", 1e-10 - dev, {{"max_deviation", dev}}));
        out.push_back(item("design.two_design_identity", 1e-12 - defect, {{"max_defect", defect}}));
        const double neg = power_moment_deviation(shell_of_radius(r_star), {1.0, 0.0}, 6);
        out.push_back(item("design.degree_six_negative_control", neg - 1e-3, {{"deviation", neg}}, true));
    }
}

void minimality_suite(std::vector<CheckItem>& out, std::uint64_t seed) {
    {
        Rng rng(seed, 10);
        double worst = 0.0;
        double bound = 0.0;
        const double alphas[3] = {0.5, 1.0, 2.0};
        for (int i = 0; i < 1000; ++i) {
            const double a = alphas[i % 3];
            const Vec2 u = sample_cell(rng);
            const Vec2 v = unit(rng.uniform(0.0, M_PI));
            const PsiEvaluation d = psi_eval(a, v, u, SumSide::direct, 1e-13);
            const PsiEvaluation q = psi_eval(a, v, u, SumSide::dual, 1e-13);
            worst = std::max(worst, std::fabs(d.value - q.value));
            bound = std::max({bound, d.error_bound, q.error_bound});
        }
        out.push_back(item("minimality.psi_direct_dual_agreement", 1e-10 - worst,
                           {{"triples", 1000}, {"max_gap", worst}, {"max_error_bound", bound}}));
    }
    {
        Rng rng(seed, 11);
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const double a = rng.uniform(0.05, 5.0);
            const Vec2 u = sample_cell(rng);
            const Vec2 v = unit(rng.uniform(0.0, M_PI));
            const double p = psi_eval(a, v, u).value;
            const double m = psi_eval(a, v, -u).value;
            worst = std::max(worst, std::fabs(p - m) / std::max(p, 1e-300));
        }
        out.push_back(item("minimality.psi_even", 1e-12 - worst, {{"max_relative_gap", worst}}));
    }
    {
        const GapScanResult fine = psi_gap_scan(log_grid(alpha_scan_floor, alpha_dagger, 60),
                                                half_circle_grid(24), cell_grid(60));
        out.push_back(item("minimality.gap_scan_positive", fine.min_gap - fine.error_at_min,
                           {{"min_gap", fine.min_gap},
                            {"alpha", fine.alpha},
                            {"v_angle", fine.v_angle},
                            {"ux", fine.u.x},
                            {"uy", fine.u.y},
                            {"evaluations", fine.evaluations},
                            {"max_relative_error", fine.max_relative_error}},
                           true));
        const GapScanResult coarse = psi_gap_scan(log_grid(alpha_scan_floor, alpha_dagger, 30),
                                                  half_circle_grid(12), cell_grid(30));
        const double change = std::fabs(coarse.min_gap - fine.min_gap) / fine.min_gap;
        out.push_back(item("minimality.gap_scan_halving_stability", 0.01 - change,
                           {{"fine_min", fine.min_gap}, {"coarse_min", coarse.min_gap}}));
    }
    {
        double worst = 0.0;
        for (const double a : {0.05, 0.3, 1.0, 3.0}) {
            for (int k = 0; k < 6; ++k) {
                const Vec2 d = unit(0.37 + k * M_PI / 6.0);
                const Vec2 v = unit(1.1 + 0.5 * k);
                const double g1 = psi_gap(a, v, 1e-2 * d).value;
                const double g2 = psi_gap(a, v, 1e-3 * d).value;
                worst = std::max(worst, std::fabs(g1 - g2) / std::fabs(g2));
            }
        }
        out.push_back(item("minimality.gap_small_u_limit", 0.05 - worst, {{"max_relative_change", worst}}));
    }
    {
        double lo = kInf;
        int uncertified = 0;
        long count = 0;
        const double abar = inequality_constants().alpha_bar;
        for (const double a : log_grid(alpha_scan_floor, abar, 20)) {
            for (const double t : half_circle_grid(24)) {
                for (const Vec2& u : cell_grid(30)) {
                    if (norm2(u) == 0.0) continue;
                    const FirstShellAudit c = first_shell_case_audit(u, a, unit(t));
                    ++count;
                    if (!c.certified) ++uncertified;
                    lo = std::min(lo, c.gap);
                }
            }
        }
        out.push_back(item("minimality.first_shell_floor", lo - first_shell_floor,
                           {{"points", count}, {"min_gap", lo}, {"floor", first_shell_floor}}));
        out.push_back(item("minimality.first_shell_regime_bounds", static_cast<double>(-uncertified),
                           {{"points", count}, {"uncertified", uncertified}}));
    }
    {
        const double end = r_star / std::sqrt(3.0);
        int failures = 0;
        double branch = 0.0;
        for (int i = 1; i <= 200; ++i) {
            const double rho = end * i / 200.0;
            for (int j = 0; j <= 100; ++j) {
                const double phi = M_PI / 6.0 + (M_PI / 6.0) * j / 100.0;
                const ChainRecord c = worstcase_chain_eval(rho, phi);
                if (!c.N_positive || !c.H_above_pi3 || !c.I_above_end) ++failures;
                branch = std::max(branch, std::fabs(c.N - cases::N_general(rho, phi)));
            }
            if (rho >= 0.5 * r_star) {
                const double phi_b = std::acos(rho / r_star);
                branch = std::max(branch, std::fabs(cases::N_low_branch(rho, phi_b) -
                                                    cases::N_high_branch(rho, phi_b)));
            }
        }
        const double h = 0.5 * r_star;
        branch = std::max(branch, std::fabs(cases::N_low_branch(h, M_PI / 3.0) -
                                            cases::N_high_branch(h, M_PI / 3.0)));
        out.push_back(item("minimality.worstcase_chain", static_cast<double>(-failures),
                           {{"failures", failures}}));
        out.push_back(item("minimality.branch_continuity", 1e-12 - branch, {{"max_gap", branch}}));
    }
    {
        Rng rng(seed, 12);
        double lo = kInf;
        const double abar = inequality_constants().alpha_bar;
        const double radii[3] = {std::sqrt(3.0) * r_star, 2.0 * r_star, std::sqrt(7.0) * r_star};
        for (const double r : radii) {
            for (int i = 0; i < 1000; ++i) {
                const double a = std::exp(rng.uniform(std::log(alpha_scan_floor), std::log(abar)));
                const ShellCheck c = higher_shell_check(r, a, sample_cell(rng), unit(rng.uniform(0.0, M_PI)));
                for (std::size_t k = 0; k < c.lhs.size(); ++k) lo = std::min(lo, c.lhs[k] / c.rhs[k]);
            }
        }
        out.push_back(item("minimality.higher_shells", lo - 1.0 + 1e-12, {{"min_ratio", lo}}));
    }
    {
        Rng rng(seed, 13);
        double worst = 0.0;
        for (int i = 0; i < 1000; ++i) {
            Vec2 u = rng.in_disk(1.0);
            if (norm2(u) < 1e-6) u = {1.0, 0.0};
            const Vec2 a = rng.in_disk(2.0);
            const double k = rng.uniform();
            worst = std::max(worst, std::fabs(constrained_direction_min(u, a, k) -
                                              constrained_direction_min_brute(u, a, k)));
        }
        out.push_back(item("minimality.constrained_direction_min", 1e-6 - worst,
                           {{"instances", 1000}, {"max_gap", worst}}));
    }
}

void inequalities_suite(std::vector<CheckItem>& out) {
    for (const Check& c : numeric_inequality_suite()) {
        CheckItem it;
        it.check_name = "inequalities." + c.name;
        it.passed = c.passed;
        it.margin = c.margin;
        it.inputs = c.inputs;
        out.push_back(std::move(it));
    }
}

void energy_suite(std::vector<CheckItem>& out, std::uint64_t seed) {
    for (const double a : {0.2, 0.5, 1.0, 2.0, 5.0}) {
        const EnergyValue d = gaussian_lattice_energy(a, 1e-15, SumSide::direct);
        const EnergyValue q = gaussian_lattice_energy(a, 1e-15, SumSide::dual);
        out.push_back(item("energy.gaussian_poisson_alpha_" + std::to_string(a).substr(0, 3),
                           d.error_bound + q.error_bound - std::fabs(d.value - q.value),
                           {{"alpha", a}, {"direct", d.value}, {"dual", q.value}}));
    }
    for (const double a : {0.5, 1.0, 2.0}) {
        const EnergyValue h = gaussian_lattice_energy(a, 1e-15);
        const EnergyValue z = gaussian_lattice_energy(a, 1e-15, SumSide::automatic, LatticeKind::square);
        out.push_back(item("energy.hexagonal_below_square_alpha_" + std::to_string(a).substr(0, 3),
                           (z.value - h.value) - (z.error_bound + h.error_bound),
                           {{"alpha", a}, {"hexagonal", h.value}, {"square", z.value}}, true));
    }
    for (const double s : {3.0, 4.0, 6.0, 8.0}) {
        const EnergyValue t = riesz_energy(s, 1e-12);
        const EnergyValue d = riesz_energy(s, 1e-12, RieszMethod::direct);
        out.push_back(item("energy.riesz_two_methods_s" + std::to_string(static_cast<int>(s)),
                           t.error_bound + d.error_bound - std::fabs(t.value - d.value),
                           {{"s", s}, {"theta_split", t.value}, {"direct", d.value}}));
    }
    {
        Rng rng(seed, 20);
        double worst = kInf;
        for (int i = 0; i < 20; ++i) {
            const PeriodicPerturbation p = random_perturbation(2 + i % 5, max_sup_norm, rng);
            const double a = i % 2 == 0 ? 0.8 : 2.0;
            const EnergyValue d = perturbed_energy_diff(p, a, 1e-14, SumSide::direct);
            const EnergyValue q = perturbed_energy_diff(p, a, 1e-14, SumSide::dual);
            worst = std::min(worst, d.error_bound + q.error_bound - std::fabs(d.value - q.value));
        }
        out.push_back(item("energy.perturbed_direct_dual", worst, {{"trials", 20}}));
    }
    {
        double worst = 0.0;
        for (const double s : {3.0, 4.0, 5.0, 6.0, 7.0, 8.0}) {
            const CmsdPotential f = CmsdPotential::riesz(s);
            const double c = uniformity_ratio(f, 0.1, 10.0);
            const double q = uniformity_ratio_quadrature(f, 0.1, 10.0);
            worst = std::max(worst, std::fabs(c - q) / std::fabs(c));
        }
        out.push_back(item("energy.uniformity_two_quadratures", 1e-8 - worst, {{"max_relative_gap", worst}}));
    }
}

}  // namespace

bool SuiteReport::passed() const {
    return std::all_of(items.begin(), items.end(), [](const CheckItem& c) { return c.passed; });
}

nlohmann::json SuiteReport::to_json() const {
    nlohmann::json checks = nlohmann::json::array();
    for (const CheckItem& c : items) {
        checks.push_back({{"check_name", c.check_name},
                          {"status", c.passed ? "pass" : "fail"},
                          {"margin", c.margin},
                          {"inputs", c.inputs}});
    }
    return {{"suite", suite}, {"status", passed() ? "pass" : "fail"}, {"checks", checks}};
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"all", "design", "minimality", "inequalities", "energy"};
    return names;
}

SuiteReport run_suite(const std::string& suite, std::uint64_t seed) {
    const auto& names = suite_names();
    if (std::find(names.begin(), names.end(), suite) == names.end()) {
        throw std::invalid_argument("unknown suite: " + suite);
    }
    SuiteReport r;
    r.suite = suite;
    const bool all = suite == "all";
    if (all || suite == "inequalities") inequalities_suite(r.items);
    if (all || suite == "design") design_suite(r.items, seed);
    if (all || suite == "energy") energy_suite(r.items, seed);
    if (all || suite == "minimality") minimality_suite(r.items, seed);
    return r;
}

bool ProbeReport::all_certified() const {
    return std::all_of(rows.begin(), rows.end(), [](const ProbeTrial& t) { return t.certified; });
}

nlohmann::json ProbeReport::to_json() const {
    nlohmann::json rows_json = nlohmann::json::array();
    for (const ProbeTrial& t : rows) {
        rows_json.push_back({{"alpha", t.alpha},
                             {"N", t.N},
                             {"trial", t.trial},
                             {"sup_norm", t.sup_norm},
                             {"energy_diff", t.energy_diff},
                             {"error_bound", t.error_bound},
                             {"fs", t.fs},
                             {"sm", t.sm},
                             {"ratio_diff_over_bound", t.ratio},
                             {"excluded", t.excluded},
                             {"certified", t.certified}});
    }
    return {{"seed", seed},
            {"trials", trials},
            {"min_ratio", min_ratio},
            {"status", all_certified() ? "pass" : "fail"},
            {"rows", rows_json}};
}

ProbeReport probe(const ProbeConfig& config) {
    if (config.trials < 1) throw std::invalid_argument("probe: trials must be >= 1");
    if (config.alphas.empty() || config.periods.empty()) {
        throw std::invalid_argument("probe: alpha and period lists must be nonempty");
    }
    for (const double a : config.alphas) {
        if (!(a >= probe_alpha_min && a <= probe_alpha_max)) {
            throw std::invalid_argument(
                "probe: alpha must lie in [0.6, 5]; below 0.6 the certified gap is under double "
                "resolution, use --suite minimality for the spectral-form check instead");
        }
    }
    for (const int N : config.periods) {
        if (N < 1) throw std::invalid_argument("probe: periods must be >= 1");
    }
    if (config.sup_norm && !(*config.sup_norm >= 0.0 && *config.sup_norm <= max_sup_norm)) {
        throw std::invalid_argument("probe: sup-norm must lie in [0, r_star/20]");
    }
    ProbeReport report;
    report.seed = config.seed;
    report.trials = config.trials;
    report.min_ratio = kInf;
    std::uint64_t stream = 0;
    for (const double a : config.alphas) {
        for (const int N : config.periods) {
            const double sup = config.sup_norm ? *config.sup_norm : std::min(1.0 / a, max_sup_norm);
            for (int t = 0; t < config.trials; ++t) {
                Rng rng(config.seed, stream++);
                const PeriodicPerturbation p = random_perturbation(N, sup, rng);
                ProbeTrial row;
                row.alpha = a;
                row.N = N;
                row.trial = t;
                row.sup_norm = p.sup_norm();
                const EnergyValue e = perturbed_energy_diff(p, a, 1e-14);
                row.energy_diff = e.value;
                row.error_bound = e.error_bound;
                row.fs = fs_size(p);
                row.sm = sm_size(p);
                row.excluded = p.is_constant() || row.fs == 0.0;
                row.certified = row.excluded || e.value - e.error_bound >= 0.0;
                if (!row.excluded) {
                    row.ratio = e.value / (std::exp(-M_PI * a * r_star * r_star) * row.fs);
                    report.min_ratio = std::min(report.min_ratio, row.ratio);
                }
                report.rows.push_back(row);
            }
        }
    }
    if (report.min_ratio == kInf) report.min_ratio = 0.0;
    return report;
}

void landscape(double alpha, double v_angle, int grid_n, const std::string& out_path) {
    if (grid_n < 8) throw std::invalid_argument("landscape: grid must be >= 8");
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("landscape: cannot open " + out_path);
    const Vec2 v = unit(v_angle);
    const double psi0 = psi_eval(alpha, v, {0.0, 0.0}).value;
    const double scale = std::exp(-M_PI * r_star * r_star / alpha);
    out.precision(17);
    out << "ux,uy,psi,gap\n";
    for (const Vec2& u : cell_grid(grid_n)) {
        const double psi = psi_eval(alpha, v, u).value;
        const double gap = norm2(u) == 0.0 ? 0.0 : psi_gap(alpha, v, u).value * norm2(u) * scale;
        out << u.x << ',' << u.y << ',' << (norm2(u) == 0.0 ? psi0 : psi) << ',' << gap << '\n';
    }
    if (!out) throw std::runtime_error("landscape: write failed for " + out_path);
}

}  // namespace hexopt
