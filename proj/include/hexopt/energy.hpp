#pragma once

#include <utility>
#include <variant>
#include <vector>

#include "hexopt/lattice.hpp"
#include "hexopt/perturbation.hpp"

namespace hexopt {

// A lattice sum with a certified bound on its truncation error.
struct EnergyValue {
    double value = 0.0;
    double error_bound = 0.0;
    long terms_used = 0;
};

// Which side of the Poisson identity a Gaussian sum is evaluated on.
enum class SumSide { direct, dual, automatic };

struct GaussianPotential {
    double alpha;
};

struct RieszPotential {
    double s;
};

struct MixtureAtom {
    double alpha;
    double weight;
};

struct AtomicMixture {
    std::vector<MixtureAtom> atoms;
};

// f(r) = ∫ e^{-παr²} dW(α); validated on construction.
class CmsdPotential {
public:
    using Variant = std::variant<GaussianPotential, RieszPotential, AtomicMixture>;

    static CmsdPotential gaussian(double alpha);
    static CmsdPotential riesz(double s);
    static CmsdPotential mixture(std::vector<MixtureAtom> atoms);

    const Variant& variant() const { return v_; }
    // Pointwise value f(r).
    double operator()(double r) const;

private:
    explicit CmsdPotential(Variant v) : v_(std::move(v)) {}
    Variant v_;
};

// Density dW_s/dα = π^{s/2} α^{s/2-1} / Γ(s/2).
double riesz_density(double s, double alpha);

// E_α(Λ) = Σ_{x≠0} e^{-πα|x|²}; direct for α >= 1, dual otherwise under automatic.
EnergyValue gaussian_lattice_energy(double alpha, double tol, SumSide side = SumSide::automatic,
                                    LatticeKind kind = LatticeKind::direct);

// Same sum truncated at an explicit radius (on the side actually summed).
EnergyValue gaussian_lattice_energy_radius(double alpha, double R, SumSide side,
                                           LatticeKind kind = LatticeKind::direct);

// E_α(A₂ + p) - E_α(A₂). Direct side sums G(x)·expm1(-πα(2x·Δ + |Δ|²)); dual side sums
// α⁻¹ e^{-π|k|²/α} B(k) over (1/N)Â₂ with |B| <= 1. Automatic means direct.
EnergyValue perturbed_energy_diff(const PeriodicPerturbation& p, double alpha, double tol,
                                  SumSide side = SumSide::automatic);

EnergyValue perturbed_energy_diff_radius(const PeriodicPerturbation& p, double alpha, double R,
                                         SumSide side);

enum class RieszMethod { theta_split, direct };

// Σ_{x≠0} |x|^{-s} over A₂, s > 2. The direct method caps its radius at 400, so its
// error_bound can exceed tol for s close to 2.
EnergyValue riesz_energy(double s, double tol, RieszMethod method = RieszMethod::theta_split);

// Direct Riesz sum over |x| <= R with two-sided integral tail; value is the midpoint.
EnergyValue riesz_energy_direct(double s, double R);

EnergyValue cmsd_energy_diff(const PeriodicPerturbation& p, const CmsdPotential& f, double tol);

// Normalized pair sum over the perturbed points inside B_r.
double finite_window_energy(const PeriodicPerturbation& p, const CmsdPotential& f, double r);

// Uniformity ratio for the α-mixture condition; closed form for Riesz and atomic mixtures.
double uniformity_ratio(const CmsdPotential& f, double alpha0, double alpha1);

// Same ratio for Riesz by adaptive numerical quadrature of each integral.
double uniformity_ratio_quadrature(const CmsdPotential& f, double alpha0, double alpha1);

}  // namespace hexopt
