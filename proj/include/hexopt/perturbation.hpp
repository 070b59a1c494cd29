#pragma once

#include <complex>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hexopt/lattice.hpp"
#include "hexopt/rng.hpp"
#include "hexopt/vec2.hpp"

namespace hexopt {

// Admissible sup-norm of a perturbation; keeps A₂ + p simple.
inline const double max_sup_norm = r_star / 20.0;

// NA₂-periodic displacement field stored as a table over the discrete torus A₂/NA₂.
class PeriodicPerturbation {
public:
    // Table indexed by TorusIndex::flat(); throws std::invalid_argument on bad size,
    // non-finite entries, or sup-norm above max_sup_norm (relative slack 1e-12).
    PeriodicPerturbation(int N, std::vector<Vec2> table);

    static PeriodicPerturbation zero(int N);
    static PeriodicPerturbation constant(int N, Vec2 c);

    int period() const { return N_; }
    int classes() const { return N_ * N_; }
    double sup_norm() const { return sup_norm_; }
    const std::vector<Vec2>& table() const { return table_; }

    const Vec2& at(TorusIndex t) const { return table_[static_cast<std::size_t>(t.flat())]; }
    const Vec2& at(LatticeIndex idx) const { return at(torus_class(idx, N_)); }
    const Vec2& at_flat(int f) const { return table_[static_cast<std::size_t>(f)]; }

    // True when every entry equals the first one exactly.
    bool is_constant() const;

    PeriodicPerturbation scaled(double t) const;
    PeriodicPerturbation shifted(Vec2 c) const;
    // q_x = p_{x + origin}; energies are invariant under this relabeling.
    PeriodicPerturbation relabeled(LatticeIndex origin) const;

private:
    int N_;
    std::vector<Vec2> table_;
    double sup_norm_ = 0.0;
};

// I.i.d. uniform displacements on the closed disk of the given radius, one per torus class.
PeriodicPerturbation random_perturbation(int N, double sup_norm, Rng& rng);

// Keeps the entries with m, n in [-⌊N/2⌋, N - ⌊N/2⌋) and tiles them NA₂-periodically;
// indices outside the window are dropped, missing classes are zero.
PeriodicPerturbation periodize(const std::map<LatticeIndex, Vec2>& finite_table, int N);

struct DisplacementAtom {
    Vec2 vector;
    double weight = 0.0;
};

// Law Q_x of p_{x'+x} - p_{x'} over one period; equal atoms merged, sorted lexicographically.
struct DisplacementLaw {
    std::vector<DisplacementAtom> atoms;

    double total_weight() const;
    Vec2 mean() const;
    double second_moment() const;
};

DisplacementLaw displacement_law(const PeriodicPerturbation& p, LatticeIndex x);

// Second moment of Q_x without building the atom list.
double relative_second_moment(const PeriodicPerturbation& p, LatticeIndex x);

// Σ over the six first-shell directions of ∫|u|² dQ_s.
double fs_size(const PeriodicPerturbation& p);

// Indexed by TorusIndex::flat().
struct CorrelationMatrices {
    int N = 1;
    std::vector<Sym2> R;
    std::vector<Sym2> C;

    const Sym2& r(LatticeIndex x) const { return R[torus_class(x, N).flat()]; }
    const Sym2& c(LatticeIndex x) const { return C[torus_class(x, N).flat()]; }
};

CorrelationMatrices correlation(const PeriodicPerturbation& p);

struct FourierCoefficient {
    LatticeIndex k_index;  // k = (i σ̂ + j τ̂)/N, 0 <= i, j < N
    std::complex<double> x;
    std::complex<double> y;
};

// p̂(k) = N⁻² Σ_{x'} p(x') e^{-2πi k·x'} over the N² frequencies; phases reduced exactly mod N.
std::vector<FourierCoefficient> torus_fourier(const PeriodicPerturbation& p);

// Unreduced frequency of a torus Fourier index.
Vec2 torus_frequency(LatticeIndex k_index, int N);

struct SpectralAtom {
    LatticeIndex k_index;
    Vec2 frequency;  // reduced into Ω
    Sym2 matrix;     // Re p̂(k) p̂(k)*
};

struct SpectralMeasure {
    int N = 1;
    std::vector<SpectralAtom> atoms;

    Sym2 total() const;
    // Σ cos(2π k·x) R̂(k).
    Sym2 reconstruct(LatticeIndex x) const;
};

struct TraceAtom {
    double tau_mass = 0.0;
    bool active = false;  // false when the trace is below 1e-15 of the total
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    Vec2 v1{1.0, 0.0};
    Vec2 v2{0.0, 1.0};
};

struct TraceDecomposition {
    std::vector<TraceAtom> atoms;  // parallel to SpectralMeasure::atoms
};

std::pair<SpectralMeasure, TraceDecomposition> spectral_measure(const PeriodicPerturbation& p);

// tr Σ |ω|² R̂(ω).
double sm_size(const SpectralMeasure& m);
double sm_size(const PeriodicPerturbation& p);

// JSON {"N": int, "displacements": [[a, b, dx, dy], ...]}; unlisted classes are zero.
PeriodicPerturbation perturbation_from_json(const std::string& text);
PeriodicPerturbation load_perturbation(const std::string& path);
std::string perturbation_to_json(const PeriodicPerturbation& p);

}  // namespace hexopt
