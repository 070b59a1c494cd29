#include "hexopt/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "hexopt/numeric.hpp"

namespace hexopt {

namespace {

bool lex_less(Vec2 a, Vec2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }

int wrap(std::int64_t v, int N) {
    const std::int64_t r = v % N;
    return static_cast<int>(r < 0 ? r + N : r);
}

}  // namespace

PeriodicPerturbation::PeriodicPerturbation(int N, std::vector<Vec2> table)
    : N_(N), table_(std::move(table)) {
    if (N < 1) throw std::invalid_argument("perturbation: N must be >= 1");
    if (table_.size() != static_cast<std::size_t>(N) * static_cast<std::size_t>(N)) {
        throw std::invalid_argument("perturbation: table must list N² displacements");
    }
    for (const Vec2& v : table_) {
        if (!std::isfinite(v.x) || !std::isfinite(v.y)) {
            throw std::invalid_argument("perturbation: non-finite displacement");
        }
        sup_norm_ = std::max(sup_norm_, norm(v));
    }
    if (sup_norm_ > max_sup_norm * (1.0 + 1e-12)) {
        throw std::invalid_argument("perturbation: sup-norm exceeds r⋆/20");
    }
}

PeriodicPerturbation PeriodicPerturbation::zero(int N) {
    return constant(N, {0.0, 0.0});
}

PeriodicPerturbation PeriodicPerturbation::constant(int N, Vec2 c) {
    if (N < 1) throw std::invalid_argument("perturbation: N must be >= 1");
    return PeriodicPerturbation(N, std::vector<Vec2>(static_cast<std::size_t>(N) * N, c));
}

bool PeriodicPerturbation::is_constant() const {
    return std::all_of(table_.begin(), table_.end(),
                       [this](const Vec2& v) { return v == table_.front(); });
}

PeriodicPerturbation PeriodicPerturbation::scaled(double t) const {
    std::vector<Vec2> out(table_);
    for (Vec2& v : out) v = t * v;
    return PeriodicPerturbation(N_, std::move(out));
}

PeriodicPerturbation PeriodicPerturbation::shifted(Vec2 c) const {
    std::vector<Vec2> out(table_);
    for (Vec2& v : out) v = v + c;
    return PeriodicPerturbation(N_, std::move(out));
}

PeriodicPerturbation PeriodicPerturbation::relabeled(LatticeIndex origin) const {
    std::vector<Vec2> out(table_.size());
    for (int a = 0; a < N_; ++a) {
        for (int b = 0; b < N_; ++b) {
            out[static_cast<std::size_t>(a * N_ + b)] = at(LatticeIndex{a + origin.m, b + origin.n});
        }
    }
    return PeriodicPerturbation(N_, std::move(out));
}

PeriodicPerturbation random_perturbation(int N, double sup_norm, Rng& rng) {
    if (N < 1) throw std::invalid_argument("random_perturbation: N must be >= 1");
    std::vector<Vec2> table(static_cast<std::size_t>(N) * N);
    for (Vec2& v : table) v = rng.in_disk(sup_norm);
    return PeriodicPerturbation(N, std::move(table));
}

PeriodicPerturbation periodize(const std::map<LatticeIndex, Vec2>& finite_table, int N) {
    if (N < 1) throw std::invalid_argument("periodize: N must be >= 1");
    const std::int64_t lo = -(N / 2);
    const std::int64_t hi = N - N / 2;
    std::vector<Vec2> table(static_cast<std::size_t>(N) * N, Vec2{0.0, 0.0});
    for (const auto& [idx, v] : finite_table) {
        if (idx.m < lo || idx.m >= hi || idx.n < lo || idx.n >= hi) continue;
        table[static_cast<std::size_t>(torus_class(idx, N).flat())] = v;
    }
    return PeriodicPerturbation(N, std::move(table));
}

double DisplacementLaw::total_weight() const {
    CompensatedSum s;
    for (const auto& a : atoms) s += a.weight;
    return s.value();
}

Vec2 DisplacementLaw::mean() const {
    CompensatedSum x;
    CompensatedSum y;
    for (const auto& a : atoms) {
        x += a.weight * a.vector.x;
        y += a.weight * a.vector.y;
    }
    return {x.value(), y.value()};
}

double DisplacementLaw::second_moment() const {
    CompensatedSum s;
    for (const auto& a : atoms) s += a.weight * norm2(a.vector);
    return s.value();
}

DisplacementLaw displacement_law(const PeriodicPerturbation& p, LatticeIndex x) {
    const int N = p.period();
    std::vector<Vec2> diffs;
    diffs.reserve(static_cast<std::size_t>(p.classes()));
    for (int a = 0; a < N; ++a) {
        for (int b = 0; b < N; ++b) {
            diffs.push_back(p.at(LatticeIndex{a + x.m, b + x.n}) - p.at(TorusIndex{N, a, b}));
        }
    }
    std::sort(diffs.begin(), diffs.end(), lex_less);
    const double w = 1.0 / p.classes();
    DisplacementLaw law;
    for (const Vec2& d : diffs) {
        if (!law.atoms.empty() && law.atoms.back().vector == d) {
            law.atoms.back().weight += w;
        } else {
            law.atoms.push_back({d, w});
        }
    }
    return law;
}

double relative_second_moment(const PeriodicPerturbation& p, LatticeIndex x) {
    const int N = p.period();
    CompensatedSum s;
    for (int a = 0; a < N; ++a) {
        for (int b = 0; b < N; ++b) {
            s += norm2(p.at(LatticeIndex{a + x.m, b + x.n}) - p.at(TorusIndex{N, a, b}));
        }
    }
    return s.value() / p.classes();
}

double fs_size(const PeriodicPerturbation& p) {
    CompensatedSum s;
    for (const LatticeIndex& e : first_shell()) s += relative_second_moment(p, e);
    return s.value();
}

CorrelationMatrices correlation(const PeriodicPerturbation& p) {
    const int N = p.period();
    const double inv = 1.0 / p.classes();
    CorrelationMatrices out;
    out.N = N;
    out.R.resize(static_cast<std::size_t>(p.classes()));
    out.C.resize(static_cast<std::size_t>(p.classes()));
    for (int xa = 0; xa < N; ++xa) {
        for (int xb = 0; xb < N; ++xb) {
            CompensatedSum r[3];
            CompensatedSum c[3];
            for (int a = 0; a < N; ++a) {
                for (int b = 0; b < N; ++b) {
                    const Vec2 q = p.at(TorusIndex{N, (a + xa) % N, (b + xb) % N});
                    const Vec2 q0 = p.at(TorusIndex{N, a, b});
                    const Sym2 rr = sym_outer(q, q0);
                    const Sym2 cc = outer(q - q0);
                    r[0] += rr.xx;
                    r[1] += rr.xy;
                    r[2] += rr.yy;
                    c[0] += cc.xx;
                    c[1] += cc.xy;
                    c[2] += cc.yy;
                }
            }
            const auto f = static_cast<std::size_t>(xa * N + xb);
            out.R[f] = {inv * r[0].value(), inv * r[1].value(), inv * r[2].value()};
            out.C[f] = {inv * c[0].value(), inv * c[1].value(), inv * c[2].value()};
        }
    }
    return out;
}

Vec2 torus_frequency(LatticeIndex k_index, int N) {
    return (1.0 / N) * reciprocal_point(k_index);
}

std::vector<FourierCoefficient> torus_fourier(const PeriodicPerturbation& p) {
    const int N = p.period();
    const double inv = 1.0 / p.classes();
    std::vector<std::complex<double>> roots(static_cast<std::size_t>(N));
    for (int j = 0; j < N; ++j) {
        const double t = -2.0 * M_PI * j / N;
        roots[static_cast<std::size_t>(j)] = {std::cos(t), std::sin(t)};
    }
    std::vector<FourierCoefficient> out;
    out.reserve(static_cast<std::size_t>(p.classes()));
    // Nonzero frequencies are blind to constants; subtracting p(0) makes them exact for constant p.
    const Vec2 base = p.at_flat(0);
    for (int i = 0; i < N; ++i) {
        for (int j = 0; j < N; ++j) {
            const Vec2 shift = (i == 0 && j == 0) ? Vec2{0.0, 0.0} : base;
            CompensatedSum xr, xi, yr, yi;
            for (int a = 0; a < N; ++a) {
                for (int b = 0; b < N; ++b) {
                    // k·x' = (i a + j b)/N for x' = aσ + bτ.
                    const std::complex<double> e = roots[static_cast<std::size_t>(wrap(
                        static_cast<std::int64_t>(i) * a + static_cast<std::int64_t>(j) * b, N))];
                    const Vec2 v = p.at(TorusIndex{N, a, b}) - shift;
                    xr += v.x * e.real();
                    xi += v.x * e.imag();
                    yr += v.y * e.real();
                    yi += v.y * e.imag();
                }
            }
            out.push_back({LatticeIndex{i, j}, inv * std::complex<double>(xr.value(), xi.value()),
                           inv * std::complex<double>(yr.value(), yi.value())});
        }
    }
    return out;
}

Sym2 SpectralMeasure::total() const {
    CompensatedSum s[3];
    for (const auto& a : atoms) {
        s[0] += a.matrix.xx;
        s[1] += a.matrix.xy;
        s[2] += a.matrix.yy;
    }
    return {s[0].value(), s[1].value(), s[2].value()};
}

Sym2 SpectralMeasure::reconstruct(LatticeIndex x) const {
    CompensatedSum s[3];
    for (const auto& a : atoms) {
        const int phase = wrap(a.k_index.m * x.m + a.k_index.n * x.n, N);
        const double c = std::cos(2.0 * M_PI * phase / N);
        s[0] += c * a.matrix.xx;
        s[1] += c * a.matrix.xy;
        s[2] += c * a.matrix.yy;
    }
    return {s[0].value(), s[1].value(), s[2].value()};
}

std::pair<SpectralMeasure, TraceDecomposition> spectral_measure(const PeriodicPerturbation& p) {
    SpectralMeasure m;
    m.N = p.period();
    double total_trace = 0.0;
    for (const FourierCoefficient& f : torus_fourier(p)) {
        const Sym2 mat{std::norm(f.x), (f.x * std::conj(f.y)).real(), std::norm(f.y)};
        m.atoms.push_back({f.k_index, voronoi_reduce(torus_frequency(f.k_index, m.N),
                                                     LatticeKind::reciprocal),
                           mat});
        total_trace += trace(mat);
    }
    TraceDecomposition td;
    for (const SpectralAtom& a : m.atoms) {
        TraceAtom t;
        t.tau_mass = trace(a.matrix);
        if (t.tau_mass > 1e-15 * total_trace && t.tau_mass > 0.0) {
            t.active = true;
            const Eigen2 e = eigen((1.0 / t.tau_mass) * a.matrix);
            t.lambda1 = e.lambda1;
            t.lambda2 = e.lambda2;
            t.v1 = e.v1;
            t.v2 = e.v2;
        }
        td.atoms.push_back(t);
    }
    return {std::move(m), std::move(td)};
}

double sm_size(const SpectralMeasure& m) {
    CompensatedSum s;
    for (const auto& a : m.atoms) s += norm2(a.frequency) * trace(a.matrix);
    return s.value();
}

double sm_size(const PeriodicPerturbation& p) { return sm_size(spectral_measure(p).first); }

PeriodicPerturbation perturbation_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("perturbation json: ") + e.what());
    }
    if (!j.is_object() || !j.contains("N") || !j["N"].is_number_integer()) {
        throw std::invalid_argument("perturbation json: missing integer N");
    }
    const int N = j["N"].get<int>();
    if (N < 1) throw std::invalid_argument("perturbation json: N must be >= 1");
    std::vector<Vec2> table(static_cast<std::size_t>(N) * N, Vec2{0.0, 0.0});
    std::vector<bool> seen(table.size(), false);
    if (j.contains("displacements")) {
        const auto& d = j["displacements"];
        if (!d.is_array()) throw std::invalid_argument("perturbation json: displacements must be an array");
        for (const auto& row : d) {
            if (!row.is_array() || row.size() != 4 || !row[0].is_number_integer() ||
                !row[1].is_number_integer() || !row[2].is_number() || !row[3].is_number()) {
                throw std::invalid_argument("perturbation json: rows must be [a, b, dx, dy]");
            }
            const int a = row[0].get<int>();
            const int b = row[1].get<int>();
            if (a < 0 || a >= N || b < 0 || b >= N) {
                throw std::invalid_argument("perturbation json: class index out of range");
            }
            const auto f = static_cast<std::size_t>(a * N + b);
            if (seen[f]) throw std::invalid_argument("perturbation json: duplicate class");
            seen[f] = true;
            table[f] = {row[2].get<double>(), row[3].get<double>()};
        }
    }
    return PeriodicPerturbation(N, std::move(table));
}

PeriodicPerturbation load_perturbation(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read perturbation file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return perturbation_from_json(ss.str());
}

std::string perturbation_to_json(const PeriodicPerturbation& p) {
    nlohmann::json rows = nlohmann::json::array();
    const int N = p.period();
    for (int a = 0; a < N; ++a) {
        for (int b = 0; b < N; ++b) {
            const Vec2 v = p.at(TorusIndex{N, a, b});
            rows.push_back({a, b, v.x, v.y});
        }
    }
    nlohmann::json j{{"N", N}, {"displacements", rows}};
    return j.dump();
}

}  // namespace hexopt
