#include "anderson/model.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "anderson/errors.hpp"
#include "anderson/lattice.hpp"
#include "anderson/rng.hpp"

namespace anderson {

namespace {

int floor_mod(int a, int m) {
    const int r = a % m;
    return r < 0 ? r + m : r;
}

// Dense ground-state limit for the period-cell eigenproblem.
constexpr Index kCellDenseLimit = 4096;

}  // namespace

// --- SingleSitePotential -------------------------------------------------

SingleSitePotential SingleSitePotential::indicator(double delta_minus, double delta_plus, double u_minus) {
    SingleSitePotential u{Profile::Indicator, delta_minus, delta_plus, u_minus};
    u.validate();
    return u;
}

SingleSitePotential SingleSitePotential::plateau_bump(double delta_minus, double delta_plus, double u_minus) {
    SingleSitePotential u{Profile::PlateauBump, delta_minus, delta_plus, u_minus};
    u.validate();
    return u;
}

void SingleSitePotential::validate() const {
    if (!(delta_minus > 0.0) || !(delta_plus >= delta_minus) || !std::isfinite(delta_plus))
        throw ConfigError("single-site potential needs 0 < delta_minus <= delta_plus < inf");
    if (!(u_minus > 0.0) || u_minus > 1.0) throw ConfigError("single-site potential needs 0 < u_minus <= 1");
}

double SingleSitePotential::operator()(std::span<const double> x) const {
    const double half_plus = 0.5 * delta_plus;
    if (profile == Profile::Indicator) {
        for (double c : x)
            if (c < -half_plus || c >= half_plus) return 0.0;
        return 1.0;
    }
    double r = 0.0;
    for (double c : x) r = std::max(r, std::abs(c));
    const double half_minus = 0.5 * delta_minus;
    if (r >= half_plus) return 0.0;
    if (r <= half_minus) return 1.0 - (1.0 - u_minus) * (r / half_minus);
    return u_minus * (half_plus - r) / (half_plus - half_minus);
}

// --- PeriodicPotential ---------------------------------------------------

PeriodicPotential PeriodicPotential::zero() { return {}; }

PeriodicPotential PeriodicPotential::constant(double c) {
    PeriodicPotential v;
    v.value = c;
    return v;
}

PeriodicPotential PeriodicPotential::cosine(double amplitude, int period) {
    PeriodicPotential v;
    v.kind = Kind::Cosine;
    v.value = amplitude;
    v.period = period;
    return v;
}

void PeriodicPotential::validate(int dim) const {
    if (period < 1) throw ConfigError("periodic potential period q must be >= 1");
    if (!std::isfinite(value) || !std::isfinite(shift)) throw ConfigError("periodic potential must be bounded");
    if (kind == Kind::Samples) {
        if (samples_per_unit < 1) throw ConfigError("periodic potential samples_per_unit must be >= 1");
        std::size_t expected = 1;
        for (int a = 0; a < dim; ++a) expected *= static_cast<std::size_t>(period * samples_per_unit);
        if (samples.size() != expected)
            throw ConfigError("periodic potential needs (q * samples_per_unit)^d = " + std::to_string(expected) +
                              " samples, got " + std::to_string(samples.size()));
        for (double s : samples)
            if (!std::isfinite(s)) throw ConfigError("periodic potential samples must be finite");
    }
}

double PeriodicPotential::operator()(std::span<const double> x) const {
    switch (kind) {
        case Kind::Constant: return value;
        case Kind::Cosine: {
            double s = 0.0;
            for (double c : x) s += std::cos(2.0 * std::numbers::pi * c / period);
            return value * s;
        }
        case Kind::Samples: {
            const int cells = period * samples_per_unit;
            std::size_t idx = 0;
            for (int a = static_cast<int>(x.size()) - 1; a >= 0; --a) {
                const int cell = static_cast<int>(std::floor(x[a] * samples_per_unit));
                idx = idx * cells + floor_mod(cell, cells);
            }
            return samples[idx];
        }
    }
    return 0.0;
}

// --- SpineSpec / ModelSpec -----------------------------------------------

bool SpineSpec::contains(const Site& j) const {
    if (j.size() != j0.size()) return false;
    for (std::size_t a = 0; a < j.size(); ++a)
        if (floor_mod(j[a] - j0[a], K) != 0) return false;
    return true;
}

void ModelSpec::validate() const {
    if (dim < 1 || dim > 3) throw ConfigError("model dimension must be 1, 2 or 3");
    periodic.validate(dim);
    site.validate();
    default_dist.validate();
    for (const auto& [j, dist] : overrides) {
        if (static_cast<int>(j.size()) != dim) throw ConfigError("override site has the wrong dimension");
        dist.validate();
    }
    if (spine) {
        if (static_cast<int>(spine->j0.size()) != dim) throw ConfigError("spine j0 has the wrong dimension");
        if (spine->K < 1) throw ConfigError("spine order K must be >= 1");
        spine->mu.validate();
    }
}

const SiteDistribution& ModelSpec::distribution_at(const Site& j) const {
    if (spine && spine->contains(j)) return spine->mu;
    if (auto it = overrides.find(j); it != overrides.end()) return it->second;
    return default_dist;
}

double ModelSpec::max_coupling() const {
    double M = default_dist.M;
    for (const auto& [j, dist] : overrides) M = std::max(M, dist.M);
    if (spine) M = std::max(M, spine->mu.M);
    return M;
}

std::vector<SiteDistribution> ModelSpec::site_distributions(const BoxSpec& box) const {
    std::vector<SiteDistribution> out;
    out.reserve(static_cast<std::size_t>(box.num_sites()));
    for (Index i = 0; i < box.num_sites(); ++i) out.push_back(distribution_at(box.site_at(i)));
    return out;
}

bool ModelSpec::identically_distributed() const {
    if (spine && !(spine->mu == default_dist)) return false;
    return std::all_of(overrides.begin(), overrides.end(),
                       [&](const auto& kv) { return kv.second == default_dist; });
}

// --- operations -----------------------------------------------------------

void validate_box_for_model(const ModelSpec& spec, const BoxSpec& box, bool spine_experiment) {
    box.validate();
    if (box.dim != spec.dim) throw ConfigError("box and model dimensions differ");
    const int q = spec.periodic.period;
    if (box.side % (2 * q) != 0)
        throw ConfigError("L must satisfy 2q | L (L = " + std::to_string(box.side) + ", q = " + std::to_string(q) +
                          ")");
    if (!(box.side > spec.site.delta_plus))
        throw ConfigError("L must exceed the single-site support side delta_plus");
    if (spine_experiment) {
        if (!spec.spine) throw ConfigError("a spine experiment needs a spine in the model");
        const int K = spec.spine->K;
        if (box.side % (2 * q * K) != 0)
            throw ConfigError("spine experiments need 2qK | L (L = " + std::to_string(box.side) +
                              ", q = " + std::to_string(q) + ", K = " + std::to_string(K) + ")");
    }
    if (spec.periodic.kind == PeriodicPotential::Kind::Samples &&
        box.grid_per_unit % spec.periodic.samples_per_unit != 0)
        throw ConfigError("grid_per_unit must be a multiple of the periodic potential samples_per_unit");
}

ModelSpec normalize_model(ModelSpec spec, const BoxSpec& ref_box) {
    spec.validate();
    ref_box.validate();
    if (ref_box.dim != spec.dim) throw ConfigError("box and model dimensions differ");
    const int q = spec.periodic.period;
    if (ref_box.side % (2 * q) != 0)
        throw ConfigError("normalization box side must be a multiple of 2q");

    const int n = ref_box.grid_per_unit;
    const int cell_points = n * q;
    Index N = 1;
    for (int a = 0; a < spec.dim; ++a) N *= cell_points;
    if (N > kCellDenseLimit) throw CapacityError("period cell too fine for the dense ground-state solve");

    // H_0 on the q-torus whose grid coincides with the box grid modulo q.
    Eigen::MatrixXd H0 = Eigen::MatrixXd(periodic_laplacian(spec.dim, cell_points, ref_box.spacing()));
    std::array<double, 3> x{};
    for (Index p = 0; p < N; ++p) {
        Index rest = p;
        for (int a = 0; a < spec.dim; ++a) {
            const int g = static_cast<int>(rest % cell_points);
            rest /= cell_points;
            x[a] = ref_box.origin(a) + (g + 0.5) * ref_box.spacing();
        }
        H0(p, p) += spec.periodic(std::span<const double>(x.data(), spec.dim));
    }
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(H0, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw NumericalError("ground-state eigensolve failed");
    spec.periodic.shift = -solver.eigenvalues()(0);
    spec.normalized = true;
    return spec;
}

double sample_coupling(const ModelSpec& spec, const Site& j, std::uint64_t master_seed,
                       std::uint64_t sample_index) {
    const double p = to_unit_open(draw_key(master_seed, sample_index, j));
    return spec.distribution_at(j).quantile(p);
}

DisorderSample sample_disorder(const ModelSpec& spec, const BoxSpec& box, std::uint64_t master_seed,
                               std::uint64_t sample_index) {
    if (!spec.normalized) throw UsageError("sample_disorder needs a normalized model");
    DisorderSample sample{box, Eigen::VectorXd(box.num_sites()), master_seed, sample_index};
    for (Index i = 0; i < box.num_sites(); ++i)
        sample.values[i] = sample_coupling(spec, box.site_at(i), master_seed, sample_index);
    return sample;
}

SpineSpec subspine_for(const SpineSpec& spine, const Site& j) {
    if (j.size() != spine.j0.size()) throw DomainError("site and spine dimensions differ");
    // Off the spine, j0 itself works; on it, step one spine period along axis 0.
    Site jp = spine.j0;
    if (spine.contains(j)) {
        jp = j;
        jp[0] += spine.K;
    }
    const int period = 2 * spine.K;
    for (auto& c : jp) c = floor_mod(c, period);
    return SpineSpec{jp, period, spine.mu};
}

}  // namespace anderson
