#pragma once

#include <Eigen/Core>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "anderson/box.hpp"
#include "anderson/distribution.hpp"

namespace anderson {

/// Displacement from a site, at most three components.
using Displacement = std::array<double, 3>;

/// Compactly supported single-site bump u with ||u||_inf = 1 and
/// u_minus * chi_{cube(delta_minus)} <= u <= chi_{cube(delta_plus)}.
struct SingleSitePotential {
    enum class Profile {
        /// 1 on the half-open cube [-delta_plus/2, delta_plus/2)^d.
        Indicator,
        /// 1 at the centre, linear in the sup-norm radius down to u_minus at
        /// radius delta_minus/2, then linear down to 0 at radius delta_plus/2.
        PlateauBump,
    };

    Profile profile = Profile::Indicator;
    double delta_minus = 1.0;
    double delta_plus = 1.0;
    double u_minus = 1.0;

    static SingleSitePotential indicator(double delta_minus = 1.0, double delta_plus = 1.0,
                                         double u_minus = 1.0);
    static SingleSitePotential plateau_bump(double delta_minus, double delta_plus, double u_minus);

    void validate() const;

    double operator()(std::span<const double> x) const;
    double support_half_width() const { return 0.5 * delta_plus; }
    /// Covering condition delta_minus >= 1.
    bool covers() const { return delta_minus >= 1.0; }

    friend bool operator==(const SingleSitePotential&, const SingleSitePotential&) = default;
};

/// Bounded qZ^d-periodic background potential plus the normalization shift.
struct PeriodicPotential {
    enum class Kind {
        Constant,  // value
        Cosine,    // value * sum_a cos(2 pi x_a / q)
        Samples,   // piecewise constant, samples_per_unit cells per unit length
    };

    Kind kind = Kind::Constant;
    int period = 1;  // q
    double value = 0.0;
    int samples_per_unit = 1;
    std::vector<double> samples;  // (q * samples_per_unit)^d values, axis 0 fastest
    double shift = 0.0;           // added so that inf spec(H_0) = 0

    static PeriodicPotential zero();
    static PeriodicPotential constant(double c);
    static PeriodicPotential cosine(double amplitude, int period = 1);

    void validate(int dim) const;
    /// V_per(x) without the shift.
    double operator()(std::span<const double> x) const;
    bool is_zero() const { return kind == Kind::Constant && value == 0.0; }

    friend bool operator==(const PeriodicPotential&, const PeriodicPotential&) = default;
};

/// Sublattice Gamma(j0, K) = j0 + K Z^d on which every coupling has law mu.
struct SpineSpec {
    Site j0;
    int K = 1;
    SiteDistribution mu;

    bool contains(const Site& j) const;

    friend bool operator==(const SpineSpec&, const SpineSpec&) = default;
};

/// A generalized Anderson Hamiltonian -Delta + V_per + sum_j omega_j u(x - j).
struct ModelSpec {
    int dim = 1;
    PeriodicPotential periodic;
    SingleSitePotential site;
    SiteDistribution default_dist;
    std::map<Site, SiteDistribution> overrides;
    std::optional<SpineSpec> spine;
    bool normalized = false;

    void validate() const;

    /// Law of omega_j: the spine wins over overrides, overrides over the default.
    const SiteDistribution& distribution_at(const Site& j) const;
    /// M = sup over all assigned distributions of sup supp mu_j.
    double max_coupling() const;
    /// Distribution of every site of the box, in site-index order.
    std::vector<SiteDistribution> site_distributions(const BoxSpec& box) const;
    /// Every site shares the default law (no overrides, spine with the same law).
    bool identically_distributed() const;

    friend bool operator==(const ModelSpec&, const ModelSpec&) = default;
};

/// Couplings omega_j for the L^d sites of a box, in site-index order. Values
/// at lattice points outside the box follow from periodic extension.
struct DisorderSample {
    BoxSpec box;
    Eigen::VectorXd values;
    std::uint64_t master_seed = 0;
    std::uint64_t sample_index = 0;

    double at(const Site& j) const { return values[box.wrapped_site_index(j)]; }
};

/// Checks the box against the model: 2q | L, L > delta_plus, and 2qK | L
/// when `spine_experiment` is set.
void validate_box_for_model(const ModelSpec& spec, const BoxSpec& box, bool spine_experiment = false);

/// Sets the shift so the bottom of the discretized H_0 spectrum on the box
/// torus is 0.
///
/// Because 2q divides L, the torus ground state of the periodic operator is
/// q-periodic (it is non-degenerate and commutes with q-translations), so the
/// minimum is computed exactly on a single period cell at the same grid.
ModelSpec normalize_model(ModelSpec spec, const BoxSpec& ref_box);

/// omega_j for one lattice point; depends only on (seed, sample_index, j).
double sample_coupling(const ModelSpec& spec, const Site& j, std::uint64_t master_seed,
                       std::uint64_t sample_index);

/// Independent draws for every site of the box.
DisorderSample sample_disorder(const ModelSpec& spec, const BoxSpec& box, std::uint64_t master_seed,
                               std::uint64_t sample_index);

/// Returns a spine Gamma(j', 2K) contained in `spine` that avoids j. The
/// representative j' is reduced to [0, 2K)^d.
SpineSpec subspine_for(const SpineSpec& spine, const Site& j);

}  // namespace anderson
