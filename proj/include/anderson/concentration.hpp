#pragma once

#include <optional>
#include <span>
#include <vector>

#include "anderson/box.hpp"
#include "anderson/distribution.hpp"
#include "anderson/model.hpp"

namespace anderson {

/// Concentration data of a single-site law.
struct ConcentrationProfile {
    SiteDistribution dist;
    bool bounded_density = false;
    std::optional<double> density_sup;
    std::optional<double> holder_alpha;
    std::optional<double> holder_const;
};

ConcentrationProfile concentration_profile(const SiteDistribution& dist,
                                           std::optional<double> holder_alpha = std::nullopt);

/// S_nu(s) = sup_a nu([a, a + s]).
double concentration_S(const SiteDistribution& dist, double s);

/// nu^(m)([lo, hi]) for d nu^(m)(t) = (1 + t^m) d nu(t); m = 0 gives nu itself.
double moment_measure(const SiteDistribution& dist, int m, double lo, double hi);

/// S_{nu^(m)}(s), maximized numerically over the window position for m >= 1.
double concentration_S_moment(const SiteDistribution& dist, double s, int m);

/// sup_t (1 + t^m) rho(t) for bounded-density laws (||rho||_inf when m = 0).
double moment_density_sup(const SiteDistribution& dist, int m);

/// Q_nu^(m)(s): ||rho^(m)||_inf s with a bounded density, 8 S_{nu^(m)}(s)
/// otherwise; m = 0 is the plain Q_nu.
double wegner_Q(const SiteDistribution& dist, double s, int m = 0);

/// (1 + M)^m Q_nu(s), the moment bound on Q_nu^(m)(s).
double moment_bound(const SiteDistribution& dist, double s, int m);

/// Whether Q_nu^(m)(s) <= (1 + M)^m Q_nu(s) (with a 1e-12 relative slack).
bool moment_bound_holds(const SiteDistribution& dist, double s, int m);

/// Q_Lambda^(m)(s) = max over the sites of the layout of Q_{mu_j}^(m)(s).
double q_lambda(std::span<const SiteDistribution> layout, double s, int m = 0);
double q_lambda(const ModelSpec& spec, const BoxSpec& box, double s, int m = 0);

struct HolderEstimate {
    double alpha = 1.0;
    /// sup of Q(s)/s^alpha over the grid, or +inf when not Holder.
    double constant = 0.0;
    bool holder = false;
    double ratio_at_one = 0.0;
    double max_ratio_smallest_decade = 0.0;
};

/// Smallest C with Q_nu(s) <= C s^alpha on a 400-point log grid over
/// [1e-6, 1]; flagged non-Holder when the ratio over the smallest decade
/// exceeds 10x its value at s = 1.
HolderEstimate holder_constant(const SiteDistribution& dist, double alpha);

/// m_d = 2^(2 + log d / log 2), which is 4d.
int moment_order_md(int d);

}  // namespace anderson
