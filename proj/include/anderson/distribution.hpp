#pragma once

#include <string>

namespace anderson {

/// Atom-free single-site coupling distribution supported on [0, M].
///
/// Three closed-form families are supported:
///   - Uniform(M):           density 1/M
///   - PowerAlpha(alpha, M): density alpha t^(alpha-1) / M^alpha, CDF (t/M)^alpha
///   - Triangular(M):        symmetric tent with mode M/2, density 4t/M^2 below it
struct SiteDistribution {
    enum class Family { Uniform, PowerAlpha, Triangular };

    Family family = Family::Uniform;
    double M = 1.0;
    double alpha = 1.0;  // PowerAlpha only

    static SiteDistribution uniform(double M);
    static SiteDistribution power_alpha(double alpha, double M);
    static SiteDistribution triangular(double M);

    /// Throws ConfigError unless M > 0 (and alpha > 0 for PowerAlpha).
    void validate() const;

    double cdf(double t) const;
    /// Inverse CDF on (0, 1); maps into [0, M].
    double quantile(double p) const;
    double density(double t) const;
    bool has_bounded_density() const;
    /// ||rho||_inf, infinite for PowerAlpha with alpha < 1.
    double density_sup() const;

    std::string describe() const;

    friend bool operator==(const SiteDistribution&, const SiteDistribution&) = default;
};

}  // namespace anderson
