#include "anderson/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "anderson/errors.hpp"

namespace anderson {

SiteDistribution SiteDistribution::uniform(double M) {
    SiteDistribution d{Family::Uniform, M, 1.0};
    d.validate();
    return d;
}

SiteDistribution SiteDistribution::power_alpha(double alpha, double M) {
    SiteDistribution d{Family::PowerAlpha, M, alpha};
    d.validate();
    return d;
}

SiteDistribution SiteDistribution::triangular(double M) {
    SiteDistribution d{Family::Triangular, M, 1.0};
    d.validate();
    return d;
}

void SiteDistribution::validate() const {
    if (!(M > 0.0) || !std::isfinite(M))
        throw ConfigError("distribution support endpoint M must be finite and > 0");
    if (family == Family::PowerAlpha && (!(alpha > 0.0) || !std::isfinite(alpha)))
        throw ConfigError("power-alpha exponent must be finite and > 0");
}

double SiteDistribution::cdf(double t) const {
    if (t <= 0.0) return 0.0;
    if (t >= M) return 1.0;
    const double x = t / M;
    switch (family) {
        case Family::Uniform: return x;
        case Family::PowerAlpha: return std::pow(x, alpha);
        case Family::Triangular: return x <= 0.5 ? 2.0 * x * x : 1.0 - 2.0 * (1.0 - x) * (1.0 - x);
    }
    return 0.0;
}

double SiteDistribution::quantile(double p) const {
    p = std::clamp(p, 0.0, 1.0);
    switch (family) {
        case Family::Uniform: return M * p;
        case Family::PowerAlpha: return M * std::pow(p, 1.0 / alpha);
        case Family::Triangular:
            return p <= 0.5 ? M * std::sqrt(0.5 * p) : M * (1.0 - std::sqrt(0.5 * (1.0 - p)));
    }
    return 0.0;
}

double SiteDistribution::density(double t) const {
    if (t < 0.0 || t > M) return 0.0;
    const double x = t / M;
    switch (family) {
        case Family::Uniform: return 1.0 / M;
        case Family::PowerAlpha:
            if (t == 0.0 && alpha < 1.0) return std::numeric_limits<double>::infinity();
            return alpha * std::pow(x, alpha - 1.0) / M;
        case Family::Triangular: return x <= 0.5 ? 4.0 * x / M : 4.0 * (1.0 - x) / M;
    }
    return 0.0;
}

bool SiteDistribution::has_bounded_density() const {
    return family != Family::PowerAlpha || alpha >= 1.0;
}

double SiteDistribution::density_sup() const {
    switch (family) {
        case Family::Uniform: return 1.0 / M;
        case Family::PowerAlpha:
            return alpha >= 1.0 ? alpha / M : std::numeric_limits<double>::infinity();
        case Family::Triangular: return 2.0 / M;
    }
    return 0.0;
}

std::string SiteDistribution::describe() const {
    std::ostringstream out;
    out.precision(17);
    switch (family) {
        case Family::Uniform: out << "uniform(M=" << M << ")"; break;
        case Family::PowerAlpha: out << "power-alpha(alpha=" << alpha << ",M=" << M << ")"; break;
        case Family::Triangular: out << "triangular(M=" << M << ")"; break;
    }
    return out.str();
}

}  // namespace anderson
