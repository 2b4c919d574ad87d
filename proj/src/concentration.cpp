#include "anderson/concentration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "anderson/errors.hpp"

namespace anderson {

namespace {

using Family = SiteDistribution::Family;

// int_0^t u^m d nu(u), clamped to the support.
double moment_part(const SiteDistribution& d, int m, double t) {
    t = std::clamp(t, 0.0, d.M);
    const double M = d.M;
    switch (d.family) {
        case Family::Uniform: return std::pow(t, m + 1) / ((m + 1) * M);
        case Family::PowerAlpha: return d.alpha * std::pow(t, m + d.alpha) / ((m + d.alpha) * std::pow(M, d.alpha));
        case Family::Triangular: {
            const double half = 0.5 * M;
            const double c = 4.0 / (M * M);
            const auto left = [&](double x) { return c * std::pow(x, m + 2) / (m + 2); };
            if (t <= half) return left(t);
            return left(half) + c * (M * (std::pow(t, m + 1) - std::pow(half, m + 1)) / (m + 1) -
                                     (std::pow(t, m + 2) - std::pow(half, m + 2)) / (m + 2));
        }
    }
    return 0.0;
}

// Maximizes a continuous function on [lo, hi]: dense scan, then golden
// section on the bracket around the best scan point.
template <typename Fn>
double maximize(Fn&& f, double lo, double hi, int scan = 4000) {
    if (!(hi > lo)) return f(lo);
    double best_x = lo, best = f(lo);
    const double step = (hi - lo) / scan;
    for (int i = 1; i <= scan; ++i) {
        const double x = lo + i * step;
        const double v = f(x);
        if (v > best) {
            best = v;
            best_x = x;
        }
    }
    double a = std::max(lo, best_x - step), b = std::min(hi, best_x + step);
    constexpr double phi = 0.6180339887498949;
    double c = b - phi * (b - a), d = a + phi * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < 100 && (b - a) > 1e-15 * (1.0 + std::abs(a)); ++it) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = f(d);
        }
    }
    return std::max({best, fc, fd, f(lo), f(hi)});
}

}  // namespace

ConcentrationProfile concentration_profile(const SiteDistribution& dist, std::optional<double> holder_alpha) {
    ConcentrationProfile p;
    p.dist = dist;
    p.bounded_density = dist.has_bounded_density();
    if (p.bounded_density) p.density_sup = dist.density_sup();
    if (holder_alpha) {
        const auto h = holder_constant(dist, *holder_alpha);
        p.holder_alpha = holder_alpha;
        if (h.holder) p.holder_const = h.constant;
    }
    return p;
}

double concentration_S(const SiteDistribution& dist, double s) {
    if (s < 0.0) throw DomainError("concentration function needs s >= 0");
    const double x = std::min(s / dist.M, 1.0);
    switch (dist.family) {
        case Family::Uniform: return x;
        // the density is monotone, so the heaviest window sits at an endpoint
        case Family::PowerAlpha: return dist.alpha <= 1.0 ? std::pow(x, dist.alpha) : 1.0 - std::pow(1.0 - x, dist.alpha);
        // symmetric unimodal: the heaviest window is centred on the mode
        case Family::Triangular: return 1.0 - (1.0 - x) * (1.0 - x);
    }
    return 0.0;
}

double moment_measure(const SiteDistribution& dist, int m, double lo, double hi) {
    if (m < 0) throw DomainError("moment order must be >= 0");
    if (hi <= lo) return 0.0;
    const double base = dist.cdf(hi) - dist.cdf(lo);
    if (m == 0) return base;
    return base + moment_part(dist, m, hi) - moment_part(dist, m, lo);
}

double concentration_S_moment(const SiteDistribution& dist, double s, int m) {
    if (s < 0.0) throw DomainError("concentration function needs s >= 0");
    if (m == 0) return concentration_S(dist, s);
    if (s >= dist.M) return moment_measure(dist, m, 0.0, dist.M);
    return maximize([&](double a) { return moment_measure(dist, m, a, a + s); }, 0.0, dist.M - s);
}

double moment_density_sup(const SiteDistribution& dist, int m) {
    if (!dist.has_bounded_density()) return std::numeric_limits<double>::infinity();
    if (m == 0) return dist.density_sup();
    const double M = dist.M;
    switch (dist.family) {
        case Family::Uniform: return (1.0 + std::pow(M, m)) / M;
        case Family::PowerAlpha: return (1.0 + std::pow(M, m)) * dist.alpha / M;  // both factors increase
        case Family::Triangular:
            return maximize([&](double t) { return (1.0 + std::pow(t, m)) * dist.density(t); }, 0.0, M);
    }
    return 0.0;
}

double wegner_Q(const SiteDistribution& dist, double s, int m) {
    if (s < 0.0) throw DomainError("concentration function needs s >= 0");
    if (m < 0) throw DomainError("moment order must be >= 0");
    if (dist.has_bounded_density()) return moment_density_sup(dist, m) * s;
    return 8.0 * concentration_S_moment(dist, s, m);
}

double moment_bound(const SiteDistribution& dist, double s, int m) {
    return std::pow(1.0 + dist.M, m) * wegner_Q(dist, s, 0);
}

bool moment_bound_holds(const SiteDistribution& dist, double s, int m) {
    const double bound = moment_bound(dist, s, m);
    return wegner_Q(dist, s, m) <= bound * (1.0 + 1e-12);
}

double q_lambda(std::span<const SiteDistribution> layout, double s, int m) {
    double q = 0.0;
    for (const auto& d : layout) q = std::max(q, wegner_Q(d, s, m));
    return q;
}

double q_lambda(const ModelSpec& spec, const BoxSpec& box, double s, int m) {
    const auto layout = spec.site_distributions(box);
    return q_lambda(layout, s, m);
}

HolderEstimate holder_constant(const SiteDistribution& dist, double alpha) {
    if (!(alpha > 0.0) || alpha > 1.0) throw DomainError("Holder order must lie in (0, 1]");
    constexpr int kPoints = 400;
    constexpr double kLo = 1e-6;
    HolderEstimate est;
    est.alpha = alpha;
    double sup = 0.0;
    for (int i = 0; i < kPoints; ++i) {
        const double s = kLo * std::pow(1.0 / kLo, static_cast<double>(i) / (kPoints - 1));
        const double ratio = wegner_Q(dist, s, 0) / std::pow(s, alpha);
        sup = std::max(sup, ratio);
        if (s <= 10.0 * kLo * (1.0 + 1e-12)) est.max_ratio_smallest_decade = std::max(est.max_ratio_smallest_decade, ratio);
        if (i == kPoints - 1) est.ratio_at_one = ratio;
    }
    est.holder = est.max_ratio_smallest_decade <= 10.0 * est.ratio_at_one;
    est.constant = est.holder ? sup : std::numeric_limits<double>::infinity();
    return est;
}

int moment_order_md(int d) {
    if (d < 1) throw DomainError("dimension must be >= 1");
    return 4 * d;  // 2^(2 + log2 d)
}

}  // namespace anderson
