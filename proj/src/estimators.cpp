#include "anderson/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "anderson/concentration.hpp"
#include "anderson/errors.hpp"

namespace anderson {

namespace {

SpectralOptions windowed_options(const BoxSpec& box, const RunOptions& options) {
    SpectralOptions spectral = options.spectral;
    if (!spectral.validity_ceiling) spectral.validity_ceiling = discretization_ceiling(box, spectral.validity_fraction);
    return spectral;
}

void require_covering(const ModelSpec& spec, const BoxSpec& box) {
    const auto geometry = geometry_checks(spec, box);
    if (!geometry.covering_ok)
        throw UsageError("covering condition fails (delta_minus >= 1 and sum_j u_j >= u_minus are required); "
                         "the Wegner experiments refuse to run");
}

void require_window(Interval I) {
    if (!(I.length() > 0.0)) throw UsageError("energy window must have positive length");
}

// Linear interpolation of y(x) on an increasing grid; x must lie in range.
double interpolate(const std::vector<double>& x, const std::vector<double>& y, double at) {
    auto it = std::upper_bound(x.begin(), x.end(), at);
    if (it == x.begin()) return y.front();
    if (it == x.end()) return y.back();
    const auto k = static_cast<std::size_t>(it - x.begin());
    const double t = (at - x[k - 1]) / (x[k] - x[k - 1]);
    return y[k - 1] + t * (y[k] - y[k - 1]);
}

LifshitzFit fit_loglog(const std::vector<double>& energies, const std::vector<EnsembleResult>& values,
                       Interval window, std::size_t min_nonzero, const char* what) {
    LifshitzFit fit;
    fit.window = window;
    std::vector<double> x, y;
    std::size_t in_window = 0;
    for (std::size_t i = 0; i < energies.size(); ++i) {
        const double E = energies[i];
        if (E < window.lo || E > window.hi || !(E > 0.0)) continue;
        ++in_window;
        const auto& r = values[i];
        const auto nonzero = static_cast<std::size_t>(
            std::count_if(r.per_sample.begin(), r.per_sample.end(), [](double v) { return v > 0.0; }));
        if (nonzero < min_nonzero || !(r.mean > 0.0) || !(r.mean < 1.0)) continue;
        fit.points.push_back({E, std::log(E), std::log(-std::log(r.mean))});
        x.push_back(fit.points.back().log_E);
        y.push_back(fit.points.back().loglog);
    }
    if (fit.points.size() < 5) {
        std::ostringstream msg;
        msg << "Lifshitz fit of " << what << " needs at least 5 usable energies in [" << window.lo << ", "
            << window.hi << "], found " << fit.points.size() << " of " << in_window
            << " (bins need >= " << min_nonzero << " samples with a nonzero value); increase samples or L";
        throw FitError(msg.str());
    }
    const auto line = fit_line(x, y);
    fit.slope = line.slope;
    fit.intercept = line.intercept;
    fit.residual = line.residual;
    return fit;
}

}  // namespace

EnsembleResult summarize(std::vector<double> values, std::uint64_t seed, std::string config_digest) {
    EnsembleResult r;
    r.samples = values.size();
    r.seed = seed;
    r.config_digest = std::move(config_digest);
    if (!values.empty()) {
        r.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
        if (values.size() > 1) {
            double ss = 0.0;
            for (double v : values) ss += (v - r.mean) * (v - r.mean);
            r.standard_error = std::sqrt(ss / static_cast<double>(values.size() - 1)) /
                               std::sqrt(static_cast<double>(values.size()));
        }
    }
    r.per_sample = std::move(values);
    return r;
}

double discretization_ceiling(const BoxSpec& box, double fraction) {
    const double h = box.spacing();
    return fraction * 4.0 * box.dim / (h * h);
}

IdsCurve estimate_ids(const ModelSpec& spec, const BoxSpec& box, std::vector<double> energies, std::size_t samples,
                      std::uint64_t seed, const RunOptions& options) {
    if (!spec.normalized) throw UsageError("estimate_ids needs a normalized model");
    if (samples == 0) throw UsageError("at least one sample is required");
    if (!std::is_sorted(energies.begin(), energies.end())) throw UsageError("energy grid must be increasing");
    validate_box_for_model(spec, box);
    const double volume = box.volume();

    const auto per_sample = run_indexed<std::vector<double>>(samples, options.workers, [&](std::size_t s) {
        const auto H = assemble_hamiltonian(spec, sample_disorder(spec, box, seed, s));
        InertiaCounter counter(H, options.spectral);
        std::vector<double> row(energies.size());
        for (std::size_t e = 0; e < energies.size(); ++e)
            row[e] = static_cast<double>(counter.count_leq(energies[e])) / volume;
        return row;
    });

    IdsCurve curve{energies, {}, box};
    for (std::size_t e = 0; e < energies.size(); ++e) {
        std::vector<double> column(samples);
        for (std::size_t s = 0; s < samples; ++s) column[s] = per_sample[s][e];
        curve.N.push_back(summarize(std::move(column), seed, options.config_digest));
    }
    return curve;
}

DosCurve estimate_dos(const IdsCurve& ids, double bandwidth) {
    const auto& E = ids.energies;
    if (E.size() < 3) throw UsageError("density of states needs at least 3 energies");
    double max_gap = 0.0;
    for (std::size_t i = 1; i < E.size(); ++i) max_gap = std::max(max_gap, E[i] - E[i - 1]);
    if (bandwidth < 2.0 * max_gap * (1.0 - 1e-12))
        throw UsageError("bandwidth must be at least 2 grid spacings");

    DosCurve dos;
    dos.bandwidth = bandwidth;
    const std::size_t samples = ids.N.empty() ? 0 : ids.N.front().samples;
    const double slack = 1e-12 * (E.back() - E.front());
    std::vector<double> column(E.size());
    for (double at : E) {
        if (at - bandwidth < E.front() - slack || at + bandwidth > E.back() + slack) continue;
        const double lo = std::max(at - bandwidth, E.front());
        const double hi = std::min(at + bandwidth, E.back());
        std::vector<double> values(samples);
        for (std::size_t s = 0; s < samples; ++s) {
            for (std::size_t i = 0; i < E.size(); ++i) column[i] = ids.N[i].per_sample[s];
            values[s] = (interpolate(E, column, hi) - interpolate(E, column, lo)) / (2.0 * bandwidth);
        }
        auto r = summarize(std::move(values), ids.N.front().seed, ids.N.front().config_digest);
        if (r.mean < 0.0 && -r.mean <= r.standard_error) r.mean = 0.0;
        dos.energies.push_back(at);
        dos.n.push_back(std::move(r));
    }
    return dos;
}

WegnerReport spectral_averaging_experiment(const ModelSpec& spec, const BoxSpec& box, const Site& j, Interval I,
                                           const Eigen::VectorXd& weight, std::size_t samples, std::uint64_t seed,
                                           const RunOptions& options) {
    if (!spec.normalized) throw UsageError("spectral averaging needs a normalized model");
    if (samples == 0) throw UsageError("at least one sample is required");
    if (I.length() < 0.0) throw UsageError("window upper end below its lower end");
    if (weight.size() != box.num_points()) throw UsageError("weight length differs from the grid size");
    if ((weight.array() < 0.0).any()) throw UsageError("spectral averaging weight must be nonnegative");
    validate_box_for_model(spec, box);

    const auto support = site_support(spec.site, box, j);
    const Index site = box.site_index(j);
    const DisorderSample background = sample_disorder(spec, box, seed, 0);
    Eigen::VectorXd V = periodic_background(spec, box).values + random_potential(spec, background).values;
    for (std::size_t k = 0; k < support.points.size(); ++k)
        V[support.points[k]] -= background.values[site] * support.values[k];

    SparseGridFunction uw = support;
    for (std::size_t k = 0; k < uw.points.size(); ++k) uw.values[k] *= weight[uw.points[k]];

    const auto spectral = windowed_options(box, options);
    auto values = run_indexed<double>(samples, options.workers, [&](std::size_t r) {
        const double omega = sample_coupling(spec, j, seed, r + 1);
        Eigen::VectorXd Vr = V;
        for (std::size_t k = 0; k < support.points.size(); ++k) Vr[support.points[k]] += omega * support.values[k];
        if (I.length() == 0.0) return 0.0;
        const auto pairs = window_eigenpairs(assemble_with_potential(box, Vr), I, spectral);
        return uw.dot(spectral_density(pairs));
    });

    WegnerReport report;
    report.E0 = I.hi;
    report.interval = I;
    report.mean_trace = summarize(std::move(values), seed, options.config_digest);
    report.Q_value = wegner_Q(spec.distribution_at(j), I.length(), 0);
    report.volume = box.volume();
    report.K_empirical = report.Q_value > 0.0 ? report.mean_trace.mean / report.Q_value : 0.0;
    report.bound_rhs = weight.sum() * report.Q_value;
    report.pass = report.mean_trace.mean <= *report.bound_rhs + 3.0 * report.mean_trace.standard_error;
    report.outside_validity = I.hi > *spectral.validity_ceiling;
    return report;
}

WegnerReport wegner_experiment(const ModelSpec& spec, const BoxSpec& box, Interval I, std::size_t samples,
                               std::uint64_t seed, const RunOptions& options, std::optional<double> E0) {
    if (!spec.normalized) throw UsageError("wegner_experiment needs a normalized model");
    if (samples == 0) throw UsageError("at least one sample is required");
    require_window(I);
    validate_box_for_model(spec, box);
    require_covering(spec, box);

    const auto spectral = windowed_options(box, options);
    auto values = run_indexed<double>(samples, options.workers, [&](std::size_t s) {
        InertiaCounter counter(assemble_hamiltonian(spec, sample_disorder(spec, box, seed, s)), spectral);
        return static_cast<double>(counter.count_leq(I.hi) - counter.count_leq(I.lo));
    });

    WegnerReport report;
    report.E0 = E0.value_or(I.hi);
    report.interval = I;
    report.mean_trace = summarize(std::move(values), seed, options.config_digest);
    report.Q_value = q_lambda(spec, box, I.length(), 0);
    report.volume = box.volume();
    report.K_empirical = report.mean_trace.mean / (report.Q_value * report.volume);
    report.outside_validity = I.hi > *spectral.validity_ceiling;
    return report;
}

LocalWegnerReport local_wegner_experiment(const ModelSpec& spec, const BoxSpec& box, Interval I, std::size_t samples,
                                          std::uint64_t seed, const RunOptions& options, std::optional<double> E0) {
    if (!spec.normalized) throw UsageError("local_wegner_experiment needs a normalized model");
    if (samples == 0) throw UsageError("at least one sample is required");
    require_window(I);
    validate_box_for_model(spec, box);
    require_covering(spec, box);

    const Index num_sites = box.num_sites();
    std::vector<SparseGridFunction> supports;
    supports.reserve(static_cast<std::size_t>(num_sites));
    for (Index s = 0; s < num_sites; ++s) supports.push_back(site_support(spec.site, box, box.site_at(s)));

    const auto spectral = windowed_options(box, options);
    // row layout: [count, t_0, ..., t_{L^d - 1}]
    const auto rows = run_indexed<std::vector<double>>(samples, options.workers, [&](std::size_t s) {
        const auto pairs =
            window_eigenpairs(assemble_hamiltonian(spec, sample_disorder(spec, box, seed, s)), I, spectral);
        const Eigen::VectorXd rho = spectral_density(pairs);
        std::vector<double> row(static_cast<std::size_t>(num_sites) + 1);
        row[0] = static_cast<double>(pairs.values.size());
        for (Index k = 0; k < num_sites; ++k) row[static_cast<std::size_t>(k) + 1] = supports[k].dot(rho);
        return row;
    });

    LocalWegnerReport report;
    std::vector<double> column(samples);
    for (std::size_t s = 0; s < samples; ++s) {
        column[s] = rows[s][0];
        const double local_sum = std::accumulate(rows[s].begin() + 1, rows[s].end(), 0.0);
        report.max_partition_defect = std::max(report.max_partition_defect, std::abs(local_sum - rows[s][0]));
    }
    report.global = summarize(column, seed, options.config_digest);
    for (Index k = 0; k < num_sites; ++k) {
        for (std::size_t s = 0; s < samples; ++s) column[s] = rows[s][static_cast<std::size_t>(k) + 1];
        report.sites.push_back(box.site_at(k));
        report.per_site.push_back(summarize(column, seed, options.config_digest));
        if (report.per_site.back().mean > report.per_site[report.max_site].mean)
            report.max_site = static_cast<std::size_t>(k);
    }

    auto& max = report.max;
    max.E0 = E0.value_or(I.hi);
    max.interval = I;
    max.mean_trace = report.per_site[report.max_site];
    max.Q_value = q_lambda(spec, box, I.length(), 0);
    max.volume = box.volume();
    max.K_empirical = max.mean_trace.mean / max.Q_value;
    max.outside_validity = I.hi > *spectral.validity_ceiling;
    return report;
}

KlwScan klw_decay_scan(const ModelSpec& spec, const BoxSpec& box, const std::vector<double>& E0_list,
                       double interval_fraction, std::size_t samples, std::uint64_t seed,
                       const KlwScanOptions& scan, const RunOptions& options) {
    if (E0_list.empty()) throw UsageError("E0 list is empty");
    for (std::size_t i = 0; i < E0_list.size(); ++i) {
        if (!(E0_list[i] > 0.0)) throw UsageError("E0 values must be positive");
        if (i > 0 && !(E0_list[i] < E0_list[i - 1])) throw UsageError("E0 list must be strictly decreasing");
    }
    if (!(interval_fraction > 0.0) || interval_fraction > 1.0)
        throw UsageError("interval fraction must lie in (0, 1]");
    if (scan.spine_verdicts) {
        if (!spec.spine) throw UsageError("spine-dependent verdicts need a model with a spine");
        validate_box_for_model(spec, box, true);
    }

    KlwScan out;
    const double d = spec.dim;
    for (double E0 : E0_list) {
        const Interval I{0.0, interval_fraction * E0};
        auto local = local_wegner_experiment(spec, box, I, samples, seed, options, E0);
        KlwScanPoint p;
        p.report = std::move(local.max);
        p.K_stderr = p.report.mean_trace.standard_error / p.report.Q_value;
        p.rhs_part_ii = std::exp(-std::pow(E0, -d / 2.0 + scan.eta));
        p.shape_part_iii = std::pow(E0, scan.alpha * (1.0 - scan.eta / 2.0));
        p.report.bound_rhs = p.rhs_part_ii;
        out.points.push_back(std::move(p));
    }

    out.nonincreasing = true;
    for (std::size_t i = 1; i < out.points.size(); ++i) {
        const auto& a = out.points[i - 1];
        const auto& b = out.points[i];
        const double sigma = std::hypot(a.K_stderr, b.K_stderr);
        if (b.report.K_empirical > a.report.K_empirical + scan.monotone_sigmas * sigma) out.nonincreasing = false;
    }

    std::vector<double> x, y;
    for (const auto& p : out.points) {
        if (p.report.K_empirical > 0.0) {
            x.push_back(std::log(p.report.E0));
            y.push_back(std::log(p.report.K_empirical));
        }
    }
    out.slope_threshold = scan.alpha * (1.0 - scan.eta / 2.0) - scan.slope_tolerance;
    if (x.size() >= 2) {
        out.slope = fit_line(x, y).slope;
        out.slope_ok = *out.slope >= out.slope_threshold;
    } else {
        std::ostringstream msg;
        msg << "only " << x.size() << " of " << out.points.size()
            << " scan points have K_LW > 0; the log-log slope is undefined (increase samples, L, or E0)";
        out.diagnostic = msg.str();
    }
    return out;
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw FitError("line fit needs at least two points");
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (!(sxx > 0.0)) throw FitError("line fit needs distinct abscissae");
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (fit.slope * x[i] + fit.intercept);
        ss += r * r;
    }
    fit.residual = std::sqrt(ss / n);
    return fit;
}

LifshitzFit lifshitz_exponent_fit(const IdsCurve& ids, Interval window, std::size_t min_nonzero) {
    return fit_loglog(ids.energies, ids.N, window, min_nonzero, "the IDS");
}

LifshitzFit lifshitz_exponent_fit(const DosCurve& dos, Interval window, std::size_t min_nonzero) {
    return fit_loglog(dos.energies, dos.n, window, min_nonzero, "the density of states");
}

BetaSolution beta_solve(double C, double alpha, double s) {
    if (!(C > 0.0) || !(alpha > 0.0) || !(s > 0.0)) throw DomainError("beta_solve needs C, alpha, s > 0");
    const double logC = std::log(C);
    const auto phi = [&](double b) { return logC + alpha * std::log(b) + b / (2.0 * s); };

    double lo = 1.0, hi = 1.0;
    while (phi(lo) > 0.0) lo *= 0.5;
    while (phi(hi) < 0.0) hi *= 2.0;
    for (int it = 0; it < 2000; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (phi(mid) < 0.0 ? lo : hi) = mid;
    }

    BetaSolution out;
    out.beta = std::abs(phi(lo)) <= std::abs(phi(hi)) ? lo : hi;
    out.residual = std::abs(std::expm1(phi(out.beta)));
    const double x = 2.0 * alpha * s * std::pow(C, 1.0 / alpha);
    out.bound = 2.0 * alpha * s * std::log(1.0 / x);
    out.premise_met = 3.0 * x <= 1.0;
    out.bound_ok = out.premise_met && out.beta <= out.bound;
    return out;
}

int ceil_quarter(int d) {
    if (d < 1) throw DomainError("dimension must be >= 1");
    return d / 4 + 1;
}

double theorem_bounds(TheoremPart part, const TheoremParams& p) {
    if (!(p.E0 > 0.0)) throw UsageError("theorem bounds need E0 > 0");
    switch (part) {
        case TheoremPart::I: {
            if (!p.C || !p.u_minus) throw UsageError("part (i) needs the constant C and u_minus");
            return *p.C * std::pow(*p.u_minus, -1.5) * std::pow(1.0 + p.E0, 2 * ceil_quarter(p.d)) *
                   (1.0 + std::log1p(p.E0)) * p.Q;
        }
        case TheoremPart::II: {
            if (!p.eta) throw UsageError("part (ii) needs eta");
            if (!(*p.eta > 0.0) || !(*p.eta < p.d / 2.0)) throw UsageError("part (ii) needs 0 < eta < d/2");
            return std::exp(-std::pow(p.E0, -p.d / 2.0 + *p.eta)) * p.Q;
        }
        case TheoremPart::III: {
            if (!p.eta || !p.C_eta || !p.C_mu || !p.alpha)
                throw UsageError("part (iii) needs eta, C_eta, C_mu and alpha");
            const double a = *p.alpha;
            const double arg = 2.0 * a * p.E0 * std::pow(*p.C_mu, a);
            if (!(arg < 1.0)) throw DomainError("part (iii) bound needs 2 alpha E0 C_mu^alpha < 1");
            const double inner = *p.C_mu * std::pow(2.0 * a * p.E0 * std::log(1.0 / arg), a);
            return *p.C_eta * std::pow(inner, 1.0 - *p.eta) * p.Q;
        }
    }
    return 0.0;
}

}  // namespace anderson
