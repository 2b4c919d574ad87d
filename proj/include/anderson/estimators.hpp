#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "anderson/ensemble.hpp"
#include "anderson/lattice.hpp"
#include "anderson/model.hpp"
#include "anderson/spectral.hpp"

namespace anderson {

struct RunOptions {
    unsigned workers = 1;
    SpectralOptions spectral;
    std::string config_digest;
};

/// Validity ceiling for low-energy windows on a box: fraction * 4d/h^2.
double discretization_ceiling(const BoxSpec& box, double fraction = 0.05);

struct WegnerReport {
    double E0 = 0.0;
    Interval interval;
    EnsembleResult mean_trace;
    double Q_value = 0.0;  // Q_Lambda(|I|)
    double volume = 0.0;   // L^d
    /// mean/(Q volume) for global estimates, mean/Q for local ones.
    double K_empirical = 0.0;
    std::optional<double> bound_rhs;
    std::optional<bool> pass;
    bool outside_validity = false;
};

struct LocalWegnerReport {
    std::vector<Site> sites;
    std::vector<EnsembleResult> per_site;  // E{tr P(I) u_j}
    EnsembleResult global;                 // E{tr P(I)}
    std::size_t max_site = 0;
    WegnerReport max;                      // statistics of the maximizing site
    /// max over samples of |sum_j tr P(I) u_j - tr P(I)|
    double max_partition_defect = 0.0;
};

struct IdsCurve {
    std::vector<double> energies;
    std::vector<EnsembleResult> N;  // per energy, per-sample count / L^d
    BoxSpec box;
};

struct DosCurve {
    std::vector<double> energies;
    std::vector<EnsembleResult> n;  // per energy, per-sample difference quotients
    double bandwidth = 0.0;
};

/// N_L(E) = #{eigenvalues <= E} / L^d per sample, averaged.
IdsCurve estimate_ids(const ModelSpec& spec, const BoxSpec& box, std::vector<double> energies, std::size_t samples,
                      std::uint64_t seed, const RunOptions& options = {});

/// n(E) = (N(E + b) - N(E - b)) / 2b from the piecewise-linear IDS, at the
/// grid energies whose stencil fits in the grid; negative means within one
/// standard error are clamped to 0. UsageError if b < 2 grid spacings.
DosCurve estimate_dos(const IdsCurve& ids, double bandwidth);

/// Resamples omega_j alone (background frozen at sample index 0; resample r
/// uses sample index r + 1 at site j) and estimates
/// E_{omega_j} tr sqrt(u_j) chi_I(H) sqrt(u_j) diag(w) against (sum w) Q_{mu_j}(|I|).
WegnerReport spectral_averaging_experiment(const ModelSpec& spec, const BoxSpec& box, const Site& j, Interval I,
                                           const Eigen::VectorXd& weight, std::size_t samples, std::uint64_t seed,
                                           const RunOptions& options = {});

/// E{tr P(I)} with K = mean / (Q_Lambda(|I|) L^d). Refuses without covering.
WegnerReport wegner_experiment(const ModelSpec& spec, const BoxSpec& box, Interval I, std::size_t samples,
                               std::uint64_t seed, const RunOptions& options = {},
                               std::optional<double> E0 = std::nullopt);

/// E{tr P(I) u_j} for every site, K = max_j mean_j / Q_Lambda(|I|).
LocalWegnerReport local_wegner_experiment(const ModelSpec& spec, const BoxSpec& box, Interval I, std::size_t samples,
                                          std::uint64_t seed, const RunOptions& options = {},
                                          std::optional<double> E0 = std::nullopt);

struct KlwScanOptions {
    double eta = 0.25;
    /// Holder order of mu_Gamma for the slope verdict.
    double alpha = 1.0;
    double slope_tolerance = 0.0;
    /// Require a spine and evaluate the spine-dependent verdicts.
    bool spine_verdicts = true;
    /// Standard errors allowed when checking monotone decay.
    double monotone_sigmas = 2.0;
};

struct KlwScanPoint {
    WegnerReport report;  // local (max over sites)
    double K_stderr = 0.0;
    double rhs_part_ii = 0.0;     // exp(-E0^(-d/2 + eta))
    double shape_part_iii = 0.0;  // E0^(alpha (1 - eta/2))
};

struct KlwScan {
    std::vector<KlwScanPoint> points;
    bool nonincreasing = false;
    /// least squares slope of log K_LW vs log E0 over points with K_LW > 0
    std::optional<double> slope;
    double slope_threshold = 0.0;
    bool slope_ok = false;
    std::string diagnostic;
};

KlwScan klw_decay_scan(const ModelSpec& spec, const BoxSpec& box, const std::vector<double>& E0_list,
                       double interval_fraction, std::size_t samples, std::uint64_t seed,
                       const KlwScanOptions& scan = {}, const RunOptions& options = {});

struct FitPoint {
    double E = 0.0;
    double log_E = 0.0;
    double loglog = 0.0;  // log(-log value)
};

struct LifshitzFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;  // RMS deviation from the line
    std::vector<FitPoint> points;
    Interval window;
};

/// Least squares of log(-log N) against log E over the window, keeping only
/// bins where at least `min_nonzero` samples have N > 0 (and 0 < mean < 1).
/// FitError with fewer than 5 usable points.
LifshitzFit lifshitz_exponent_fit(const IdsCurve& ids, Interval window, std::size_t min_nonzero = 10);
/// Same fit applied to the density of states.
LifshitzFit lifshitz_exponent_fit(const DosCurve& dos, Interval window, std::size_t min_nonzero = 10);

/// Ordinary least squares y = slope x + intercept with RMS residual.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

struct BetaSolution {
    double beta = 0.0;
    double bound = 0.0;
    bool premise_met = false;  // 6 alpha s C^(1/alpha) <= 1
    bool bound_ok = false;     // premise met and beta <= bound
    double residual = 0.0;     // |C beta^alpha exp(beta / 2s) - 1|
};

/// Solves C beta^alpha = exp(-beta / 2s) by bisection on the increasing map
/// log C + alpha log beta + beta / 2s, and evaluates
/// bound = 2 alpha s log(1 / (2 alpha s C^(1/alpha))).
BetaSolution beta_solve(double C, double alpha, double s);

enum class TheoremPart { I, II, III };

/// Constants the theorems leave abstract must be supplied.
struct TheoremParams {
    int d = 1;
    double E0 = 0.0;
    double Q = 1.0;  // Q_Lambda(|I|)
    std::optional<double> C;        // part i: C_{d, ||V_per^-||, delta_+}
    std::optional<double> u_minus;  // part i
    std::optional<double> eta;      // parts ii, iii
    std::optional<double> C_eta;    // part iii
    std::optional<double> C_mu;     // part iii: C_{mu_Gamma}
    std::optional<double> alpha;    // part iii
};

/// Smallest integer > d/4.
int ceil_quarter(int d);

/// Right-hand sides of the local Wegner bounds, for shape comparisons.
double theorem_bounds(TheoremPart part, const TheoremParams& params);

}  // namespace anderson
