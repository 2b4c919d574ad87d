#include "anderson/runner.hpp"

#include <cmath>
#include <cstdio>
#include <ctime>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "anderson/concentration.hpp"
#include "anderson/errors.hpp"
#include "anderson/estimators.hpp"
#include "anderson/lemma31.hpp"

namespace anderson {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string site_label(const Site& j) {
    std::string s;
    for (std::size_t a = 0; a < j.size(); ++a) s += (a ? ";" : "") + std::to_string(j[a]);
    return s;
}

std::string utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// Writes CSV rows; one instance per run.
class Csv {
public:
    explicit Csv(std::ostream& out) : out_(out) {}

    void header(std::initializer_list<const char*> columns) {
        bool first = true;
        for (const char* c : columns) {
            out_ << (first ? "" : ",") << c;
            first = false;
        }
        out_ << '\n';
    }

    template <typename... Cells>
    void row(const Cells&... cells) {
        bool first = true;
        ((out_ << (first ? "" : ",") << cell(cells), first = false), ...);
        out_ << '\n';
    }

private:
    static std::string cell(double v) { return num(v); }
    static std::string cell(const std::string& s) { return s; }
    static std::string cell(const char* s) { return s; }
    static std::string cell(bool b) { return b ? "true" : "false"; }
    static std::string cell(std::size_t v) { return std::to_string(v); }
    static std::string cell(int v) { return std::to_string(v); }

    std::ostream& out_;
};

struct Outcome {
    std::optional<bool> pass;
    std::string summary;
};

void wegner_row(Csv& csv, const WegnerReport& r, const std::string& label) {
    csv.row(r.E0, r.interval.lo, r.interval.hi, label, r.mean_trace.mean, r.mean_trace.standard_error, r.Q_value,
            r.K_empirical);
}

Outcome run_ids(const ExperimentConfig& c, const ModelSpec& model, const RunOptions& opts, Csv& csv) {
    const auto ids = estimate_ids(model, c.box, c.energies, c.samples, c.seed, opts);
    csv.header({"E", "N_mean", "N_stderr", "samples", "L", "n", "d"});
    for (std::size_t i = 0; i < ids.energies.size(); ++i)
        csv.row(ids.energies[i], ids.N[i].mean, ids.N[i].standard_error, c.samples, c.box.side, c.box.grid_per_unit,
                c.box.dim);
    return {std::nullopt, "ids: " + std::to_string(ids.energies.size()) + " energies"};
}

Outcome run_dos(const ExperimentConfig& c, const ModelSpec& model, const RunOptions& opts, Csv& csv) {
    const auto dos = estimate_dos(estimate_ids(model, c.box, c.energies, c.samples, c.seed, opts), *c.bandwidth);
    csv.header({"E", "n_mean", "n_stderr", "samples", "L", "n", "d"});
    for (std::size_t i = 0; i < dos.energies.size(); ++i)
        csv.row(dos.energies[i], dos.n[i].mean, dos.n[i].standard_error, c.samples, c.box.side, c.box.grid_per_unit,
                c.box.dim);
    return {std::nullopt, "dos: " + std::to_string(dos.energies.size()) + " energies, bandwidth " + num(dos.bandwidth)};
}

constexpr std::initializer_list<const char*> kWegnerColumns = {"E0", "I_lo", "I_hi", "site_or_global",
                                                                "mean", "stderr", "Q", "K_emp"};

Outcome run_wegner(const ExperimentConfig& c, const ModelSpec& model, const RunOptions& opts, Csv& csv) {
    const auto r = wegner_experiment(model, c.box, c.interval, c.samples, c.seed, opts, c.E0);
    csv.header(kWegnerColumns);
    wegner_row(csv, r, "global");
    std::string summary = "wegner: K_emp = " + num(r.K_empirical);
    if (r.outside_validity) summary += " (window above the discretization-validity ceiling)";
    return {std::nullopt, summary};
}

Outcome run_local_wegner(const ExperimentConfig& c, const ModelSpec& model, const RunOptions& opts, Csv& csv) {
    const auto r = local_wegner_experiment(model, c.box, c.interval, c.samples, c.seed, opts, c.E0);
    csv.header(kWegnerColumns);
    WegnerReport site = r.max;
    for (std::size_t k = 0; k < r.sites.size(); ++k) {
        site.mean_trace = r.per_site[k];
        site.K_empirical = site.mean_trace.mean / site.Q_value;
        wegner_row(csv, site, site_label(r.sites[k]));
    }
    WegnerReport global = r.max;
    global.mean_trace = r.global;
    global.K_empirical = global.mean_trace.mean / (global.Q_value * global.volume);
    wegner_row(csv, global, "global");
    return {std::nullopt, "local-wegner: K_LW = " + num(r.max.K_empirical) + " at site " +
                              site_label(r.sites[r.max_site]) + ", partition defect " +
                              num(r.max_partition_defect)};
}

Outcome run_klw(const ExperimentConfig& c, const ModelSpec& model, const RunOptions& opts, Csv& csv) {
    KlwScanOptions scan;
    scan.eta = c.eta;
    scan.alpha = c.holder_alpha;
    scan.slope_tolerance = c.slope_tolerance;
    scan.spine_verdicts = c.spine_verdicts;
    const auto r = klw_decay_scan(model, c.box, c.E0_list, c.interval_fraction, c.samples, c.seed, scan, opts);
    csv.header({"E0", "I_lo", "I_hi", "site_or_global", "mean", "stderr", "Q", "K_emp", "eta", "rhs_part_ii"});
    for (const auto& p : r.points) {
        const auto& w = p.report;
        csv.row(w.E0, w.interval.lo, w.interval.hi, "max", w.mean_trace.mean, w.mean_trace.standard_error, w.Q_value,
                w.K_empirical, c.eta, p.rhs_part_ii);
    }

    bool pass = r.nonincreasing;
    std::string summary = std::string("klw-scan: nonincreasing=") + (r.nonincreasing ? "yes" : "no");
    bool slope_applies = false;
    if (c.spine_verdicts && model.spine && c.holder_alpha <= 1.0)
        slope_applies = holder_constant(model.spine->mu, c.holder_alpha).holder;
    if (slope_applies) {
        if (r.slope) {
            summary += ", slope=" + num(*r.slope) + " (threshold " + num(r.slope_threshold) + ")";
            pass = pass && r.slope_ok;
        } else {
            summary += ", slope undefined: " + r.diagnostic;
            pass = false;
        }
    }
    return {pass, summary};
}

Outcome run_spectral_averaging(const ExperimentConfig& c, const ModelSpec& model, const RunOptions& opts, Csv& csv) {
    Eigen::VectorXd weight = Eigen::VectorXd::Ones(c.box.num_points());
    if (c.weight == "indicator") weight = site_indicator(c.box, c.site).values;
    const auto r = spectral_averaging_experiment(model, c.box, c.site, c.interval, weight, c.samples, c.seed, opts);
    csv.header({"site", "I_lo", "I_hi", "mean", "stderr", "rhs", "pass"});
    csv.row(site_label(c.site), r.interval.lo, r.interval.hi, r.mean_trace.mean, r.mean_trace.standard_error,
            *r.bound_rhs, *r.pass);
    return {*r.pass, "spectral-averaging: LHS " + num(r.mean_trace.mean) + " +- " +
                         num(r.mean_trace.standard_error) + " vs RHS " + num(*r.bound_rhs)};
}

Outcome run_lifshitz(const ExperimentConfig& c, const ModelSpec& model, const RunOptions& opts, Csv& csv) {
    const auto ids = estimate_ids(model, c.box, c.energies, c.samples, c.seed, opts);
    const auto fit = c.fit_source == "dos"
                         ? lifshitz_exponent_fit(estimate_dos(ids, *c.bandwidth), c.fit_window, c.min_nonzero)
                         : lifshitz_exponent_fit(ids, c.fit_window, c.min_nonzero);
    csv.header({"E", "logE", "loglogN", "fit_slope", "fit_residual"});
    for (const auto& p : fit.points) csv.row(p.E, p.log_E, p.loglog, fit.slope, fit.residual);
    return {std::nullopt, "lifshitz: slope " + num(fit.slope) + ", residual " + num(fit.residual) + " over " +
                              std::to_string(fit.points.size()) + " energies"};
}

Outcome run_lemma31(const ExperimentConfig& c, Csv& csv) {
    csv.header({"trial", "trace_value"});
    std::size_t failures = 0;
    for (std::size_t t = 0; t < c.trials; ++t) {
        const auto trial = lemma31_trial(c.seed, t, c.min_dim, c.max_dim);
        csv.row(t, trial.gap_trace);
        if (!trial.pass) ++failures;
    }
    return {failures == 0, "lemma31: " + std::to_string(c.trials - failures) + "/" + std::to_string(c.trials) +
                               " trials satisfy both trace inequalities"};
}

Outcome run_beta(const ExperimentConfig& c, Csv& csv) {
    csv.header({"C", "alpha", "s", "beta", "bound", "bound_ok"});
    std::size_t checked = 0, failures = 0;
    for (double C : c.C_list)
        for (double alpha : c.alpha_list)
            for (double s : c.s_list) {
                const auto b = beta_solve(C, alpha, s);
                csv.row(C, alpha, s, b.beta, b.bound, b.bound_ok);
                if (b.residual > 1e-9) ++failures;
                if (b.premise_met) {
                    ++checked;
                    if (!b.bound_ok) ++failures;
                }
            }
    return {failures == 0, "beta: " + std::to_string(checked) + " rows meet the premise, " +
                               std::to_string(failures) + " failures"};
}

Outcome dispatch(const ExperimentConfig& c, const RunOptions& opts, Csv& csv) {
    switch (c.type) {
        case ExperimentType::Lemma31: return run_lemma31(c, csv);
        case ExperimentType::Beta: return run_beta(c, csv);
        default: break;
    }
    const ModelSpec model = normalize_model(c.model, c.box);
    switch (c.type) {
        case ExperimentType::Ids: return run_ids(c, model, opts, csv);
        case ExperimentType::Dos: return run_dos(c, model, opts, csv);
        case ExperimentType::Wegner: return run_wegner(c, model, opts, csv);
        case ExperimentType::LocalWegner: return run_local_wegner(c, model, opts, csv);
        case ExperimentType::KlwScan: return run_klw(c, model, opts, csv);
        case ExperimentType::SpectralAveraging: return run_spectral_averaging(c, model, opts, csv);
        case ExperimentType::Lifshitz: return run_lifshitz(c, model, opts, csv);
        default: break;
    }
    throw UsageError("unhandled experiment type");
}

}  // namespace

int run_experiment(const ExperimentConfig& config, std::ostream& out, std::ostream& summary) {
    const nlohmann::json meta = {{"config_digest", config.digest},
                                 {"seed", config.seed},
                                 {"tool_version", kToolVersion},
                                 {"experiment", experiment_name(config.type)},
                                 {"samples", config.samples},
                                 {"timestamp", utc_timestamp()}};
    out << meta.dump() << '\n';

    RunOptions opts;
    opts.workers = config.workers;
    opts.spectral = config.spectral;
    opts.config_digest = config.digest;

    // Rows are buffered so a failed run never leaves a half-written table.
    std::ostringstream body;
    Csv csv(body);
    const auto incomplete = [&](const std::string& why, const std::string& hint, int status) {
        out << body.str() << "# incomplete: " << why << '\n';
        out.flush();
        summary << "INCOMPLETE: " << why << (hint.empty() ? "" : " (" + hint + ")") << '\n';
        return status;
    };
    try {
        const auto outcome = dispatch(config, opts, csv);
        out << body.str();
        out.flush();
        if (outcome.pass) {
            summary << (*outcome.pass ? "PASS " : "FAIL ") << outcome.summary << '\n';
            return *outcome.pass ? kExitPass : kExitVerdictFail;
        }
        summary << "DONE " << outcome.summary << '\n';
        return kExitPass;
    } catch (const CapacityError& e) {
        return incomplete(e.what(), "raise --dense-threshold or reduce L or n", kExitIncomplete);
    } catch (const FitError& e) {
        return incomplete(e.what(), "", kExitIncomplete);
    } catch (const NumericalError& e) {
        return incomplete(e.what(), "", kExitIncomplete);
    } catch (const Error& e) {
        return incomplete(e.what(), "", kExitConfigError);
    }
}

}  // namespace anderson
