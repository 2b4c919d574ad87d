#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "anderson/errors.hpp"
#include "anderson/estimators.hpp"
#include "gen.hpp"

using namespace anderson;

namespace {

ModelSpec unit_model(double M = 1.0) {
    ModelSpec m;
    m.default_dist = SiteDistribution::uniform(M);
    m.normalized = true;
    return m;
}

IdsCurve synthetic(const std::vector<double>& energies, double (*N)(double), std::size_t samples = 12) {
    IdsCurve c;
    c.energies = energies;
    for (double E : energies) c.N.push_back(summarize(std::vector<double>(samples, N(E))));
    return c;
}

// Independent least squares through the normal equations.
double ols_slope(const std::vector<FitPoint>& pts) {
    Eigen::MatrixXd A(static_cast<Index>(pts.size()), 2);
    Eigen::VectorXd y(static_cast<Index>(pts.size()));
    for (std::size_t i = 0; i < pts.size(); ++i) {
        A(static_cast<Index>(i), 0) = pts[i].log_E;
        A(static_cast<Index>(i), 1) = 1.0;
        y[static_cast<Index>(i)] = pts[i].loglog;
    }
    return (A.transpose() * A).ldlt().solve(A.transpose() * y)(0);
}

double lambert_w(double x) {
    double w = std::log(x) - std::log(std::log(x));
    for (int i = 0; i < 50; ++i) w -= (w * std::exp(w) - x) / (std::exp(w) * (w + 1.0));
    return w;
}

}  // namespace

TEST_CASE("summarize") {
    const auto r = summarize({1.0, 2.0, 4.0}, 7, "abc");
    CHECK(r.mean == doctest::Approx(7.0 / 3.0));
    const double sd = std::sqrt(((1 - r.mean) * (1 - r.mean) + (2 - r.mean) * (2 - r.mean) + (4 - r.mean) * (4 - r.mean)) / 2);
    CHECK(r.standard_error == doctest::Approx(sd / std::sqrt(3.0)));
    CHECK(r.samples == 3);
    CHECK(r.seed == 7);
    CHECK(r.config_digest == "abc");
    CHECK(summarize({5.0}).standard_error == 0.0);
}

TEST_CASE("IDS of the nearly free operator equals the circulant count") {
    const auto box = BoxSpec::make(1, 16, 4);
    const auto m = unit_model(1e-9);
    const std::vector<double> E{-0.5, 1e-6, 1.0, 5.0, 40.0};
    const auto ids = estimate_ids(m, box, E, 3, 1);
    CHECK(ids.N[0].mean == 0.0);
    const int P = 64;
    for (std::size_t e = 1; e < E.size(); ++e) {
        int count = 0;
        for (int k = 0; k < P; ++k) count += 2.0 * 16 * (1.0 - std::cos(2.0 * std::numbers::pi * k / P)) <= E[e];
        CHECK(ids.N[e].mean == doctest::Approx(count / 16.0));
    }
}

TEST_CASE("IDS is monotone per sample and independent of the worker count") {
    const auto box = BoxSpec::make(1, 8, 4);
    const auto m = unit_model();
    std::vector<double> E;
    for (int i = 0; i <= 30; ++i) E.push_back(-0.2 + 0.2 * i);
    RunOptions one, three;
    three.workers = 3;
    const auto a = estimate_ids(m, box, E, 9, 42, one);
    const auto b = estimate_ids(m, box, E, 9, 42, three);
    for (std::size_t e = 0; e < E.size(); ++e) {
        CHECK(a.N[e].per_sample == b.N[e].per_sample);
        CHECK(a.N[e].mean >= 0.0);
        if (e > 0)
            for (std::size_t s = 0; s < 9; ++s) CHECK(a.N[e].per_sample[s] >= a.N[e - 1].per_sample[s]);
    }
}

TEST_CASE("DOS from synthetic IDS curves") {
    std::vector<double> E;
    for (int i = 0; i <= 20; ++i) E.push_back(0.1 * i);
    const auto linear = estimate_dos(synthetic(E, [](double e) { return 0.7 * e; }), 0.2);
    for (const auto& n : linear.n) CHECK(n.mean == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(linear.energies.front() == doctest::Approx(0.2));
    CHECK(linear.energies.back() == doctest::Approx(1.8));
    const auto flat = estimate_dos(synthetic(E, [](double) { return 0.3; }), 0.3);
    for (const auto& n : flat.n) CHECK(n.mean == 0.0);
    CHECK_THROWS_AS(estimate_dos(synthetic(E, [](double e) { return e; }), 0.1), UsageError);
}

TEST_CASE("spectral averaging examples") {
    const auto box = BoxSpec::make(1, 8, 4);
    const auto m = unit_model();
    const Site j{1};
    const auto chi = site_indicator(box, j).values;
    const auto empty = spectral_averaging_experiment(m, box, j, {0.3, 0.3}, chi, 20, 3);
    CHECK(empty.mean_trace.mean == 0.0);
    CHECK(*empty.bound_rhs == 0.0);
    const auto zero = spectral_averaging_experiment(m, box, j, {0.2, 0.4}, Eigen::VectorXd::Zero(32), 20, 3);
    CHECK(zero.mean_trace.mean == 0.0);
    CHECK(*zero.pass);

    const auto r = spectral_averaging_experiment(m, box, j, {0.2, 0.4}, chi, 2000, 3);
    CHECK(*r.bound_rhs == doctest::Approx(chi.sum() * 0.2));
    CHECK(*r.pass);
    CHECK(r.mean_trace.mean <= *r.bound_rhs + 3 * r.mean_trace.standard_error);
}

TEST_CASE("Wegner experiments") {
    const auto box = BoxSpec::make(1, 8, 4);
    auto m = unit_model();
    const auto wide = wegner_experiment(m, box, {0.3, 0.8}, 50, 5);
    const auto narrow = wegner_experiment(m, box, {0.3, 0.30001}, 50, 5);
    CHECK(wide.mean_trace.mean > 0.0);
    CHECK(narrow.mean_trace.mean <= wide.mean_trace.mean);
    CHECK(wegner_experiment(m, box, {0.3, 0.3 + 1e-12}, 50, 5).mean_trace.mean == 0.0);
    CHECK(wide.K_empirical == doctest::Approx(wide.mean_trace.mean / (0.5 * 8)));

    auto gappy = m;
    gappy.site = SingleSitePotential::indicator(0.5, 0.5, 1.0);
    CHECK_THROWS_AS(wegner_experiment(gappy, box, {0.3, 0.8}, 5, 5), UsageError);
    CHECK_THROWS_AS(local_wegner_experiment(gappy, box, {0.3, 0.8}, 5, 5), UsageError);
}

TEST_CASE("local Wegner: sites partition the global trace; i.i.d. sites agree") {
    const auto box = BoxSpec::make(1, 8, 4);
    const auto m = unit_model();
    const Interval I{0.2, 1.5};
    const auto local = local_wegner_experiment(m, box, I, 300, 12);
    const auto global = wegner_experiment(m, box, I, 300, 12);
    CHECK(local.max_partition_defect <= 1e-10);
    CHECK(local.global.per_sample == global.mean_trace.per_sample);
    double avg = 0.0;
    for (const auto& s : local.per_site) avg += s.mean / local.per_site.size();
    for (const auto& s : local.per_site) CHECK(std::abs(s.mean - avg) <= 4 * s.standard_error);
    CHECK(local.max.K_empirical == doctest::Approx(local.per_site[local.max_site].mean / 1.3));
}

TEST_CASE("K_LW scan mechanics") {
    const auto box = BoxSpec::make(1, 8, 4);
    auto m = unit_model();
    KlwScanOptions no_spine;
    no_spine.spine_verdicts = false;
    const auto one = klw_decay_scan(m, box, {0.9}, 0.5, 40, 2, no_spine);
    const auto direct = local_wegner_experiment(m, box, {0.0, 0.45}, 40, 2);
    REQUIRE(one.points.size() == 1);
    CHECK(one.points[0].report.K_empirical == direct.max.K_empirical);
    CHECK(one.nonincreasing);
    CHECK_FALSE(one.slope);

    CHECK_THROWS_AS(klw_decay_scan(m, box, {0.4, 0.2}, 0.5, 5, 2), UsageError);
    m.spine = SpineSpec{{0}, 1, SiteDistribution::uniform(1)};
    CHECK_THROWS_AS(klw_decay_scan(m, box, {0.2, 0.4}, 0.5, 5, 2), UsageError);
    const auto scan = klw_decay_scan(m, box, {1.6, 0.8}, 0.5, 30, 2);
    CHECK(scan.points.size() == 2);
    CHECK(scan.points[0].rhs_part_ii == doctest::Approx(std::exp(-std::pow(1.6, -0.5 + 0.25))));
    CHECK(scan.slope_threshold == doctest::Approx(1.0 - 0.125));

    TheoremParams p;
    p.d = 2;
    p.E0 = 0.04;
    p.eta = 0.5;
    CHECK(theorem_bounds(TheoremPart::II, p) == doctest::Approx(std::exp(-5.0)));
    CHECK(theorem_bounds(TheoremPart::II, p) == doctest::Approx(6.74e-3).epsilon(1e-3));
}

TEST_CASE("Lifshitz fits of synthetic curves") {
    std::vector<double> E = gen::log_grid(0.02, 0.2, 12);
    const auto tail = lifshitz_exponent_fit(synthetic(E, [](double e) { return std::exp(-1.0 / std::sqrt(e)); }),
                                            {0.02, 0.2});
    CHECK(std::abs(tail.slope + 0.5) <= 1e-10);
    CHECK(tail.residual <= 1e-10);
    CHECK(tail.points.size() == 12);

    const auto far = gen::log_grid(1e-6, 1e-3, 12);
    const auto plain = lifshitz_exponent_fit(synthetic(far, [](double e) { return e; }), {1e-6, 1e-3});
    CHECK(plain.slope == doctest::Approx(ols_slope(plain.points)).epsilon(1e-10));
    CHECK(plain.slope < 0.0);
    CHECK(plain.slope > -0.15);  // d log|log E| / d log E = 1 / log E

    CHECK_THROWS_AS(lifshitz_exponent_fit(synthetic(E, [](double e) { return e; }, 5), {0.02, 0.2}), FitError);
    CHECK_THROWS_AS(lifshitz_exponent_fit(synthetic(E, [](double e) { return e; }), {0.02, 0.03}), FitError);
}

TEST_CASE("beta solver examples") {
    const auto b = beta_solve(1.0, 1.0, 0.01);
    CHECK(b.beta == doctest::Approx(lambert_w(50.0) / 50.0).epsilon(1e-12));
    CHECK(b.beta == doctest::Approx(0.05722).epsilon(1e-4));
    CHECK(b.bound == doctest::Approx(0.02 * std::log(50.0)));
    CHECK(b.bound == doctest::Approx(0.07824).epsilon(1e-4));
    CHECK(b.premise_met);
    CHECK(b.bound_ok);
    CHECK(beta_solve(1, 1, 1e-8).beta < beta_solve(1, 1, 1e-4).beta);
    const auto far = beta_solve(1.0, 1.0, 0.2);
    CHECK_FALSE(far.premise_met);
    CHECK_FALSE(far.bound_ok);
}

TEST_CASE("beta solver sweep") {
    CounterRng r(52);
    int premised = 0;
    for (int i = 0; i < 100; ++i) {
        const double C = std::exp(r.uniform(std::log(0.05), std::log(20.0)));
        const double alpha = r.uniform(0.1, 1.0);
        const double s = std::exp(r.uniform(std::log(1e-6), std::log(0.5)));
        const auto b = beta_solve(C, alpha, s);
        CHECK(b.residual <= 1e-9);
        if (6 * alpha * s * std::pow(C, 1 / alpha) <= 1) {
            ++premised;
            CHECK(b.bound_ok);
        }
    }
    CHECK(premised > 20);
}

TEST_CASE("theorem bounds") {
    CHECK(ceil_quarter(1) == 1);
    CHECK(ceil_quarter(3) == 1);
    CHECK(ceil_quarter(4) == 2);
    TheoremParams p;
    p.E0 = 0.3;
    CHECK_THROWS_AS(theorem_bounds(TheoremPart::I, p), UsageError);
    p.C = 2.0;
    p.u_minus = 0.25;
    CHECK(theorem_bounds(TheoremPart::I, p) == doctest::Approx(2.0 * 8.0 * 1.3 * 1.3 * (1 + std::log(1.3))));
    p.eta = 0.0;
    p.C_eta = 1.0;
    p.C_mu = 1.5;
    p.alpha = 1.0;
    CHECK(theorem_bounds(TheoremPart::III, p) == doctest::Approx(1.5 * 0.6 * std::log(1.0 / (0.6 * 1.5))));
    p.E0 = 1.0;
    CHECK_THROWS_AS(theorem_bounds(TheoremPart::III, p), DomainError);
    p.C_mu.reset();
    CHECK_THROWS_AS(theorem_bounds(TheoremPart::III, p), UsageError);
}
