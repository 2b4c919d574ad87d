#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "anderson/errors.hpp"
#include "anderson/lattice.hpp"
#include "anderson/model.hpp"
#include "anderson/spectral.hpp"
#include "gen.hpp"

using namespace anderson;

namespace {

ModelSpec uniform_model(int dim = 1, double M = 1.0) {
    ModelSpec m;
    m.dim = dim;
    m.default_dist = SiteDistribution::uniform(M);
    return m;
}

}  // namespace

TEST_CASE("splitmix64 matches the reference sequence") {
    // first outputs of the reference generator seeded with 0
    std::uint64_t state = 0;
    const auto next = [&] {
        const auto out = splitmix64(state);
        state += 0x9e3779b97f4a7c15ULL;
        return out;
    };
    CHECK(next() == 0xe220a8397b1dcdafULL);
    CHECK(next() == 0x6e789e6aa1b965f4ULL);
    CHECK(next() == 0x06c45d188009454fULL);

    CounterRng rng(0);
    CHECK(rng.next() == 0xe220a8397b1dcdafULL);
    CHECK(rng.next() == 0x6e789e6aa1b965f4ULL);
}

TEST_CASE("unit draws stay strictly inside (0, 1)") {
    CHECK(to_unit_open(0) > 0.0);
    CHECK(to_unit_open(~0ULL) < 1.0);
}

TEST_CASE("distribution quantile inverts the CDF") {
    CounterRng r(11);
    for (int trial = 0; trial < 300; ++trial) {
        const auto d = gen::distribution(r);
        const double p = r.uniform();
        const double t = d.quantile(p);
        CHECK(t >= 0.0);
        CHECK(t <= d.M);
        CHECK(d.cdf(t) == doctest::Approx(p).epsilon(1e-12));
    }
}

TEST_CASE("distribution families") {
    CHECK(SiteDistribution::uniform(2).density_sup() == doctest::Approx(0.5));
    CHECK(SiteDistribution::triangular(2).density_sup() == doctest::Approx(1.0));
    CHECK_FALSE(SiteDistribution::power_alpha(0.5, 1).has_bounded_density());
    CHECK(SiteDistribution::power_alpha(2, 1).density_sup() == doctest::Approx(2.0));
    CHECK(SiteDistribution::triangular(1).cdf(0.5) == doctest::Approx(0.5));
    CHECK_THROWS_AS(SiteDistribution::uniform(0).validate(), ConfigError);
    CHECK_THROWS_AS(SiteDistribution::power_alpha(-1, 1).validate(), ConfigError);
}

TEST_CASE("single-site profiles respect their sandwich") {
    const auto bump = SingleSitePotential::plateau_bump(0.6, 1.6, 0.4);
    CounterRng r(5);
    for (int trial = 0; trial < 2000; ++trial) {
        const double x[2] = {r.uniform(-1.2, 1.2), r.uniform(-1.2, 1.2)};
        const double radius = std::max(std::abs(x[0]), std::abs(x[1]));
        const double v = bump(std::span<const double>(x, 2));
        CHECK(v <= 1.0);
        if (radius < 0.3) CHECK(v >= 0.4);
        if (radius > 0.8) CHECK(v == 0.0);
    }
    const double origin[1] = {0.0};
    CHECK(bump(std::span<const double>(origin, 1)) == 1.0);

    const auto ind = SingleSitePotential::indicator();
    const double edge[1] = {-0.5}, out[1] = {0.5};
    CHECK(ind(std::span<const double>(edge, 1)) == 1.0);
    CHECK(ind(std::span<const double>(out, 1)) == 0.0);
    CHECK_THROWS_AS(SingleSitePotential::indicator(2, 1, 1).validate(), ConfigError);
}

TEST_CASE("normalize_model closed forms") {
    const BoxSpec box = BoxSpec::make(1, 8, 4);
    auto m = uniform_model();
    CHECK(normalize_model(m, box).periodic.shift == doctest::Approx(0.0).epsilon(1e-12));
    m.periodic = PeriodicPotential::constant(0.7);
    CHECK(normalize_model(m, box).periodic.shift == doctest::Approx(-0.7).epsilon(1e-12));
    m.periodic = PeriodicPotential::cosine(1.0, 2);
    CHECK_THROWS_AS(normalize_model(m, BoxSpec::make(1, 6, 4)), ConfigError);
}

TEST_CASE("cosine normalization matches a dense solve on the whole box") {
    // independent oracle: the full 128 x 128 torus matrix, L = 8, n = 16
    const int n = 16, L = 8, N = n * L;
    const double h = 1.0 / n;
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(N, N);
    for (int g = 0; g < N; ++g) {
        const double x = -L / 2.0 + (g + 0.5) * h;
        H(g, g) = 2.0 / (h * h) + std::cos(2.0 * std::numbers::pi * x);
        H(g, (g + 1) % N) -= 1.0 / (h * h);
        H(g, (g + N - 1) % N) -= 1.0 / (h * h);
    }
    const double lambda_min = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(H).eigenvalues()(0);

    auto m = uniform_model();
    m.periodic = PeriodicPotential::cosine(1.0, 1);
    const auto box = BoxSpec::make(1, L, n);
    const auto normalized = normalize_model(m, box);
    CHECK(normalized.normalized);
    CHECK(normalized.periodic.shift == doctest::Approx(-lambda_min).epsilon(1e-10));

    const auto spectrum = full_spectrum(assemble_free_hamiltonian(normalized, box)).values;
    const double range = spectrum.maxCoeff() - spectrum.minCoeff();
    CHECK(std::abs(spectrum(0)) <= 1e-10 * range);
}

TEST_CASE("normalization is exact on the box for random periodic backgrounds") {
    CounterRng r(21);
    for (int trial = 0; trial < 12; ++trial) {
        const int dim = gen::integer(r, 1, 2);
        const int q = gen::integer(r, 1, 2);
        const int n = dim == 1 ? 4 : 2;
        auto m = uniform_model(dim);
        m.periodic.kind = PeriodicPotential::Kind::Samples;
        m.periodic.period = q;
        m.periodic.samples_per_unit = n;
        const int cells = static_cast<int>(std::pow(q * n, dim));
        for (int k = 0; k < cells; ++k) m.periodic.samples.push_back(r.uniform(-3.0, 3.0));
        const auto box = BoxSpec::make(dim, 2 * q * gen::integer(r, 1, 2), n);
        const auto normalized = normalize_model(m, box);
        const auto spectrum = full_spectrum(assemble_free_hamiltonian(normalized, box)).values;
        const double range = spectrum.maxCoeff() - spectrum.minCoeff();
        CHECK(std::abs(spectrum(0)) <= 1e-10 * range);
    }
}

TEST_CASE("sample_disorder is deterministic and in range") {
    const auto box = BoxSpec::make(2, 6, 1);
    auto m = normalize_model(uniform_model(2, 1.5), box);
    const auto a = sample_disorder(m, box, 99, 3);
    const auto b = sample_disorder(m, box, 99, 3);
    CHECK(a.values == b.values);
    CHECK(a.values != sample_disorder(m, box, 99, 4).values);
    CHECK(a.values != sample_disorder(m, box, 98, 3).values);
    CHECK(a.values.minCoeff() >= 0.0);
    CHECK(a.values.maxCoeff() <= 1.5);
    CHECK_THROWS_AS(sample_disorder(uniform_model(2), box, 1, 0), UsageError);
}

TEST_CASE("couplings lie in [0, M_j] over random seeds") {
    CounterRng r(3);
    for (int trial = 0; trial < 10000; ++trial) {
        ModelSpec m;
        m.default_dist = gen::distribution(r);
        const Site j{gen::integer(r, -50, 50)};
        const double w = sample_coupling(m, j, r.next(), r.next());
        CHECK(w >= 0.0);
        CHECK(w <= m.default_dist.M);
    }
}

TEST_CASE("draws depend only on the site, not on enumeration or the box") {
    const auto small = BoxSpec::make(2, 4, 1);
    const auto large = BoxSpec::make(2, 8, 1, {1, -1});
    auto m = normalize_model(uniform_model(2), small);
    const auto a = sample_disorder(m, small, 7, 2);
    const auto b = sample_disorder(m, large, 7, 2);
    // reverse enumeration, one site at a time
    for (Index k = small.num_sites() - 1; k >= 0; --k) {
        const Site j = small.site_at(k);
        CHECK(a.values[k] == sample_coupling(m, j, 7, 2));
        CHECK(a.values[k] == b.at(j));
    }
}

TEST_CASE("PowerAlpha(0.5) draws follow the sqrt CDF") {
    ModelSpec m;
    m.default_dist = SiteDistribution::power_alpha(0.5, 1.0);
    const int draws = 100000;
    std::vector<double> w(draws);
    for (int k = 0; k < draws; ++k) w[k] = sample_coupling(m, Site{k % 1000}, 2024, static_cast<std::uint64_t>(k / 1000));
    for (double s : {0.01, 0.1, 0.25, 0.5, 0.9}) {
        const double p = std::sqrt(s);
        const double hits = static_cast<double>(std::count_if(w.begin(), w.end(), [&](double v) { return v <= s; }));
        const double se = std::sqrt(p * (1 - p) / draws);
        CHECK(std::abs(hits / draws - p) <= 3 * se);
    }
}

TEST_CASE("spine assignment wins over overrides") {
    auto m = uniform_model(1);
    m.overrides[{2}] = SiteDistribution::triangular(1);
    m.overrides[{3}] = SiteDistribution::triangular(1);
    m.spine = SpineSpec{{0}, 2, SiteDistribution::uniform(2)};
    CHECK(m.distribution_at({2}) == SiteDistribution::uniform(2));
    CHECK(m.distribution_at({3}) == SiteDistribution::triangular(1));
    CHECK(m.distribution_at({5}) == SiteDistribution::uniform(1));
    CHECK(m.max_coupling() == 2.0);
    CHECK_FALSE(m.identically_distributed());
}

TEST_CASE("subspine examples") {
    const SpineSpec unit{{0}, 1, SiteDistribution::uniform(1)};
    auto s = subspine_for(unit, {0});
    CHECK(s.j0 == Site{1});
    CHECK(s.K == 2);

    s = subspine_for(SpineSpec{{0}, 2, SiteDistribution::uniform(1)}, {4});
    CHECK(s.j0 == Site{2});
    CHECK(s.K == 4);

    const SpineSpec sp2{{0, 0}, 3, SiteDistribution::uniform(1)};
    s = subspine_for(sp2, {3, 0});
    CHECK(sp2.contains(s.j0));
    CHECK_FALSE(s.contains({3, 0}));
}

TEST_CASE("subspine_for: contained in the spine and avoids j, exhaustive windows") {
    CounterRng r(8);
    for (int dim = 1; dim <= 2; ++dim) {
        for (int trial = 0; trial < 4; ++trial) {
            SpineSpec sp;
            sp.K = gen::integer(r, 1, 3);
            for (int a = 0; a < dim; ++a) sp.j0.push_back(gen::integer(r, -5, 5));
            std::vector<int> j(static_cast<std::size_t>(dim));
            for (int i0 = -10; i0 < 10; ++i0) {
                for (int i1 = -10; i1 < (dim == 2 ? 10 : -9); ++i1) {
                    j[0] = i0;
                    if (dim == 2) j[1] = i1;
                    const auto sub = subspine_for(sp, j);
                    CHECK(sub.K == 2 * sp.K);
                    CHECK_FALSE(sub.contains(j));
                    // sub lattice points in a window all belong to the spine
                    for (int t = -2; t <= 2; ++t) {
                        Site p = sub.j0;
                        for (auto& c : p) c += t * sub.K;
                        CHECK(sp.contains(p));
                    }
                }
            }
        }
    }
}
