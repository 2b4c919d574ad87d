#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "anderson/errors.hpp"
#include "anderson/lattice.hpp"
#include "anderson/spectral.hpp"
#include "gen.hpp"

using namespace anderson;

namespace {

Eigen::VectorXd sorted_eigenvalues(const SparseSymmetricOperator& H) {
    return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(Eigen::MatrixXd(H), Eigen::EigenvaluesOnly).eigenvalues();
}

// 2 h^-2 sum_a (1 - cos(2 pi k_a / P)) over all wave vectors, sorted
std::vector<double> circulant(int dim, int P, double h) {
    std::vector<double> out;
    const int total = static_cast<int>(std::pow(P, dim));
    for (int idx = 0; idx < total; ++idx) {
        double e = 0.0;
        for (int a = 0, rest = idx; a < dim; ++a, rest /= P)
            e += 2.0 / (h * h) * (1.0 - std::cos(2.0 * std::numbers::pi * (rest % P) / P));
        out.push_back(e);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Direct evaluation oracle: sum over the 3^d nearest torus images of j.
double wrapped_profile(const SingleSitePotential& u, const BoxSpec& box, const Site& j, Index point) {
    const auto g = box.point_at(point);
    double total = 0.0;
    const int images = static_cast<int>(std::pow(3, box.dim));
    for (int m = 0; m < images; ++m) {
        double x[3];
        for (int a = 0, rest = m; a < box.dim; ++a, rest /= 3)
            x[a] = box.coordinate(a, g[a]) - (j[a] + (rest % 3 - 1) * box.side);
        total += u(std::span<const double>(x, box.dim));
    }
    return total;
}

ModelSpec model_with(const SingleSitePotential& u, int dim = 1) {
    ModelSpec m;
    m.dim = dim;
    m.site = u;
    m.default_dist = SiteDistribution::uniform(1);
    m.normalized = true;
    return m;
}

}  // namespace

TEST_CASE("Laplacian circulant examples") {
    const auto L4 = sorted_eigenvalues(build_laplacian(BoxSpec::make(1, 4, 1)));
    CHECK(L4(0) == doctest::Approx(0.0));
    CHECK(L4(1) == doctest::Approx(2.0));
    CHECK(L4(2) == doctest::Approx(2.0));
    CHECK(L4(3) == doctest::Approx(4.0));

    CHECK_THROWS_AS(BoxSpec::make(1, 1, 4).validate(), ConfigError);
    // one unit cell with four grid points, built below the box level
    const auto cell = sorted_eigenvalues(periodic_laplacian(1, 4, 0.25));
    const double expected[] = {0, 32, 32, 64};
    for (int k = 0; k < 4; ++k) CHECK(cell(k) == doctest::Approx(expected[k]).epsilon(1e-12));
}

TEST_CASE("Laplacian spectrum matches the circulant formula") {
    CounterRng r(4);
    for (int trial = 0; trial < 12; ++trial) {
        const int dim = gen::integer(r, 1, 2);
        const int L = 2 * gen::integer(r, 1, dim == 1 ? 8 : 4);
        const int n = gen::integer(r, 1, dim == 1 ? 64 / L : std::max(1, 16 / L));
        const auto box = BoxSpec::make(dim, L, n);
        const auto got = sorted_eigenvalues(build_laplacian(box));
        const auto want = circulant(dim, L * n, box.spacing());
        REQUIRE(static_cast<std::size_t>(got.size()) == want.size());
        for (std::size_t k = 0; k < want.size(); ++k) CHECK(std::abs(got(k) - want[k]) <= 1e-10 * (1.0 + want.back()));
    }
}

TEST_CASE("assembled operators are exactly symmetric with the stencil sparsity") {
    CounterRng r(9);
    for (int trial = 0; trial < 10; ++trial) {
        const int dim = gen::integer(r, 1, 3);
        const auto box = BoxSpec::make(dim, 2 * gen::integer(r, 1, 2), dim == 3 ? 1 : 2);
        auto m = model_with(SingleSitePotential::plateau_bump(0.5, 1.5, 0.3), dim);
        m.normalized = false;
        if (box.side <= 1.5) continue;
        m = normalize_model(m, box);
        const auto H = assemble_hamiltonian(m, sample_disorder(m, box, r.next(), 0));
        const SparseSymmetricOperator Ht = H.transpose();
        CHECK((Eigen::MatrixXd(H) - Eigen::MatrixXd(Ht)).cwiseAbs().maxCoeff() == 0.0);
        for (Index c = 0; c < H.outerSize(); ++c) {
            Index nnz = 0;
            for (SparseSymmetricOperator::InnerIterator it(H, c); it; ++it) ++nnz;
            CHECK(nnz <= 2 * dim + 1);
        }
    }
}

TEST_CASE("site weights equal the directly evaluated wrapped profile") {
    CounterRng r(12);
    for (int trial = 0; trial < 30; ++trial) {
        const int dim = gen::integer(r, 1, 2);
        const int L = 2 * gen::integer(r, 2, 3);
        const auto box = BoxSpec::make(dim, L, dim == 1 ? 8 : 3);
        const double dp = r.uniform(0.3, L / 2.0 + 1.0);
        const double dm = r.uniform(0.1, 1.0) * dp;
        const auto u = r.uniform() < 0.5 ? SingleSitePotential::indicator(dm, dp, 1.0)
                                          : SingleSitePotential::plateau_bump(dm, dp, r.uniform(0.1, 1.0));
        const auto m = model_with(u, dim);
        const Site j = box.site_at(gen::integer(r, 0, static_cast<int>(box.num_sites()) - 1));
        const auto w = site_weight(m, box, j).values;
        for (Index p = 0; p < box.num_points(); ++p) CHECK(w[p] == doctest::Approx(wrapped_profile(u, box, j, p)));
    }
}

TEST_CASE("site weight examples") {
    const auto box = BoxSpec::make(2, 6, 4);
    const auto unit = model_with(SingleSitePotential::indicator(), 2);
    const auto w = site_weight(unit, box, {0, 0}).values;
    CHECK((w.array() != 0.0).count() == 16);
    CHECK(w.sum() == 16.0);
    CHECK(w.maxCoeff() == 1.0);
    CHECK_THROWS_AS(site_weight(unit, box, {3, 0}), DomainError);

    // delta_plus = L/2 + 1: the boundary placement wraps but keeps its size
    const auto box1 = BoxSpec::make(1, 8, 4);
    const auto wide = model_with(SingleSitePotential::indicator(1.0, 5.0, 1.0));
    const auto centred = site_weight(wide, box1, {0}).values;
    const auto edge = site_weight(wide, box1, {-4}).values;
    CHECK((centred.array() != 0.0).count() == (edge.array() != 0.0).count());
    CHECK(edge(0) == 1.0);
    CHECK(edge(box1.num_points() - 1) == 1.0);
}

TEST_CASE("assembly examples") {
    const auto box = BoxSpec::make(1, 4, 1);
    const auto m = model_with(SingleSitePotential::indicator());
    DisorderSample zero{box, Eigen::VectorXd::Zero(4), 0, 0};
    CHECK((Eigen::MatrixXd(assemble_hamiltonian(m, zero)) - Eigen::MatrixXd(build_laplacian(box))).norm() == 0.0);

    DisorderSample flat{box, Eigen::VectorXd::Constant(4, 0.3), 0, 0};
    const Eigen::MatrixXd shifted = Eigen::MatrixXd(build_laplacian(box)) + 0.3 * Eigen::MatrixXd::Identity(4, 4);
    CHECK((Eigen::MatrixXd(assemble_hamiltonian(m, flat)) - shifted).norm() == 0.0);

    ModelSpec raw = m;
    raw.normalized = false;
    CHECK_THROWS_AS(assemble_hamiltonian(raw, zero), UsageError);
}

TEST_CASE("random 4 x 4 Hamiltonian matches a hand-built dense oracle") {
    const auto box = BoxSpec::make(1, 4, 1);
    const auto m = model_with(SingleSitePotential::indicator());
    const auto sample = sample_disorder(m, box, 31, 0);
    // grid point g sits at x = -1.5 + g and belongs to the unit cell of site round-half-up(x)
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(4, 4);
    for (int g = 0; g < 4; ++g) {
        const int site = static_cast<int>(std::floor(-1.5 + g + 0.5));
        H(g, g) = 2.0 + sample.at({site});
        H(g, (g + 1) % 4) = H(g, (g + 3) % 4) = -1.0;
    }
    const auto want = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(H).eigenvalues();
    const auto got = full_spectrum(assemble_hamiltonian(m, sample)).values;
    for (int k = 0; k < 4; ++k) CHECK(std::abs(got(k) - want(k)) <= 1e-12);
}

TEST_CASE("geometry checks") {
    const auto box = BoxSpec::make(2, 4, 4);
    auto g = geometry_checks(model_with(SingleSitePotential::indicator(), 2), box);
    CHECK(g.partition_ok);
    CHECK(g.covering_min == 1.0);
    CHECK(g.u_plus == 1.0);
    CHECK(g.covering_ok);

    g = geometry_checks(model_with(SingleSitePotential::indicator(0.5, 0.5, 1.0), 2), box);
    CHECK(g.covering_min == 0.0);
    CHECK_FALSE(g.covering_ok);

    const auto box1 = BoxSpec::make(1, 8, 16);
    const auto bump = SingleSitePotential::plateau_bump(1.0, 2.0, 0.5);
    g = geometry_checks(model_with(bump), box1);
    double sweep_max = 0.0, sweep_min = 1e300;
    for (Index p = 0; p < box1.num_points(); ++p) {
        double total = 0.0;
        for (Index s = 0; s < box1.num_sites(); ++s) total += wrapped_profile(bump, box1, box1.site_at(s), p);
        sweep_max = std::max(sweep_max, total);
        sweep_min = std::min(sweep_min, total);
    }
    CHECK(g.u_plus <= 2.0);
    CHECK(g.u_plus == doctest::Approx(sweep_max));
    CHECK(g.covering_min == doctest::Approx(sweep_min));
}

TEST_CASE("Gershgorin interval contains the spectrum") {
    CounterRng r(17);
    for (int trial = 0; trial < 10; ++trial) {
        const int dim = gen::integer(r, 1, 2);
        const auto box = BoxSpec::make(dim, 4, dim == 1 ? 8 : 2);
        auto m = model_with(SingleSitePotential::plateau_bump(0.8, 1.8, 0.5), dim);
        m.default_dist = gen::distribution(r);
        const auto sample = sample_disorder(m, box, r.next(), 0);
        const auto V = random_potential(m, sample).values;
        const auto ev = full_spectrum(assemble_hamiltonian(m, sample)).values;
        const double h = box.spacing();
        CHECK(ev.minCoeff() >= V.minCoeff() - 1e-10);
        CHECK(ev.maxCoeff() <= 4.0 * dim / (h * h) + V.maxCoeff() + 1e-10);
        const auto [lo, hi] = gershgorin_bounds(assemble_hamiltonian(m, sample));
        CHECK(ev.minCoeff() >= lo - 1e-10);
        CHECK(ev.maxCoeff() <= hi + 1e-10);
    }
}

TEST_CASE("translating disorder by a unit cell preserves the spectrum") {
    CounterRng r(23);
    for (int trial = 0; trial < 6; ++trial) {
        const int dim = gen::integer(r, 1, 2);
        const auto box = BoxSpec::make(dim, 4, dim == 1 ? 6 : 3);
        auto m = model_with(SingleSitePotential::plateau_bump(0.7, 1.9, 0.4), dim);
        const auto a = sample_disorder(m, box, r.next(), 0);
        DisorderSample b = a;
        for (Index k = 0; k < box.num_sites(); ++k) {
            Site j = box.site_at(k);
            j[0] -= 1;
            b.values[k] = a.at(j);
        }
        const auto ea = full_spectrum(assemble_hamiltonian(m, a)).values;
        const auto eb = full_spectrum(assemble_hamiltonian(m, b)).values;
        CHECK((ea - eb).cwiseAbs().maxCoeff() <= 1e-10 * (1.0 + ea.cwiseAbs().maxCoeff()));
    }
}

TEST_CASE("triplet dump round-trips bit for bit") {
    const auto box = BoxSpec::make(2, 4, 2);
    const auto m = model_with(SingleSitePotential::indicator(), 2);
    const auto H = assemble_hamiltonian(m, sample_disorder(m, box, 5, 1));
    std::stringstream io;
    write_triplets(io, H);
    const auto first_line = io.str().substr(0, io.str().find('\n'));
    CHECK(first_line == "# sparse-symmetric 64 " + std::to_string(H.nonZeros()));
    const auto back = read_triplets(io);
    CHECK((Eigen::MatrixXd(back) - Eigen::MatrixXd(H)).cwiseAbs().maxCoeff() == 0.0);
}
