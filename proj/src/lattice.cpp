#include "anderson/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "anderson/errors.hpp"

namespace anderson {

namespace {

int floor_mod(int a, int m) {
    const int r = a % m;
    return r < 0 ? r + m : r;
}

struct AxisHit {
    int g;
    double displacement;
};

// Grid points along one axis whose wrapped displacement from coordinate
// `j` lies within `half_width`. Displacements are computed in units of h/2
// so that cell boundaries are hit exactly.
std::vector<AxisHit> axis_hits(const BoxSpec& box, int axis, int j, double half_width) {
    const int n = box.grid_per_unit;
    const int p = box.points_per_axis();
    const int period = 2 * p;
    const int base = 2 * n * (box.origin(axis) - j);
    std::vector<AxisHit> hits;
    for (int g = 0; g < p; ++g) {
        const int m = floor_mod(2 * g + 1 + base + p, period) - p;
        const double d = static_cast<double>(m) / (2.0 * n);
        if (std::abs(d) <= half_width) hits.push_back({g, d});
    }
    return hits;
}

template <typename Fn>
void for_each_in_support(const BoxSpec& box, const Site& j, double half_width, Fn&& fn) {
    std::array<std::vector<AxisHit>, 3> hits;
    for (int a = 0; a < box.dim; ++a) hits[a] = axis_hits(box, a, j[a], half_width);
    for (int a = 0; a < box.dim; ++a)
        if (hits[a].empty()) return;

    const int p = box.points_per_axis();
    std::array<std::size_t, 3> k{};
    Displacement x{};
    while (true) {
        Index idx = 0;
        for (int a = box.dim - 1; a >= 0; --a) {
            idx = idx * p + hits[a][k[a]].g;
            x[a] = hits[a][k[a]].displacement;
        }
        fn(idx, std::span<const double>(x.data(), box.dim));
        int a = 0;
        while (a < box.dim && ++k[a] == hits[a].size()) k[a++] = 0;
        if (a == box.dim) break;
    }
}

SparseGridFunction support_of(const BoxSpec& box, const Site& j, const SingleSitePotential& u) {
    SparseGridFunction out;
    for_each_in_support(box, j, u.support_half_width(), [&](Index idx, std::span<const double> x) {
        const double v = u(x);
        if (v != 0.0) {
            out.points.push_back(idx);
            out.values.push_back(v);
        }
    });
    return out;
}

}  // namespace

SparseSymmetricOperator periodic_laplacian(int dim, int points_per_axis, double spacing) {
    if (dim < 1 || dim > 3 || points_per_axis < 1 || !(spacing > 0.0))
        throw ConfigError("invalid periodic grid");
    Index N = 1;
    for (int a = 0; a < dim; ++a) N *= points_per_axis;
    const double inv_h2 = 1.0 / (spacing * spacing);

    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(static_cast<std::size_t>(N) * (2 * dim + 1));
    Index stride = 1;
    for (int a = 0; a < dim; ++a) {
        for (Index i = 0; i < N; ++i) {
            const int g = static_cast<int>((i / stride) % points_per_axis);
            const Index up = i + (((g + 1) % points_per_axis) - g) * stride;
            const Index down = i + (floor_mod(g - 1, points_per_axis) - g) * stride;
            triplets.emplace_back(i, up, -inv_h2);
            triplets.emplace_back(i, down, -inv_h2);
        }
        stride *= points_per_axis;
    }
    for (Index i = 0; i < N; ++i) triplets.emplace_back(i, i, 2.0 * dim * inv_h2);

    SparseSymmetricOperator L(N, N);
    L.setFromTriplets(triplets.begin(), triplets.end());
    L.prune(0.0);
    return L;
}

SparseSymmetricOperator build_laplacian(const BoxSpec& box) {
    box.validate();
    return periodic_laplacian(box.dim, box.points_per_axis(), box.spacing());
}

SparseGridFunction site_support(const SingleSitePotential& u, const BoxSpec& box, const Site& j) {
    if (!box.contains(j)) throw DomainError("site is not a lattice point of the box");
    if (!(box.side > u.delta_plus)) throw ConfigError("L must exceed the single-site support side delta_plus");
    return support_of(box, j, u);
}

GridFunction site_weight(const ModelSpec& spec, const BoxSpec& box, const Site& j) {
    const auto support = site_support(spec.site, box, j);
    GridFunction out{box, Eigen::VectorXd::Zero(box.num_points())};
    for (std::size_t k = 0; k < support.points.size(); ++k) out.values[support.points[k]] += support.values[k];
    return out;
}

GridFunction site_indicator(const BoxSpec& box, const Site& j) {
    const auto support = site_support(SingleSitePotential::indicator(1.0, 1.0, 1.0), box, j);
    GridFunction out{box, Eigen::VectorXd::Zero(box.num_points())};
    for (std::size_t k = 0; k < support.points.size(); ++k) out.values[support.points[k]] += support.values[k];
    return out;
}

GridFunction periodic_background(const ModelSpec& spec, const BoxSpec& box) {
    GridFunction out{box, Eigen::VectorXd(box.num_points())};
    Displacement x{};
    for (Index i = 0; i < box.num_points(); ++i) {
        const auto g = box.point_at(i);
        for (int a = 0; a < box.dim; ++a) x[a] = box.coordinate(a, g[a]);
        out.values[i] = spec.periodic(std::span<const double>(x.data(), box.dim)) + spec.periodic.shift;
    }
    return out;
}

GridFunction random_potential(const ModelSpec& spec, const DisorderSample& sample) {
    const BoxSpec& box = sample.box;
    if (!(box.side > spec.site.delta_plus)) throw ConfigError("L must exceed the single-site support side delta_plus");
    GridFunction out{box, Eigen::VectorXd::Zero(box.num_points())};
    for (Index s = 0; s < box.num_sites(); ++s) {
        const double omega = sample.values[s];
        if (omega == 0.0) continue;
        for_each_in_support(box, box.site_at(s), spec.site.support_half_width(),
                            [&](Index idx, std::span<const double> x) { out.values[idx] += omega * spec.site(x); });
    }
    return out;
}

SparseSymmetricOperator assemble_with_potential(const BoxSpec& box, const Eigen::VectorXd& potential) {
    if (potential.size() != box.num_points()) throw UsageError("potential length differs from the grid size");
    SparseSymmetricOperator H = build_laplacian(box);
    // every diagonal entry is stored (2d/h^2 > 0), so this does not change the pattern
    for (Index i = 0; i < H.rows(); ++i) H.coeffRef(i, i) += potential[i];
    return H;
}

SparseSymmetricOperator assemble_free_hamiltonian(const ModelSpec& spec, const BoxSpec& box) {
    return assemble_with_potential(box, periodic_background(spec, box).values);
}

SparseSymmetricOperator assemble_hamiltonian(const ModelSpec& spec, const DisorderSample& sample) {
    if (!spec.normalized) throw UsageError("assemble_hamiltonian needs a normalized model");
    const Eigen::VectorXd V = periodic_background(spec, sample.box).values + random_potential(spec, sample).values;
    return assemble_with_potential(sample.box, V);
}

GeometryReport geometry_checks(const ModelSpec& spec, const BoxSpec& box) {
    Eigen::VectorXd chi_sum = Eigen::VectorXd::Zero(box.num_points());
    Eigen::VectorXd u_sum = Eigen::VectorXd::Zero(box.num_points());
    const auto unit = SingleSitePotential::indicator(1.0, 1.0, 1.0);
    for (Index s = 0; s < box.num_sites(); ++s) {
        const Site j = box.site_at(s);
        for_each_in_support(box, j, unit.support_half_width(),
                            [&](Index idx, std::span<const double> x) { chi_sum[idx] += unit(x); });
        for_each_in_support(box, j, spec.site.support_half_width(),
                            [&](Index idx, std::span<const double> x) { u_sum[idx] += spec.site(x); });
    }
    GeometryReport report;
    report.partition_ok = (chi_sum.array() == 1.0).all();
    report.covering_min = u_sum.minCoeff();
    report.u_plus = u_sum.maxCoeff();
    report.covering_condition = spec.site.covers();
    report.covering_ok = report.covering_condition && report.covering_min >= spec.site.u_minus;
    return report;
}

void write_triplets(std::ostream& out, const SparseSymmetricOperator& H) {
    out << "# sparse-symmetric " << H.rows() << ' ' << H.nonZeros() << '\n';
    char buf[64];
    for (Index col = 0; col < H.outerSize(); ++col) {
        for (SparseSymmetricOperator::InnerIterator it(H, col); it; ++it) {
            std::snprintf(buf, sizeof buf, "%.17g", it.value());
            out << it.row() << ' ' << it.col() << ' ' << buf << '\n';
        }
    }
}

SparseSymmetricOperator read_triplets(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("empty triplet stream");
    std::istringstream header(line);
    std::string hash, tag;
    Index N = 0, nnz = 0;
    if (!(header >> hash >> tag >> N >> nnz) || hash != "#" || tag != "sparse-symmetric")
        throw ConfigError("bad triplet header: " + line);
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(static_cast<std::size_t>(nnz));
    Index row = 0, col = 0;
    double value = 0.0;
    while (in >> row >> col >> value) {
        if (row < 0 || col < 0 || row >= N || col >= N) throw ConfigError("triplet index out of range");
        triplets.emplace_back(row, col, value);
    }
    if (static_cast<Index>(triplets.size()) != nnz) throw ConfigError("triplet count does not match the header");
    SparseSymmetricOperator H(N, N);
    H.setFromTriplets(triplets.begin(), triplets.end());
    return H;
}

std::pair<double, double> gershgorin_bounds(const SparseSymmetricOperator& H) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (Index col = 0; col < H.outerSize(); ++col) {
        double diag = 0.0, radius = 0.0;
        for (SparseSymmetricOperator::InnerIterator it(H, col); it; ++it) {
            if (it.row() == col)
                diag += it.value();
            else
                radius += std::abs(it.value());
        }
        lo = std::min(lo, diag - radius);
        hi = std::max(hi, diag + radius);
    }
    if (H.outerSize() == 0) return {0.0, 0.0};
    return {lo, hi};
}

}  // namespace anderson
