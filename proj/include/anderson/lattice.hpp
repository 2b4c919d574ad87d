#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <iosfwd>
#include <vector>

#include "anderson/box.hpp"
#include "anderson/model.hpp"

namespace anderson {

/// Real symmetric sparse matrix; entry (i, j) and (j, i) are bitwise equal.
using SparseSymmetricOperator = Eigen::SparseMatrix<double>;

/// One real value per grid point of a box.
struct GridFunction {
    BoxSpec box;
    Eigen::VectorXd values;
};

/// Nonzero values of a function on a few grid points.
struct SparseGridFunction {
    std::vector<Index> points;
    std::vector<double> values;

    double dot(const Eigen::VectorXd& dense) const {
        double s = 0.0;
        for (std::size_t k = 0; k < points.size(); ++k) s += values[k] * dense[points[k]];
        return s;
    }
};

/// -Delta on a periodic cubic grid with `points_per_axis` points per axis:
/// diagonal 2d/h^2, -1/h^2 to each periodic neighbour (duplicates summed).
SparseSymmetricOperator periodic_laplacian(int dim, int points_per_axis, double spacing);

/// -Delta^(Lambda) for the box.
SparseSymmetricOperator build_laplacian(const BoxSpec& box);

/// Wrapped single-site potential u_j^(Lambda) restricted to its support.
SparseGridFunction site_support(const SingleSitePotential& u, const BoxSpec& box, const Site& j);

/// u_j^(Lambda) on the grid; DomainError if j is not a site of the box.
GridFunction site_weight(const ModelSpec& spec, const BoxSpec& box, const Site& j);

/// chi_j^(Lambda), the wrapped indicator of the unit cube around j.
GridFunction site_indicator(const BoxSpec& box, const Site& j);

/// V_per^(Lambda) + shift on the grid.
GridFunction periodic_background(const ModelSpec& spec, const BoxSpec& box);

/// sum_j omega_j u_j^(Lambda) on the grid.
GridFunction random_potential(const ModelSpec& spec, const DisorderSample& sample);

/// H_0^(Lambda) = -Delta^(Lambda) + V_per^(Lambda) + shift.
SparseSymmetricOperator assemble_free_hamiltonian(const ModelSpec& spec, const BoxSpec& box);

/// H_omega^(Lambda); UsageError unless the spec is normalized.
SparseSymmetricOperator assemble_hamiltonian(const ModelSpec& spec, const DisorderSample& sample);

/// Same operator with an explicit total potential on the diagonal.
SparseSymmetricOperator assemble_with_potential(const BoxSpec& box, const Eigen::VectorXd& potential);

struct GeometryReport {
    bool partition_ok = false;    // sum_j chi_j = 1 at every grid point
    double covering_min = 0.0;    // min_x sum_j u_j(x)
    double u_plus = 0.0;          // max_x sum_j u_j(x)
    bool covering_condition = false;  // delta_minus >= 1
    bool covering_ok = false;     // covering_condition and covering_min >= u_minus
};

GeometryReport geometry_checks(const ModelSpec& spec, const BoxSpec& box);

/// Plain-text sparse triplet dump. First line "# sparse-symmetric <N> <nnz>",
/// then one "row col value" line per stored entry (0-based, %.17g values).
void write_triplets(std::ostream& out, const SparseSymmetricOperator& H);
SparseSymmetricOperator read_triplets(std::istream& in);

/// Gershgorin interval containing the spectrum.
std::pair<double, double> gershgorin_bounds(const SparseSymmetricOperator& H);

}  // namespace anderson
