#pragma once

#include <Eigen/Core>
#include <vector>

namespace anderson {

using Index = Eigen::Index;

/// Integer lattice point.
using Site = std::vector<int>;

/// Finite torus Lambda_L(center) = center + [-L/2, L/2)^d discretized with
/// n grid points per unit length (spacing h = 1/n).
///
/// Grid point g (per axis) sits at center - L/2 + (g + 1/2) h; sites are the
/// L^d integer points center + {-L/2, ..., L/2 - 1}^d. Flattened indices run
/// with axis 0 fastest.
struct BoxSpec {
    int dim = 1;
    int side = 2;           // L
    int grid_per_unit = 4;  // n
    Site center;            // j0; empty means the origin

    static BoxSpec make(int dim, int side, int grid_per_unit, Site center = {});

    /// L even and positive, n >= 1, 1 <= d <= 3, center of matching length.
    void validate() const;

    double spacing() const { return 1.0 / grid_per_unit; }
    int points_per_axis() const { return grid_per_unit * side; }
    Index num_sites() const;
    Index num_points() const;
    /// |Lambda| = L^d, the volume used in every Wegner normalization.
    double volume() const { return static_cast<double>(num_sites()); }

    int center_coord(int axis) const { return center.empty() ? 0 : center[axis]; }
    /// Integer coordinate of the first site along an axis (center - L/2).
    int origin(int axis) const { return center_coord(axis) - side / 2; }

    bool contains(const Site& j) const;
    /// Flattened index of a site of the box; DomainError if j is not in the box.
    Index site_index(const Site& j) const;
    /// Flattened index of the image of any lattice point in the box (j mod L).
    Index wrapped_site_index(const Site& j) const;
    Site site_at(Index index) const;

    Index point_index(const std::vector<int>& g) const;
    std::vector<int> point_at(Index index) const;
    /// Continuum coordinate of grid point g along an axis.
    double coordinate(int axis, int g) const;

    friend bool operator==(const BoxSpec&, const BoxSpec&) = default;
};

}  // namespace anderson
