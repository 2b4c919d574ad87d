#include "anderson/box.hpp"

#include <string>

#include "anderson/errors.hpp"

namespace anderson {

namespace {

int floor_mod(int a, int m) {
    const int r = a % m;
    return r < 0 ? r + m : r;
}

Index ipow(Index base, int exp) {
    Index r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

}  // namespace

BoxSpec BoxSpec::make(int dim, int side, int grid_per_unit, Site center) {
    BoxSpec box{dim, side, grid_per_unit, std::move(center)};
    box.validate();
    return box;
}

void BoxSpec::validate() const {
    if (dim < 1 || dim > 3) throw ConfigError("box dimension must be 1, 2 or 3");
    if (side < 2 || side % 2 != 0)
        throw ConfigError("box side L must be an even positive integer (got " + std::to_string(side) + ")");
    if (grid_per_unit < 1) throw ConfigError("grid_per_unit n must be >= 1");
    if (!center.empty() && static_cast<int>(center.size()) != dim)
        throw ConfigError("box center has the wrong number of coordinates");
}

Index BoxSpec::num_sites() const { return ipow(side, dim); }

Index BoxSpec::num_points() const { return ipow(points_per_axis(), dim); }

bool BoxSpec::contains(const Site& j) const {
    if (static_cast<int>(j.size()) != dim) return false;
    for (int a = 0; a < dim; ++a) {
        const int off = j[a] - origin(a);
        if (off < 0 || off >= side) return false;
    }
    return true;
}

Index BoxSpec::site_index(const Site& j) const {
    if (!contains(j)) throw DomainError("site is not a lattice point of the box");
    return wrapped_site_index(j);
}

Index BoxSpec::wrapped_site_index(const Site& j) const {
    if (static_cast<int>(j.size()) != dim) throw DomainError("site has the wrong number of coordinates");
    Index idx = 0;
    for (int a = dim - 1; a >= 0; --a) idx = idx * side + floor_mod(j[a] - origin(a), side);
    return idx;
}

Site BoxSpec::site_at(Index index) const {
    Site j(dim);
    for (int a = 0; a < dim; ++a) {
        j[a] = origin(a) + static_cast<int>(index % side);
        index /= side;
    }
    return j;
}

Index BoxSpec::point_index(const std::vector<int>& g) const {
    const int p = points_per_axis();
    Index idx = 0;
    for (int a = dim - 1; a >= 0; --a) idx = idx * p + floor_mod(g[a], p);
    return idx;
}

std::vector<int> BoxSpec::point_at(Index index) const {
    const int p = points_per_axis();
    std::vector<int> g(dim);
    for (int a = 0; a < dim; ++a) {
        g[a] = static_cast<int>(index % p);
        index /= p;
    }
    return g;
}

double BoxSpec::coordinate(int axis, int g) const {
    return origin(axis) + (g + 0.5) * spacing();
}

}  // namespace anderson
