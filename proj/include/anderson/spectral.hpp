#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCholesky>
#include <optional>
#include <vector>

#include "anderson/lattice.hpp"

namespace anderson {

struct SpectralOptions {
    /// Largest dimension handled by dense eigensolves.
    Index dense_threshold = 4096;
    /// Validity ceiling as a fraction of the spectral width when no explicit
    /// ceiling is set.
    double validity_fraction = 0.05;
    std::optional<double> validity_ceiling;
    /// Shifts closer than this (relative to the spectral range) to an
    /// eigenvalue are nudged upwards before counting.
    double tie_tolerance = 1e-12;
    int max_retries = 3;
    /// Residual tolerance of the iterative window solver, relative to the range.
    double residual_tolerance = 1e-10;
    int max_iterations = 500;
};

/// Energy window (lo, hi]. Half-open so that counts over adjacent windows add up.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double length() const { return hi - lo; }
    bool contains(double e) const { return e > lo && e <= hi; }
};

struct Eigenpairs {
    Eigen::VectorXd values;   // ascending
    Eigen::MatrixXd vectors;  // l2-normalized columns; empty if not requested
};

struct SpectralWindowResult {
    Interval window;
    Eigen::VectorXd eigenvalues;
    std::optional<double> weighted_trace;
    /// Window reaches above the discretization-validity ceiling.
    bool outside_validity = false;
};

/// All eigenvalues (and optionally eigenvectors) by dense diagonalization.
/// CapacityError above `dense_threshold`.
Eigenpairs full_spectrum(const SparseSymmetricOperator& H, bool with_vectors = false,
                         const SpectralOptions& options = {});

/// Counts eigenvalues <= E from the inertia of an LDL^T factorization of
/// H - E (Sylvester's law). The symbolic analysis is done once and reused
/// for every energy.
class InertiaCounter {
public:
    explicit InertiaCounter(const SparseSymmetricOperator& H, const SpectralOptions& options = {});

    Index count_leq(double E);
    /// Spectral range estimate (Gershgorin) used for the relative tolerances.
    double range() const { return range_; }

private:
    SparseSymmetricOperator shifted_;
    Eigen::VectorXd diagonal_;
    std::vector<Index> diagonal_slots_;
    Eigen::SimplicialLDLT<SparseSymmetricOperator, Eigen::Lower, Eigen::AMDOrdering<int>> ldlt_;
    SpectralOptions options_;
    double lower_ = 0.0;
    double range_ = 1.0;
};

Index count_leq(const SparseSymmetricOperator& H, double E, const SpectralOptions& options = {});

/// Eigenpairs with eigenvalues in (lo, hi]. Dense below the threshold;
/// otherwise shift-invert subspace iteration about the window midpoint,
/// terminated once the inertia count of the window is matched.
Eigenpairs window_eigenpairs(const SparseSymmetricOperator& H, Interval window,
                             const SpectralOptions& options = {});

/// sum_{lambda_m in I} |psi_m(x)|^2 at every grid point.
Eigen::VectorXd spectral_density(const Eigenpairs& pairs);

/// tr chi_I(H) with unit weight: the eigenvalue count in the window.
SpectralWindowResult window_trace(const SparseSymmetricOperator& H, Interval window,
                                  const SpectralOptions& options = {});
/// tr chi_I(H) diag(w) = sum_{lambda_m in I} sum_x |psi_m(x)|^2 w(x).
SpectralWindowResult window_trace(const SparseSymmetricOperator& H, Interval window, const Eigen::VectorXd& weight,
                                  const SpectralOptions& options = {});

/// Ceiling used for the validity flag of a window on H.
double validity_ceiling(const SparseSymmetricOperator& H, const SpectralOptions& options);

}  // namespace anderson
