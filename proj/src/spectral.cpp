#include "anderson/spectral.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "anderson/errors.hpp"
#include "anderson/rng.hpp"

namespace anderson {

namespace {

// Copy of H with every diagonal entry stored explicitly, compressed.
SparseSymmetricOperator with_full_diagonal(const SparseSymmetricOperator& H) {
    SparseSymmetricOperator I(H.rows(), H.cols());
    I.setIdentity();
    SparseSymmetricOperator out = H + 0.0 * I;
    out.makeCompressed();
    return out;
}

std::vector<Index> diagonal_slots(const SparseSymmetricOperator& A) {
    std::vector<Index> slots(static_cast<std::size_t>(A.rows()), -1);
    for (Index col = 0; col < A.outerSize(); ++col)
        for (Index k = A.outerIndexPtr()[col]; k < A.outerIndexPtr()[col + 1]; ++k)
            if (A.innerIndexPtr()[k] == col) slots[col] = k;
    return slots;
}

Eigenpairs select_window(const Eigen::VectorXd& values, const Eigen::MatrixXd* vectors, Interval window) {
    std::vector<Index> keep;
    for (Index i = 0; i < values.size(); ++i)
        if (window.contains(values[i])) keep.push_back(i);
    Eigenpairs out;
    out.values.resize(static_cast<Index>(keep.size()));
    if (vectors) out.vectors.resize(vectors->rows(), static_cast<Index>(keep.size()));
    for (std::size_t k = 0; k < keep.size(); ++k) {
        out.values[k] = values[keep[k]];
        if (vectors) out.vectors.col(k) = vectors->col(keep[k]);
    }
    return out;
}

Eigen::MatrixXd dense_of(const SparseSymmetricOperator& H) { return Eigen::MatrixXd(H); }

Eigenpairs shift_invert_window(const SparseSymmetricOperator& H, Interval window, const SpectralOptions& options) {
    InertiaCounter counter(H, options);
    const Index k = counter.count_leq(window.hi) - counter.count_leq(window.lo);
    const Index N = H.rows();
    if (k == 0) return {Eigen::VectorXd(0), Eigen::MatrixXd(N, 0)};

    const double range = counter.range();
    SparseSymmetricOperator shifted = with_full_diagonal(H);
    const auto slots = diagonal_slots(shifted);
    Eigen::VectorXd diag(N);
    for (Index i = 0; i < N; ++i) diag[i] = shifted.valuePtr()[slots[i]];

    Eigen::SimplicialLDLT<SparseSymmetricOperator, Eigen::Lower, Eigen::AMDOrdering<int>> solver;
    solver.analyzePattern(shifted);
    double sigma = 0.5 * (window.lo + window.hi);
    bool factored = false;
    for (int attempt = 0; attempt <= options.max_retries && !factored; ++attempt) {
        for (Index i = 0; i < N; ++i) shifted.valuePtr()[slots[i]] = diag[i] - sigma;
        solver.factorize(shifted);
        factored = solver.info() == Eigen::Success &&
                   (solver.vectorD().array().abs() > options.tie_tolerance * range).all();
        if (!factored) sigma += 1e-7 * std::max(window.length(), options.tie_tolerance * range);
    }
    if (!factored) throw NumericalError("shift-invert factorization failed near the window midpoint");

    const Index p = std::min(N, k + std::max<Index>(8, k));
    CounterRng rng(0x243f6a8885a308d3ULL);
    Eigen::MatrixXd X(N, p);
    for (Index c = 0; c < p; ++c)
        for (Index r = 0; r < N; ++r) X(r, c) = rng.uniform(-1.0, 1.0);

    const double tol = options.residual_tolerance * range;
    for (int it = 0; it < options.max_iterations; ++it) {
        const Eigen::MatrixXd Y = solver.solve(X);
        const Eigen::MatrixXd Q = Eigen::HouseholderQR<Eigen::MatrixXd>(Y).householderQ() * Eigen::MatrixXd::Identity(N, p);
        const Eigen::MatrixXd HQ = H * Q;
        const Eigen::MatrixXd T = Q.transpose() * HQ;
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ritz(0.5 * (T + T.transpose()));
        X = Q * ritz.eigenvectors();
        const Eigen::MatrixXd HX = HQ * ritz.eigenvectors();

        const Eigen::VectorXd& theta = ritz.eigenvalues();
        Index inside = 0;
        double worst = 0.0;
        for (Index c = 0; c < p; ++c) {
            if (!window.contains(theta[c])) continue;
            ++inside;
            worst = std::max(worst, (HX.col(c) - theta[c] * X.col(c)).norm());
        }
        if (inside == k && worst <= tol) return select_window(theta, &X, window);
    }
    throw NumericalError("shift-invert iteration did not converge to the " + std::to_string(k) +
                         " eigenpairs certified in the window");
}

}  // namespace

Eigenpairs full_spectrum(const SparseSymmetricOperator& H, bool with_vectors, const SpectralOptions& options) {
    if (H.rows() > options.dense_threshold)
        throw CapacityError("dimension " + std::to_string(H.rows()) + " exceeds the dense threshold " +
                            std::to_string(options.dense_threshold) +
                            "; use count_leq / window routines or raise --dense-threshold");
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(
        dense_of(H), with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (eig.info() != Eigen::Success) throw NumericalError("dense symmetric eigensolve failed");
    Eigenpairs out;
    out.values = eig.eigenvalues();
    if (with_vectors) out.vectors = eig.eigenvectors();
    return out;
}

InertiaCounter::InertiaCounter(const SparseSymmetricOperator& H, const SpectralOptions& options)
    : shifted_(with_full_diagonal(H)), options_(options) {
    diagonal_slots_ = diagonal_slots(shifted_);
    diagonal_.resize(shifted_.rows());
    for (Index i = 0; i < shifted_.rows(); ++i) diagonal_[i] = shifted_.valuePtr()[diagonal_slots_[i]];
    const auto [lo, hi] = gershgorin_bounds(shifted_);
    lower_ = lo;
    range_ = std::max(hi - lo, std::max(std::abs(lo), std::abs(hi)) * 1e-3 + 1e-300);
    ldlt_.analyzePattern(shifted_);
}

Index InertiaCounter::count_leq(double E) {
    const Index N = shifted_.rows();
    if (N == 0) return 0;
    if (E < lower_) return 0;
    const double delta = options_.tie_tolerance * range_;
    for (int attempt = 0; attempt <= options_.max_retries; ++attempt) {
        const double shift = E + attempt * delta;
        for (Index i = 0; i < N; ++i) shifted_.valuePtr()[diagonal_slots_[i]] = diagonal_[i] - shift;
        ldlt_.factorize(shifted_);
        if (ldlt_.info() != Eigen::Success) continue;
        const Eigen::VectorXd D = ldlt_.vectorD();
        if ((D.array().abs() > delta).all()) return (D.array() < 0.0).count();
    }
    throw NumericalError("inertia count at E = " + std::to_string(E) + " failed after " +
                         std::to_string(options_.max_retries) + " perturbed retries");
}

Index count_leq(const SparseSymmetricOperator& H, double E, const SpectralOptions& options) {
    return InertiaCounter(H, options).count_leq(E);
}

Eigenpairs window_eigenpairs(const SparseSymmetricOperator& H, Interval window, const SpectralOptions& options) {
    if (window.hi < window.lo) throw UsageError("window upper end below its lower end");
    if (H.rows() <= options.dense_threshold) {
        const auto all = full_spectrum(H, true, options);
        return select_window(all.values, &all.vectors, window);
    }
    return shift_invert_window(H, window, options);
}

Eigen::VectorXd spectral_density(const Eigenpairs& pairs) {
    if (pairs.vectors.cols() == 0) return Eigen::VectorXd::Zero(pairs.vectors.rows());
    return pairs.vectors.array().square().rowwise().sum();
}

double validity_ceiling(const SparseSymmetricOperator& H, const SpectralOptions& options) {
    if (options.validity_ceiling) return *options.validity_ceiling;
    const auto [lo, hi] = gershgorin_bounds(H);
    return options.validity_fraction * (hi - lo);
}

SpectralWindowResult window_trace(const SparseSymmetricOperator& H, Interval window, const SpectralOptions& options) {
    SpectralWindowResult out;
    out.window = window;
    out.outside_validity = window.hi > validity_ceiling(H, options);
    if (H.rows() <= options.dense_threshold) {
        out.eigenvalues = select_window(full_spectrum(H, false, options).values, nullptr, window).values;
    } else {
        out.eigenvalues = window_eigenpairs(H, window, options).values;
    }
    out.weighted_trace = static_cast<double>(out.eigenvalues.size());
    return out;
}

SpectralWindowResult window_trace(const SparseSymmetricOperator& H, Interval window, const Eigen::VectorXd& weight,
                                  const SpectralOptions& options) {
    if (weight.size() != H.rows()) throw UsageError("weight length differs from the operator dimension");
    SpectralWindowResult out;
    out.window = window;
    out.outside_validity = window.hi > validity_ceiling(H, options);
    const auto pairs = window_eigenpairs(H, window, options);
    out.eigenvalues = pairs.values;
    out.weighted_trace = spectral_density(pairs).dot(weight);
    return out;
}

}  // namespace anderson
