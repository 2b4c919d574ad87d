#pragma once

// Dense functional calculus for symmetric matrices and the gap-trace
// inequality tr f(H0 + W) W h(H0) <= 0.

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <utility>

#include "anderson/errors.hpp"

namespace anderson {

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// f(H) = V f(Lambda) V^T for symmetric H.
template <typename Derived, typename Fn>
DenseMatrix<typename Derived::Scalar> matrix_function(const Eigen::MatrixBase<Derived>& H, Fn&& f) {
    using Scalar = typename Derived::Scalar;
    const Eigen::SelfAdjointEigenSolver<DenseMatrix<Scalar>> eig(H.eval());
    if (eig.info() != Eigen::Success) throw NumericalError("symmetric eigensolve failed");
    const auto& lambda = eig.eigenvalues();
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> fl(lambda.size());
    for (Eigen::Index i = 0; i < lambda.size(); ++i) fl[i] = static_cast<Scalar>(f(lambda[i]));
    return eig.eigenvectors() * fl.asDiagonal() * eig.eigenvectors().transpose();
}

namespace detail {

// f and h are only ever evaluated on the two spectra, so the support
// conditions are checked there.
template <typename Vec, typename Fn>
void require_vanishing(const Vec& spectrum, Fn&& fn, bool above, typename Vec::Scalar E0, const char* what) {
    for (Eigen::Index i = 0; i < spectrum.size(); ++i) {
        const auto v = fn(spectrum[i]);
        if (!(v >= 0) || !std::isfinite(static_cast<double>(v)))
            throw UsageError(std::string(what) + " must be finite and nonnegative");
        const bool outside = above ? spectrum[i] > E0 : spectrum[i] < E0;
        if (outside && v != 0) throw UsageError(std::string(what) + " violates its support condition");
    }
}

}  // namespace detail

/// tr f(H) W h(H0) with H = H0 + W, for f supported in (-inf, E0] and h in [E0, inf).
template <typename D0, typename DW, typename F, typename Hf>
typename D0::Scalar lemma31_gap_trace(const Eigen::MatrixBase<D0>& H0, const Eigen::MatrixBase<DW>& W,
                                      typename D0::Scalar E0, F&& f, Hf&& h) {
    using Scalar = typename D0::Scalar;
    const DenseMatrix<Scalar> H = H0 + W;
    const Eigen::SelfAdjointEigenSolver<DenseMatrix<Scalar>> eig_h(H);
    const Eigen::SelfAdjointEigenSolver<DenseMatrix<Scalar>> eig_0(H0.eval());
    detail::require_vanishing(eig_h.eigenvalues(), f, true, E0, "f");
    detail::require_vanishing(eig_0.eigenvalues(), h, false, E0, "h");
    const DenseMatrix<Scalar> fH = matrix_function(H, f);
    const DenseMatrix<Scalar> hH0 = matrix_function(H0, h);
    return (fH * W * hH0).trace();
}

/// (tr f(H) W, tr f(H) W g(H0)) for chi_(-inf, E0] <= g <= 1.
template <typename D0, typename DW, typename F, typename G>
std::pair<typename D0::Scalar, typename D0::Scalar> lemma31_pair(const Eigen::MatrixBase<D0>& H0,
                                                                const Eigen::MatrixBase<DW>& W,
                                                                typename D0::Scalar E0, F&& f, G&& g) {
    using Scalar = typename D0::Scalar;
    const DenseMatrix<Scalar> H = H0 + W;
    const Eigen::SelfAdjointEigenSolver<DenseMatrix<Scalar>> eig_h(H);
    const Eigen::SelfAdjointEigenSolver<DenseMatrix<Scalar>> eig_0(H0.eval());
    detail::require_vanishing(eig_h.eigenvalues(), f, true, E0, "f");
    const auto& l0 = eig_0.eigenvalues();
    for (Eigen::Index i = 0; i < l0.size(); ++i) {
        const auto v = g(l0[i]);
        if (v > 1 || v < 0 || (l0[i] <= E0 && v != 1)) throw UsageError("g must satisfy chi_(-inf,E0] <= g <= 1");
    }
    const DenseMatrix<Scalar> fHW = matrix_function(H, f) * W;
    return {fHW.trace(), (fHW * matrix_function(H0, g)).trace()};
}

}  // namespace anderson
