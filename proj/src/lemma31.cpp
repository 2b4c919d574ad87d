#include "anderson/lemma31.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <cmath>

#include "anderson/rng.hpp"

namespace anderson {

Lemma31Trial lemma31_trial(std::uint64_t seed, std::uint64_t trial, int min_dim, int max_dim, double tolerance) {
    if (min_dim < 1 || max_dim < min_dim) throw UsageError("lemma31 trial needs 1 <= min_dim <= max_dim");
    CounterRng rng(mix_key(splitmix64(seed), trial));
    const int n = min_dim + std::min(max_dim - min_dim, static_cast<int>(rng.uniform() * (max_dim - min_dim + 1)));

    Lemma31Trial t;
    Eigen::MatrixXd A(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) A(i, j) = A(j, i) = rng.uniform(-1.0, 1.0);
    t.H0 = A;

    // W = Q diag(w) Q^T with at least one eigenvalue of each sign
    Eigen::MatrixXd G(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) G(i, j) = rng.uniform(-1.0, 1.0);
    const Eigen::MatrixXd Q = Eigen::HouseholderQR<Eigen::MatrixXd>(G).householderQ();
    Eigen::VectorXd w(n);
    for (int i = 0; i < n; ++i) w[i] = rng.uniform(-1.0, 1.0);
    w[0] = -0.1 - std::abs(w[0]);
    w[1] = 0.1 + std::abs(w[1]);
    t.W = Q * w.asDiagonal() * Q.transpose();
    t.W = 0.5 * (t.W + t.W.transpose()).eval();
    t.scale = w.cwiseAbs().maxCoeff();

    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> e0(t.H0, Eigen::EigenvaluesOnly);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eh(t.H0 + t.W, Eigen::EigenvaluesOnly);
    const double lo = std::min(e0.eigenvalues().minCoeff(), eh.eigenvalues().minCoeff());
    const double hi = std::max(e0.eigenvalues().maxCoeff(), eh.eigenvalues().maxCoeff());
    t.E0 = rng.uniform(lo, hi);
    const double width = hi - lo;

    const double a = rng.uniform(), b = rng.uniform(), c = rng.uniform(), e = rng.uniform(), k = rng.uniform();
    const double E0 = t.E0;
    const auto f = [&](double x) { return x <= E0 ? a + b * (E0 - x) / width : 0.0; };
    const auto h = [&](double x) { return x >= E0 ? c + e * std::pow(std::sin(3.0 * x), 2) : 0.0; };
    const auto g = [&](double x) { return x <= E0 ? 1.0 : k * std::exp(-(x - E0)); };

    t.gap_trace = lemma31_gap_trace(t.H0, t.W, E0, f, h);
    std::tie(t.pair_lhs, t.pair_rhs) = lemma31_pair(t.H0, t.W, E0, f, g);
    const double tol = tolerance * t.scale;
    t.pass = t.gap_trace <= tol && t.pair_lhs <= t.pair_rhs + tol;
    return t;
}

}  // namespace anderson
