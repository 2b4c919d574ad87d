#pragma once

#include <cstdint>

#include "anderson/functional.hpp"

namespace anderson {

/// One randomized dense instance of the gap-trace inequality.
struct Lemma31Trial {
    Eigen::MatrixXd H0;
    Eigen::MatrixXd W;  // indefinite by construction
    double E0 = 0.0;
    double scale = 0.0;  // ||W||
    double gap_trace = 0.0;  // tr f(H) W h(H0), expected <= 0
    double pair_lhs = 0.0;   // tr f(H) W
    double pair_rhs = 0.0;   // tr f(H) W g(H0), expected >= pair_lhs
    bool pass = false;       // both within tolerance * scale
};

/// Instance `trial` of the stream keyed by `seed`: dimension uniform in
/// [min_dim, max_dim], E0 uniform over the joint spectral range of H0 and H,
/// and random nonnegative f, h, g with the required supports.
Lemma31Trial lemma31_trial(std::uint64_t seed, std::uint64_t trial, int min_dim = 4, int max_dim = 16,
                           double tolerance = 1e-10);

}  // namespace anderson
