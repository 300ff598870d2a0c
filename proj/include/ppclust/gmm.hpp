#pragma once

#include "ppclust/types.hpp"

#include <cstdint>
#include <vector>

namespace ppclust {

struct GMMResult {
    ClusterAssignment assignment;      // hard, by max responsibility
    Vector weights;                    // k, non-negative, sums to 1
    Matrix means;                      // k x d
    std::vector<Matrix> covariances;   // k full d x d matrices, floored by reg*I
    std::vector<double> log_likelihood; // per EM iteration, non-decreasing
    int iterations = 0;
};

/// Full-covariance EM initialized from a k-means run. Stops when the
/// log-likelihood gain drops below tol. A component that loses all its
/// responsibility mass is re-seeded on the point farthest from the current
/// means (with a warning on stderr).
GMMResult gmm(const Matrix& data, int k, std::uint64_t seed, int max_iter = 100,
              double tol = 1e-6, double reg = 1e-6);

} // namespace ppclust
