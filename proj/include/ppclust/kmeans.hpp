#pragma once

#include "ppclust/types.hpp"

#include <cstdint>
#include <vector>

namespace ppclust {

struct KMeansResult {
    ClusterAssignment assignment;
    Matrix centroids;                 // k x d, means of their rows at convergence
    double wcss = 0.0;
    int iterations = 0;
    std::vector<double> wcss_trace;   // after each assignment step; non-increasing
};

/// Lloyd iterations from a seeded greedy farthest-point initialization.
/// Deterministic for a fixed seed; ties break toward the lower index.
KMeansResult kmeans(const Matrix& data, int k, std::uint64_t seed, int max_iter = 100,
                    double tol = 1e-6);

} // namespace ppclust
