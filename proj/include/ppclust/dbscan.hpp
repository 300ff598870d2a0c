#pragma once

#include "ppclust/types.hpp"

namespace ppclust {

struct DBSCANParams {
    double eps = 0.0;   // neighborhood radius
    int min_pts = 1;    // neighbors (self included) needed for a core point
};

/// Density clustering with brute-force neighborhoods. Scan order is row
/// order, so cluster ids and border-point ties are deterministic. Points
/// reachable from no core point get the noise label -1.
ClusterAssignment dbscan(const Matrix& data, const DBSCANParams& params);

} // namespace ppclust
