#pragma once

#include <Eigen/Dense>

#include <vector>

namespace ppclust {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using RowVector = Eigen::RowVectorXd;
using IntVector = Eigen::VectorXi;
using Index = Eigen::Index;

/// Per-row cluster labels. Non-noise ids are contiguous 0..k_effective-1;
/// kNoise marks DBSCAN outliers.
struct ClusterAssignment {
    static constexpr int kNoise = -1;

    IntVector labels;
    int k_effective = 0;

    Index size() const { return labels.size(); }

    Index noise_count() const {
        Index c = 0;
        for (Index i = 0; i < labels.size(); ++i)
            if (labels[i] == kNoise) ++c;
        return c;
    }
};

/// Builds an assignment from raw labels, remapping non-noise ids to a
/// contiguous 0..k-1 range in order of first appearance.
ClusterAssignment make_assignment(const IntVector& raw_labels);

/// Labels as std::vector for callers that prefer it.
std::vector<int> to_std(const IntVector& v);

} // namespace ppclust
