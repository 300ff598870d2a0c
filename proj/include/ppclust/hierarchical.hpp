#pragma once

#include "ppclust/types.hpp"

#include <vector>

namespace ppclust {

enum class Linkage { Single, Complete, Average, Ward };

Linkage linkage_from_string(const std::string& s);
std::string to_string(Linkage l);

struct HierarchicalResult {
    ClusterAssignment assignment;
    /// Inter-cluster distance at each merge, in the linkage's own scale
    /// (squared for ward). Non-decreasing for all supported linkages.
    std::vector<double> merge_distances;
};

/// Agglomerative clustering from singletons down to k clusters via
/// Lance-Williams updates with a nearest-neighbor cache.
HierarchicalResult hierarchical(const Matrix& data, int k, Linkage linkage = Linkage::Ward);

} // namespace ppclust
