#pragma once

#include "ppclust/types.hpp"

#include <utility>
#include <vector>

namespace ppclust {

/// Hubert-Arabie adjusted Rand index from the contingency table.
double ari(const std::vector<int>& truth, const std::vector<int>& pred);

/// Mean over rows of (b - a) / max(a, b). Noise rows (-1) are excluded from
/// scoring; rows in singleton clusters score 0. Throws MetricError when
/// fewer than two clusters remain after exclusions.
double silhouette(const Matrix& data, const ClusterAssignment& assignment);

/// [trace(B)/(k-1)] / [trace(W)/(n-k)] with noise rows excluded. Throws
/// MetricError when k < 2 or the within-scatter vanishes.
double calinski_harabasz(const Matrix& data, const ClusterAssignment& assignment);

/// Entropy-based homogeneity and completeness; a zero conditioning entropy
/// denominator yields 1 by convention.
std::pair<double, double> homogeneity_completeness(const std::vector<int>& truth,
                                                   const std::vector<int>& pred);

/// mapped = false: direct integer label comparison.
/// mapped = true: scores after the cluster-to-class assignment that
/// maximizes total matches (optimal assignment over the contingency table).
double accuracy(const std::vector<int>& truth, const std::vector<int>& pred, bool mapped);

struct MetricReport {
    double ari = 0.0;
    double silhouette = 0.0;
    double ch = 0.0;
    double homogeneity = 0.0;
    double completeness = 0.0;
    double accuracy_raw = 0.0;
    double accuracy_mapped = 0.0;
};

/// All metrics in one pass; truth-based entries are NaN when truth is empty,
/// geometry-based entries are NaN when undefined on this assignment.
MetricReport evaluate(const Matrix& data, const ClusterAssignment& assignment,
                      const std::vector<int>& truth);

namespace detail {
/// Max-total-weight assignment over a rectangular score matrix; returns the
/// achieved total. Exposed for tests.
double max_assignment(const Matrix& scores);
} // namespace detail

} // namespace ppclust
