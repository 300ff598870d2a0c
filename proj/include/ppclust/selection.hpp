#pragma once

#include "ppclust/ldp.hpp"
#include "ppclust/types.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ppclust {

enum class AlgorithmKind { KMeans, Hierarchical, GMM, DBSCAN };

std::string to_string(AlgorithmKind k);
AlgorithmKind algorithm_from_string(const std::string& s);

struct AlgorithmCandidate {
    AlgorithmKind kind = AlgorithmKind::KMeans;
    int k = 0;            // kmeans / hierarchical / gmm
    double eps = 0.0;     // dbscan
    int min_pts = 0;      // dbscan
};

struct ScoredCandidate {
    AlgorithmCandidate candidate;
    bool scorable = false;
    double silhouette_score = 0.0;
    double ch_index = 0.0;
};

struct Recommendation {
    AlgorithmCandidate best_algorithm;
    double max_silhouette = 0.0;
    double silhouette_threshold = 0.0;
    double best_silhouette = 0.0;
    double best_ch_index = 0.0;
    std::vector<ScoredCandidate> scores; // every candidate, pass-1 order
};

/// Index of the knee of a curve: the interior point with the largest
/// vertical deviation below the chord through the endpoints (ties toward the
/// smaller index). Curves of fewer than three points return index 0.
std::size_t knee_index(const std::vector<double>& ys);

/// WCSS elbow: k-means per k over the inclusive range, knee of the curve.
int elbow_k(const Matrix& data, std::array<int, 2> k_range, std::uint64_t seed);

/// argmax over k of the mean silhouette of the k-means assignment.
int silhouette_k(const Matrix& data, std::array<int, 2> k_range, std::uint64_t seed);

/// Knee of the ascending k-th nearest neighbor distance curve.
double knn_eps(const Matrix& data, int k);

/// DBSCAN density threshold heuristic: max(4, 2*dim), capped at n-1.
int min_pts(int dim, Index n);

struct SelectionConfig {
    std::array<int, 2> k_range{2, 12};
    double alpha = 0.1;
    bool standardize_sample = false;
    std::uint64_t seed = 0;
    /// DBSCAN is unscorable when it finds < 2 clusters or labels more than
    /// this fraction of rows as noise.
    double max_noise_fraction = 0.5;
    /// Candidate kinds the server considers, always evaluated in the
    /// canonical order kmeans, hierarchical, gmm, dbscan.
    std::vector<AlgorithmKind> algorithms{AlgorithmKind::KMeans, AlgorithmKind::Hierarchical,
                                          AlgorithmKind::GMM, AlgorithmKind::DBSCAN};
};

/// Two-pass rule over precomputed scores: pass 1 finds max_silhouette; pass
/// 2 takes, among candidates with silhouette within alpha of it, the one
/// with the greatest CH (ties by list order).
Recommendation select_from_scores(const std::vector<ScoredCandidate>& scores, double alpha);

/// Runs every candidate on the data, scores it, and applies the two-pass
/// rule. Candidates whose metrics are undefined are excluded from both
/// passes.
Recommendation select_best(const Matrix& data, const std::vector<AlgorithmCandidate>& candidates,
                           double alpha, std::uint64_t seed);

/// Server side of the protocol: builds the candidate list (kmeans /
/// hierarchical / gmm at the elbow k, dbscan at the k-NN eps with the
/// dimensionality min_pts) from the combined noisy sample, then selects.
Recommendation server_recommend(const NoisyDataset& noisy_sample, const SelectionConfig& config);

/// Runs one candidate on a matrix; shared by selection and the final
/// protocol step.
ClusterAssignment run_candidate(const Matrix& data, const AlgorithmCandidate& c,
                                std::uint64_t seed);

} // namespace ppclust
