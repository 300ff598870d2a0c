#include "ppclust/selection.hpp"

#include "ppclust/dbscan.hpp"
#include "ppclust/errors.hpp"
#include "ppclust/gmm.hpp"
#include "ppclust/hierarchical.hpp"
#include "ppclust/kmeans.hpp"
#include "ppclust/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ppclust {

std::string to_string(AlgorithmKind k) {
    switch (k) {
        case AlgorithmKind::KMeans: return "kmeans";
        case AlgorithmKind::Hierarchical: return "hierarchical";
        case AlgorithmKind::GMM: return "gmm";
        case AlgorithmKind::DBSCAN: return "dbscan";
    }
    return "?";
}

AlgorithmKind algorithm_from_string(const std::string& s) {
    if (s == "kmeans") return AlgorithmKind::KMeans;
    if (s == "hierarchical" || s == "hc") return AlgorithmKind::Hierarchical;
    if (s == "gmm") return AlgorithmKind::GMM;
    if (s == "dbscan") return AlgorithmKind::DBSCAN;
    throw ConfigError("unknown algorithm '" + s + "'");
}

std::size_t knee_index(const std::vector<double>& ys) {
    const std::size_t m = ys.size();
    if (m < 3) return 0;
    const double y0 = ys.front();
    const double y1 = ys.back();
    const double slope = (y1 - y0) / static_cast<double>(m - 1);
    std::size_t best = 1;
    double best_dev = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i + 1 < m; ++i) {
        double chord = y0 + slope * static_cast<double>(i);
        double dev = chord - ys[i]; // positive where the curve sags below
        if (dev > best_dev) {
            best_dev = dev;
            best = i;
        }
    }
    return best;
}

int elbow_k(const Matrix& data, std::array<int, 2> k_range, std::uint64_t seed) {
    const auto [k_lo, k_hi] = k_range;
    if (k_lo < 1 || k_hi > data.rows())
        throw ParameterError("elbow_k: k_range must lie within [1, n]");
    if (k_hi - k_lo < 2) throw ParameterError("elbow_k: k_range must span at least 3 values");

    std::vector<double> wcss;
    wcss.reserve(k_hi - k_lo + 1);
    for (int k = k_lo; k <= k_hi; ++k) {
        KMeansResult r = kmeans(data, k, mix_key(seed, 0x656c62ULL, static_cast<std::uint64_t>(k)));
        if (!std::isfinite(r.wcss)) throw Error("elbow_k: non-finite WCSS at k=" + std::to_string(k));
        wcss.push_back(r.wcss);
    }
    return k_lo + static_cast<int>(knee_index(wcss));
}

int silhouette_k(const Matrix& data, std::array<int, 2> k_range, std::uint64_t seed) {
    const auto [k_lo, k_hi] = k_range;
    if (k_lo < 2 || k_hi > data.rows() - 1)
        throw ParameterError("silhouette_k: k_range must lie within [2, n-1]");

    int best_k = k_lo;
    double best = -std::numeric_limits<double>::infinity();
    for (int k = k_lo; k <= k_hi; ++k) {
        KMeansResult r = kmeans(data, k, mix_key(seed, 0x73696cULL, static_cast<std::uint64_t>(k)));
        double s = silhouette(data, r.assignment);
        if (s > best) {
            best = s;
            best_k = k;
        }
    }
    return best_k;
}

double knn_eps(const Matrix& data, int k) {
    const Index n = data.rows();
    if (k < 1 || k >= n) throw ParameterError("knn_eps: need 1 <= k < n");

    std::vector<double> kth(n);
    std::vector<double> d(n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) d[j] = (data.row(i) - data.row(j)).norm();
        std::nth_element(d.begin(), d.begin() + k, d.end()); // d[0] includes self = 0
        kth[i] = d[k];
    }
    std::sort(kth.begin(), kth.end());
    double eps = kth[knee_index(kth)];
    if (!(eps > 0.0)) throw SelectionError("knn_eps: degenerate distances, no usable radius");
    return eps;
}

int min_pts(int dim, Index n) {
    if (dim < 1) throw ParameterError("min_pts: dim must be >= 1");
    int v = std::max(4, 2 * dim);
    if (n >= 2) v = std::min<Index>(v, n - 1);
    return std::max(v, 1);
}

ClusterAssignment run_candidate(const Matrix& data, const AlgorithmCandidate& c,
                                std::uint64_t seed) {
    switch (c.kind) {
        case AlgorithmKind::KMeans: return kmeans(data, c.k, seed).assignment;
        case AlgorithmKind::Hierarchical: return hierarchical(data, c.k).assignment;
        case AlgorithmKind::GMM: return gmm(data, c.k, seed).assignment;
        case AlgorithmKind::DBSCAN: return dbscan(data, {c.eps, c.min_pts});
    }
    throw ParameterError("run_candidate: bad algorithm kind");
}

Recommendation select_from_scores(const std::vector<ScoredCandidate>& scores, double alpha) {
    if (scores.empty()) throw SelectionError("select_best: empty candidate list");
    if (alpha < 0.0) throw ParameterError("select_best: alpha must be >= 0");

    // Pass 1: maximum silhouette over scorable candidates.
    double max_sil = -std::numeric_limits<double>::infinity();
    bool any = false;
    for (const auto& s : scores) {
        if (!s.scorable) continue;
        any = true;
        max_sil = std::max(max_sil, s.silhouette_score);
    }
    if (!any) throw SelectionError("select_best: no scorable candidate");

    // Pass 2: greatest CH within the silhouette band, ties by list order.
    const double threshold = max_sil - alpha;
    Recommendation rec;
    rec.max_silhouette = max_sil;
    rec.silhouette_threshold = threshold;
    rec.scores = scores;
    double best_ch = -std::numeric_limits<double>::infinity();
    for (const auto& s : scores) {
        if (!s.scorable) continue;
        if (s.silhouette_score < threshold || s.silhouette_score > max_sil) continue;
        if (s.ch_index > best_ch) {
            best_ch = s.ch_index;
            rec.best_algorithm = s.candidate;
            rec.best_silhouette = s.silhouette_score;
            rec.best_ch_index = s.ch_index;
        }
    }
    return rec;
}

Recommendation select_best(const Matrix& data, const std::vector<AlgorithmCandidate>& candidates,
                           double alpha, std::uint64_t seed) {
    std::vector<ScoredCandidate> scored;
    scored.reserve(candidates.size());
    double max_noise_fraction = 0.5;
    for (std::size_t idx = 0; idx < candidates.size(); ++idx) {
        ScoredCandidate s;
        s.candidate = candidates[idx];
        try {
            ClusterAssignment a =
                run_candidate(data, candidates[idx], mix_key(seed, 0x63616e64ULL, idx));
            bool too_noisy =
                candidates[idx].kind == AlgorithmKind::DBSCAN &&
                static_cast<double>(a.noise_count()) > max_noise_fraction * data.rows();
            if (a.k_effective >= 2 && !too_noisy) {
                s.silhouette_score = silhouette(data, a);
                s.ch_index = calinski_harabasz(data, a);
                s.scorable = true;
            }
        } catch (const MetricError&) {
            s.scorable = false;
        } catch (const SelectionError&) {
            s.scorable = false;
        }
        scored.push_back(std::move(s));
    }
    return select_from_scores(scored, alpha);
}

Recommendation server_recommend(const NoisyDataset& noisy_sample, const SelectionConfig& config) {
    if (noisy_sample.n() == 0) throw ParameterError("server_recommend: empty sample");

    Matrix x = decode_midpoints(noisy_sample.data);
    if (config.standardize_sample) x = standardize_matrix(x);

    std::array<int, 2> k_range = config.k_range;
    k_range[1] = std::min<Index>(k_range[1], x.rows());

    auto wants = [&](AlgorithmKind kind) {
        return std::find(config.algorithms.begin(), config.algorithms.end(), kind) !=
               config.algorithms.end();
    };

    std::vector<AlgorithmCandidate> candidates;
    if (wants(AlgorithmKind::KMeans) || wants(AlgorithmKind::Hierarchical) ||
        wants(AlgorithmKind::GMM)) {
        const int k = elbow_k(x, k_range, config.seed);
        if (wants(AlgorithmKind::KMeans)) candidates.push_back({AlgorithmKind::KMeans, k, 0.0, 0});
        if (wants(AlgorithmKind::Hierarchical))
            candidates.push_back({AlgorithmKind::Hierarchical, k, 0.0, 0});
        if (wants(AlgorithmKind::GMM)) candidates.push_back({AlgorithmKind::GMM, k, 0.0, 0});
    }
    if (wants(AlgorithmKind::DBSCAN)) {
        const int mp = min_pts(static_cast<int>(x.cols()), x.rows());
        try {
            // The k-NN neighbor index matches min_pts.
            double eps = knn_eps(x, std::min<Index>(mp, x.rows() - 1));
            candidates.push_back({AlgorithmKind::DBSCAN, 0, eps, mp});
        } catch (const SelectionError&) {
            if (candidates.empty()) throw; // dbscan was the only candidate
        }
    }
    return select_best(x, candidates, config.alpha, config.seed);
}

} // namespace ppclust
