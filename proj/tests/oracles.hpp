#pragma once

#include "ppclust/selection.hpp"

#include <limits>
#include <vector>

// Independent reference implementations used to cross-check the library.
// These stay deliberately naive; they must never share code with the
// implementations they verify.

namespace oracles {

// Rand-index agreement by explicit pair enumeration, then the standard
// chance correction.
inline double ari_pair_counting(const std::vector<int>& a, const std::vector<int>& b) {
    const std::size_t n = a.size();
    double n11 = 0, n00 = 0, n10 = 0, n01 = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            bool same_a = a[i] == a[j];
            bool same_b = b[i] == b[j];
            if (same_a && same_b)
                ++n11;
            else if (!same_a && !same_b)
                ++n00;
            else if (same_a)
                ++n10;
            else
                ++n01;
        }
    }
    double total = n11 + n00 + n10 + n01;
    double expected = (n11 + n10) * (n11 + n01) / total;
    double max_index = 0.5 * ((n11 + n10) + (n11 + n01));
    if (max_index == expected) return 1.0;
    return (n11 - expected) / (max_index - expected);
}

// The selection rule restated: drop unscorable candidates, keep those whose
// silhouette is within alpha of the maximum, take the largest CH, first
// index on ties.
inline int select_oracle(const std::vector<ppclust::ScoredCandidate>& scores, double alpha) {
    double max_sil = -std::numeric_limits<double>::infinity();
    for (const auto& s : scores)
        if (s.scorable && s.silhouette_score > max_sil) max_sil = s.silhouette_score;
    int best = -1;
    double best_ch = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < scores.size(); ++i) {
        const auto& s = scores[i];
        if (!s.scorable) continue;
        if (s.silhouette_score < max_sil - alpha) continue;
        if (s.ch_index > best_ch) {
            best_ch = s.ch_index;
            best = static_cast<int>(i);
        }
    }
    return best;
}

// Best cluster-to-class mapping by explicit permutation search (works for
// score matrices up to ~8x8).
inline double assignment_brute_force(const ppclust::Matrix& scores) {
    const int r = static_cast<int>(scores.rows());
    const int c = static_cast<int>(scores.cols());
    const int side = std::max(r, c);
    std::vector<int> perm(side);
    for (int i = 0; i < side; ++i) perm[i] = i;
    double best = -std::numeric_limits<double>::infinity();
    do {
        double total = 0;
        for (int i = 0; i < r; ++i)
            if (perm[i] < c) total += scores(i, perm[i]);
        best = std::max(best, total);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

} // namespace oracles
