#pragma once

#include "ppclust/config.hpp"
#include "ppclust/dataset.hpp"

// Shared synthetic fixtures for unit and acceptance tests.

namespace fixtures {

using ppclust::Dataset;
using ppclust::Index;
using ppclust::Matrix;

// Rows of the order-8 Hadamard matrix (all-ones row excluded), mapped
// {-1,+1} -> {0, scale}. Any two rows differ on exactly four coordinates.
inline Matrix hadamard_corners(double scale = 10.0) {
    const int h[8][8] = {
        {1, 1, 1, 1, 1, 1, 1, 1},       {1, -1, 1, -1, 1, -1, 1, -1},
        {1, 1, -1, -1, 1, 1, -1, -1},   {1, -1, -1, 1, 1, -1, -1, 1},
        {1, 1, 1, 1, -1, -1, -1, -1},   {1, -1, 1, -1, -1, 1, -1, 1},
        {1, 1, -1, -1, -1, -1, 1, 1},   {1, -1, -1, 1, -1, 1, 1, -1},
    };
    Matrix corners(7, 8);
    for (int i = 1; i < 8; ++i)
        for (int j = 0; j < 8; ++j) corners(i - 1, j) = h[i][j] > 0 ? scale : 0.0;
    return corners;
}

// Seven-blob benchmark: five well-separated blobs of 390 rows on Hadamard
// corners plus a close pair of 75-row blobs, n = 2100, d = 8. The small
// pair merges first under k-means, so assignments stay close to truth for
// k between 6 and 9.
inline Matrix fixture7_centers() {
    Matrix corners = hadamard_corners();
    Matrix centers(7, 8);
    centers.topRows(5) = corners.topRows(5);
    centers.row(5) = corners.row(5);
    centers.row(6) = corners.row(5);
    centers(6, 0) += 3.0;
    return centers;
}

inline std::vector<Index> fixture7_sizes() { return {390, 390, 390, 390, 390, 75, 75}; }

inline Dataset fixture7(std::uint64_t seed) {
    return ppclust::make_blob_rows(fixture7_centers(), fixture7_sizes(),
                                   std::vector<double>(7, 0.5), seed);
}

// Two separated blobs in the plane, n = 1000.
inline Dataset fixture2(std::uint64_t seed, double spread = 0.5) {
    Matrix centers(2, 2);
    centers << 0.0, 0.0, 10.0, 10.0;
    return ppclust::make_blob_rows(centers, {500, 500}, {spread, spread}, seed);
}

// Blob config for the membership-inference harness: two groups in d = 8,
// fine 12-bin grid so decoded records are near-unique.
inline ppclust::ExperimentConfig mia_config() {
    ppclust::ExperimentConfig cfg;
    cfg.source = ppclust::ExperimentConfig::Source::Blobs;
    cfg.blob_centers.resize(2, 8);
    cfg.blob_centers.row(0).setZero();
    cfg.blob_centers.row(1) << 10, 10, 10, 10, 0, 0, 0, 0;
    cfg.blob_sizes = {600, 600};
    cfg.blob_spread = {1.0, 1.0};
    cfg.bins = 12;
    cfg.epsilon_grid = {0.1, 1.0, 5.0, 10.0};
    cfg.attack_case_size = 150;
    cfg.attack_control_size = 150;
    cfg.attack_target_fpr = 0.1;
    return cfg;
}

} // namespace fixtures
