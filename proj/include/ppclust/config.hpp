#pragma once

#include "ppclust/dataset.hpp"
#include "ppclust/selection.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace ppclust {

/// Experiment description parsed from a flat key = value file. Everything is
/// validated up front so long sweeps fail before any work starts.
struct ExperimentConfig {
    enum class Source { Csv, Blobs };
    Source source = Source::Blobs;

    // csv source
    std::string csv_path;
    SchemaHints hints;

    // blob source
    Matrix blob_centers;              // one row per cluster
    std::vector<Index> blob_sizes;    // per cluster
    std::vector<double> blob_spread;  // per cluster

    // preprocessing
    int bins = 10;
    bool standardize = false;

    // owners
    int owners = 2;
    std::vector<double> owner_shares; // empty = equal split

    // sweep grids
    std::vector<double> epsilon_grid;
    std::vector<double> f_grid{0.1};
    std::vector<std::uint64_t> seeds{0};

    // server-side selection
    double alpha = 0.1;
    std::array<int, 2> k_range{2, 12};
    std::vector<AlgorithmKind> algorithms{AlgorithmKind::KMeans, AlgorithmKind::Hierarchical,
                                          AlgorithmKind::GMM, AlgorithmKind::DBSCAN};
    bool standardize_sample = false;

    // output
    std::string out_dir;
    int workers = 1;
    bool write_assignments = false;

    // membership inference
    Index attack_case_size = 150;
    Index attack_control_size = 150;
    double attack_target_fpr = 0.1;

    // gap visualization
    std::array<int, 2> gap_features{0, 1};
    std::array<int, 2> gap_clusters{0, 1};
};

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config(const std::string& path);

/// Canonical rendering used for the content-addressed run directory name.
std::string canonical_text(const ExperimentConfig& c);

} // namespace ppclust
