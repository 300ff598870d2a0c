#pragma once

#include "ppclust/types.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ppclust {

enum class FeatureKind { Categorical, Numeric };

/// Column description. For categorical columns state_count is the number of
/// codes and `categories` maps code -> original token. For numeric columns
/// state_count is 0 until the column is discretized, after which bin_edges
/// has state_count + 1 strictly increasing boundaries (a constant column
/// collapses to a single bin with equal edges).
struct FeatureSchema {
    std::string name;
    FeatureKind kind = FeatureKind::Numeric;
    int state_count = 0;
    std::vector<double> bin_edges;
    std::vector<std::string> categories;

    bool discrete() const { return kind == FeatureKind::Categorical || state_count >= 1; }
};

bool same_schema(const std::vector<FeatureSchema>& a, const std::vector<FeatureSchema>& b);

/// Record matrix plus schema. Categorical cells hold state codes; numeric
/// cells hold raw values before discretization and bin codes after.
/// Immutable by convention once built; every operation returns a new Dataset.
struct Dataset {
    std::vector<FeatureSchema> schema;
    Matrix rows;
    std::vector<int> labels;         // ground truth classes; empty if absent
    std::vector<std::int64_t> ids;   // stable per-record identifiers

    Index n() const { return rows.rows(); }
    Index dim() const { return rows.cols(); }
    bool has_labels() const { return !labels.empty(); }
};

struct BlobSpec {
    int k_true = 1;
    Index n_per_cluster = 100;
    Index dim = 2;
    Matrix centers;                 // k_true x dim
    std::vector<double> spread;     // per-cluster standard deviation
    std::uint64_t seed = 0;
};

struct SchemaHints {
    std::optional<std::string> label_column;
    std::vector<std::string> numeric_columns;      // force numeric
    std::vector<std::string> categorical_columns;  // force categorical
};

/// Reads an RFC-4180 CSV with a header row. Column kinds are inferred
/// (numeric iff every token parses as a real) unless hinted. Categorical
/// tokens are coded by first appearance; empty cells are an error.
Dataset ingest_csv(const std::string& path, const SchemaHints& hints = {});

Dataset ingest_csv_text(const std::string& text, const SchemaHints& hints = {});

/// Writes values back out: categorical cells as their original tokens,
/// discretized numeric cells as bin midpoints, raw numeric at full precision.
void write_dataset_csv(const std::string& path, const Dataset& d, bool include_labels = true);
std::string dataset_to_csv(const Dataset& d, bool include_labels = true);

/// Zero-mean unit-variance scaling of raw numeric columns (1/n variance);
/// constant columns are centered only. Categorical and discretized columns
/// are left alone.
Dataset standardize(const Dataset& d);

/// Disjoint row partition with largest-remainder sizing (each part within
/// one row of n*share) and a seeded shuffle.
std::vector<Dataset> partition(const Dataset& d, const std::vector<double>& shares,
                               std::uint64_t seed);

/// Isotropic Gaussian blobs; labels are the generating cluster ids.
Dataset make_blobs(const BlobSpec& spec);

/// Same sampler with explicit per-cluster sizes; used by experiment configs
/// where cluster sizes differ.
Dataset make_blob_rows(const Matrix& centers, const std::vector<Index>& sizes,
                       const std::vector<double>& spread, std::uint64_t seed);

/// Row-concatenation of datasets sharing a schema.
Dataset concat(const std::vector<Dataset>& parts);

/// Geometry matrix for clustering and distances: discretized numeric cells
/// map to bin midpoints, everything else passes through.
Matrix decode_midpoints(const Dataset& d);

/// Standardizes the columns of a plain matrix (1/n variance, constant
/// columns centered).
Matrix standardize_matrix(const Matrix& m);

Dataset subset_rows(const Dataset& d, const std::vector<Index>& rows);

} // namespace ppclust
