#pragma once

#include "ppclust/dataset.hpp"
#include "ppclust/rng.hpp"
#include "ppclust/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ppclust {

/// Generalized randomized response constants for one feature:
///   p = e^eps / (e^eps + m - 1)   probability of reporting the true state
///   q = 1 / (e^eps + m - 1)       probability of each specific wrong state
struct RRParams {
    double epsilon = 0.0;
    int state_count = 0;
    double p = 1.0;
    double q = 0.0;
};

RRParams rr_params(double epsilon, int state_count);

/// One response: keeps v with probability p, otherwise reports a uniformly
/// chosen wrong state. Consumes exactly one uniform draw.
int perturb_value(int v, const RRParams& params, Rng& rng);

/// Equal-width binning of raw numeric columns over [min, max]; bin code is
/// stored in place and bin_edges/state_count recorded in the schema. A
/// constant column becomes a single bin. Categorical and already-discretized
/// columns pass through.
Dataset discretize(const Dataset& d, int bins_per_feature);

/// Per-feature randomized response output plus the parameters it was
/// produced with. Labels are never carried here.
struct NoisyDataset {
    Dataset data;
    double epsilon = 0.0;
    std::vector<RRParams> params; // one per feature

    Index n() const { return data.n(); }
    Index dim() const { return data.dim(); }
};

/// Applies randomized response independently to every cell. Streams are
/// keyed by (seed, record id, feature index), so the result does not depend
/// on row order or parallel schedule. Ground-truth labels are dropped.
NoisyDataset perturb_dataset(const Dataset& d, double epsilon, std::uint64_t seed);

/// Aggregator-side unbiased frequency estimator:
///   f_v = (c_v / N - q) / (p - q)
Vector estimate_frequencies(const std::vector<std::int64_t>& observed_counts,
                            const RRParams& params);

/// CSV of the noisy values plus a JSON sidecar (<path>.meta.json) recording
/// epsilon, per-feature state counts, bin edges and category tables.
void write_noisy_csv(const std::string& path, const NoisyDataset& nd);
NoisyDataset read_noisy_csv(const std::string& path);

} // namespace ppclust
