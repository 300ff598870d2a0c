#pragma once

#include "ppclust/dataset.hpp"
#include "ppclust/ldp.hpp"
#include "ppclust/metrics.hpp"
#include "ppclust/selection.hpp"

#include <cstdint>
#include <vector>

namespace ppclust {

/// One data owner's view: clean data, its randomized-response output, and
/// the sampled portion that actually leaves the owner.
struct OwnerState {
    int id = 0;
    Dataset clean;
    NoisyDataset noisy;
    double share_fraction = 1.0;
    NoisyDataset shared;
};

struct ProtocolConfig {
    SelectionConfig selection;
};

struct RunReport {
    Recommendation recommendation;
    ClusterAssignment final_assignment;
    MetricReport metrics;
    double epsilon = 0.0;
    double share_fraction = 0.0;
    std::uint64_t seed = 0;
};

/// Step 1 + 2: perturb the whole dataset, then sample round(f*n) rows
/// without replacement as the shared portion. Labels never leave the owner.
OwnerState owner_prepare(const Dataset& d, double epsilon, double f, std::uint64_t seed);

/// Step 3a: row-concatenation of the shares. Schemas and privacy budgets
/// must agree across owners.
NoisyDataset server_combine(const std::vector<NoisyDataset>& shares);

/// Steps 1-5 end to end: prepare every owner, combine the shares, let the
/// server recommend, then run the recommended algorithm on the pooled clean
/// data and evaluate against ground truth where available.
RunReport run_protocol(const std::vector<Dataset>& owners, double epsilon, double f,
                       const ProtocolConfig& config, std::uint64_t seed);

} // namespace ppclust
