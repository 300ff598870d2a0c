#include "ppclust/protocol.hpp"

#include "ppclust/errors.hpp"
#include "ppclust/rng.hpp"

#include <cmath>
#include <numeric>

namespace ppclust {

OwnerState owner_prepare(const Dataset& d, double epsilon, double f, std::uint64_t seed) {
    if (!(f > 0.0) || f > 1.0) throw ParameterError("owner_prepare: f must be in (0, 1]");
    if (!(epsilon > 0.0)) throw ParameterError("owner_prepare: epsilon must be > 0");

    OwnerState st;
    st.clean = d;
    st.share_fraction = f;
    st.noisy = perturb_dataset(d, epsilon, mix_key(seed, 0x6f776e72ULL)); // "ownr"

    const Index n = d.n();
    const Index share = static_cast<Index>(std::llround(f * static_cast<double>(n)));
    if (share < 1)
        throw ProtocolError("owner_prepare: share fraction selects no rows, must share >= 1");

    std::vector<Index> order(n);
    std::iota(order.begin(), order.end(), Index{0});
    Rng rng(mix_key(seed, 0x73686172ULL)); // "shar"
    for (Index i = 0; i < share; ++i) {
        Index j = i + static_cast<Index>(rng.uniform_int(static_cast<std::uint64_t>(n - i)));
        std::swap(order[i], order[j]);
    }
    std::vector<Index> rows(order.begin(), order.begin() + share);
    std::sort(rows.begin(), rows.end());

    st.shared.epsilon = st.noisy.epsilon;
    st.shared.params = st.noisy.params;
    st.shared.data = subset_rows(st.noisy.data, rows);
    return st;
}

NoisyDataset server_combine(const std::vector<NoisyDataset>& shares) {
    if (shares.empty()) throw ProtocolError("server_combine: no shares");
    const auto& first = shares.front();
    for (const auto& s : shares) {
        if (!same_schema(s.data.schema, first.data.schema))
            throw ProtocolError("server_combine: schema mismatch between shares");
        if (s.epsilon != first.epsilon)
            throw ProtocolError("server_combine: shares carry different privacy budgets");
    }
    NoisyDataset combined;
    combined.epsilon = first.epsilon;
    combined.params = first.params;
    std::vector<Dataset> parts;
    parts.reserve(shares.size());
    for (const auto& s : shares) parts.push_back(s.data);
    combined.data = concat(parts);
    return combined;
}

RunReport run_protocol(const std::vector<Dataset>& owners, double epsilon, double f,
                       const ProtocolConfig& config, std::uint64_t seed) {
    if (owners.size() < 2)
        throw ProtocolError("step 1 (owner preparation): need at least 2 owners");
    for (const auto& o : owners)
        if (!same_schema(o.schema, owners.front().schema))
            throw ProtocolError("step 1 (owner preparation): owners disagree on schema");

    // Steps 1-2: independent owner preparation.
    std::vector<NoisyDataset> shares;
    shares.reserve(owners.size());
    std::vector<Dataset> cleans;
    cleans.reserve(owners.size());
    for (std::size_t i = 0; i < owners.size(); ++i) {
        OwnerState st;
        try {
            st = owner_prepare(owners[i], epsilon, f, mix_key(seed, 0x6f77ULL, i));
        } catch (const Error& e) {
            throw ProtocolError("step 1 (owner preparation): owner " + std::to_string(i) + ": " +
                                e.what());
        }
        shares.push_back(std::move(st.shared));
        cleans.push_back(owners[i]);
    }

    // Step 3: server-side combination and recommendation.
    RunReport report;
    report.epsilon = epsilon;
    report.share_fraction = f;
    report.seed = seed;
    try {
        NoisyDataset combined = server_combine(shares);
        SelectionConfig sel = config.selection;
        sel.seed = mix_key(seed, 0x73727672ULL); // "srvr"
        report.recommendation = server_recommend(combined, sel);
    } catch (const Error& e) {
        throw ProtocolError(std::string("step 3 (server recommendation): ") + e.what());
    }

    // Step 4 is the hand-off of the recommendation; steps below act on it.
    // Step 5: collaborative clustering on the pooled clean data.
    try {
        Dataset pooled = concat(cleans);
        Matrix x = decode_midpoints(pooled);
        report.final_assignment =
            run_candidate(x, report.recommendation.best_algorithm, mix_key(seed, 0x66696eULL));
        report.metrics = evaluate(x, report.final_assignment, pooled.labels);
    } catch (const Error& e) {
        throw ProtocolError(std::string("step 5 (collaborative clustering): ") + e.what());
    }
    return report;
}

} // namespace ppclust
