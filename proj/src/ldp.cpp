#include "ppclust/ldp.hpp"

#include "ppclust/csv.hpp"
#include "ppclust/errors.hpp"
#include "ppclust/util.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>

namespace ppclust {

RRParams rr_params(double epsilon, int state_count) {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon))
        throw ParameterError("rr_params: epsilon must be positive and finite");
    if (state_count < 1) throw ParameterError("rr_params: state count must be >= 1");
    RRParams r;
    r.epsilon = epsilon;
    r.state_count = state_count;
    if (state_count == 1) {
        r.p = 1.0;
        r.q = 0.0;
        return r;
    }
    double e = std::exp(epsilon);
    r.p = e / (e + state_count - 1);
    r.q = 1.0 / (e + state_count - 1);
    return r;
}

int perturb_value(int v, const RRParams& params, Rng& rng) {
    const int m = params.state_count;
    if (v < 0 || v >= m) throw DomainError("perturb_value: state out of domain");
    double u = rng.uniform();
    if (m == 1 || u < params.p) return v;
    int j = static_cast<int>((u - params.p) / params.q);
    if (j > m - 2) j = m - 2;
    return j >= v ? j + 1 : j;
}

Dataset discretize(const Dataset& d, int bins_per_feature) {
    if (bins_per_feature < 2) throw ParameterError("discretize: need at least 2 bins");
    Dataset out = d;
    for (Index j = 0; j < d.dim(); ++j) {
        auto& fs = out.schema[j];
        if (fs.kind != FeatureKind::Numeric || fs.state_count >= 1) continue;
        double lo = d.rows.col(j).minCoeff();
        double hi = d.rows.col(j).maxCoeff();
        if (!(hi > lo)) {
            fs.state_count = 1;
            fs.bin_edges = {lo, lo};
            out.rows.col(j).setZero();
            continue;
        }
        fs.state_count = bins_per_feature;
        fs.bin_edges.resize(bins_per_feature + 1);
        double width = (hi - lo) / bins_per_feature;
        for (int b = 0; b <= bins_per_feature; ++b) fs.bin_edges[b] = lo + width * b;
        fs.bin_edges.back() = hi;
        for (Index i = 0; i < d.n(); ++i) {
            int code = static_cast<int>(std::floor((d.rows(i, j) - lo) / width));
            code = std::clamp(code, 0, bins_per_feature - 1);
            out.rows(i, j) = code;
        }
    }
    return out;
}

NoisyDataset perturb_dataset(const Dataset& d, double epsilon, std::uint64_t seed) {
    NoisyDataset nd;
    nd.epsilon = epsilon;
    nd.params.reserve(d.dim());
    for (Index j = 0; j < d.dim(); ++j) {
        const auto& fs = d.schema[j];
        if (!fs.discrete())
            throw StateError("perturb_dataset: numeric feature '" + fs.name +
                             "' has no bin edges; run discretize first");
        nd.params.push_back(rr_params(epsilon, fs.state_count));
    }
    nd.data = d;
    nd.data.labels.clear(); // never perturbed, never shared
    for (Index i = 0; i < d.n(); ++i) {
        std::uint64_t id = static_cast<std::uint64_t>(d.ids[i]);
        for (Index j = 0; j < d.dim(); ++j) {
            Rng cell(mix_key(seed, id, static_cast<std::uint64_t>(j)));
            int v = static_cast<int>(d.rows(i, j));
            nd.data.rows(i, j) = perturb_value(v, nd.params[j], cell);
        }
    }
    return nd;
}

Vector estimate_frequencies(const std::vector<std::int64_t>& observed_counts,
                            const RRParams& params) {
    const int m = params.state_count;
    if (m < 2) throw ParameterError("estimate_frequencies: need m >= 2");
    if (static_cast<int>(observed_counts.size()) != m)
        throw ParameterError("estimate_frequencies: count vector size mismatch");
    std::int64_t total = 0;
    for (auto c : observed_counts) total += c;
    if (total < 1) throw ParameterError("estimate_frequencies: empty counts");
    if (!(params.p > params.q))
        throw EstimationError("estimate_frequencies: p == q, mechanism carries no information");
    Vector f(m);
    const double n = static_cast<double>(total);
    for (int v = 0; v < m; ++v)
        f[v] = (static_cast<double>(observed_counts[v]) / n - params.q) / (params.p - params.q);
    return f;
}

void write_noisy_csv(const std::string& path, const NoisyDataset& nd) {
    write_dataset_csv(path, nd.data, /*include_labels=*/false);

    nlohmann::json meta;
    meta["epsilon"] = nd.epsilon;
    meta["features"] = nlohmann::json::array();
    for (Index j = 0; j < nd.dim(); ++j) {
        const auto& fs = nd.data.schema[j];
        nlohmann::json f;
        f["name"] = fs.name;
        f["kind"] = fs.kind == FeatureKind::Categorical ? "categorical" : "numeric";
        f["m"] = fs.state_count;
        f["bin_edges"] = fs.bin_edges;
        f["categories"] = fs.categories;
        meta["features"].push_back(std::move(f));
    }
    std::ofstream out(path + ".meta.json");
    if (!out) throw Error("write_noisy_csv: cannot write sidecar for " + path);
    out << meta.dump(2) << "\n";
}

NoisyDataset read_noisy_csv(const std::string& path) {
    std::ifstream in(path + ".meta.json");
    if (!in) throw ParseError("read_noisy_csv: missing sidecar " + path + ".meta.json");
    nlohmann::json meta;
    try {
        in >> meta;
    } catch (const std::exception& e) {
        throw ParseError(std::string("read_noisy_csv: bad sidecar: ") + e.what());
    }

    SchemaHints hints;
    for (const auto& f : meta.at("features")) {
        if (f.at("kind").get<std::string>() == "categorical")
            hints.categorical_columns.push_back(f.at("name").get<std::string>());
        else
            hints.numeric_columns.push_back(f.at("name").get<std::string>());
    }

    Dataset d = ingest_csv(path, hints);
    if (d.dim() != static_cast<Index>(meta.at("features").size()))
        throw ParseError("read_noisy_csv: sidecar feature count disagrees with CSV");

    NoisyDataset nd;
    nd.epsilon = meta.at("epsilon").get<double>();
    for (Index j = 0; j < d.dim(); ++j) {
        const auto& f = meta.at("features")[j];
        auto& fs = d.schema[j];
        fs.state_count = f.at("m").get<int>();
        fs.bin_edges = f.at("bin_edges").get<std::vector<double>>();
        std::vector<std::string> cats = f.at("categories").get<std::vector<std::string>>();
        if (fs.kind == FeatureKind::Categorical) {
            // Re-code against the recorded category table; first-appearance
            // order in the CSV may differ from the original coding.
            std::vector<int> remap(fs.categories.size());
            for (std::size_t c = 0; c < fs.categories.size(); ++c) {
                auto it = std::find(cats.begin(), cats.end(), fs.categories[c]);
                if (it == cats.end())
                    throw ParseError("read_noisy_csv: unknown category '" + fs.categories[c] +
                                     "' in column '" + fs.name + "'");
                remap[c] = static_cast<int>(it - cats.begin());
            }
            for (Index i = 0; i < d.n(); ++i)
                d.rows(i, j) = remap[static_cast<int>(d.rows(i, j))];
            fs.categories = cats;
            fs.state_count = static_cast<int>(cats.size());
        } else if (fs.state_count >= 1) {
            // CSV holds midpoints; map each back to its bin code.
            for (Index i = 0; i < d.n(); ++i) {
                double v = d.rows(i, j);
                int code = 0;
                if (fs.state_count > 1) {
                    auto it = std::upper_bound(fs.bin_edges.begin(), fs.bin_edges.end() - 1, v);
                    code = std::clamp(static_cast<int>(it - fs.bin_edges.begin()) - 1, 0,
                                      fs.state_count - 1);
                }
                d.rows(i, j) = code;
            }
        }
        nd.params.push_back(rr_params(nd.epsilon, fs.state_count));
    }
    nd.data = std::move(d);
    return nd;
}

} // namespace ppclust
