#include "ppclust/experiment.hpp"

#include "ppclust/csv.hpp"
#include "ppclust/errors.hpp"
#include "ppclust/rng.hpp"
#include "ppclust/util.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

namespace fs = std::filesystem;

namespace ppclust {

namespace {

std::string metric_field(double v) {
    if (std::isnan(v)) return "-";
    return format_double(v);
}

std::string eps_tag(double v) {
    std::string s = format_double(v);
    for (char& ch : s)
        if (ch == '.') ch = 'p';
    return s;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << text;
}

std::string params_field(const AlgorithmCandidate& c) {
    if (c.kind == AlgorithmKind::DBSCAN)
        return "Eps=" + format_double(c.eps) + ";min_pts=" + std::to_string(c.min_pts);
    return "k=" + std::to_string(c.k);
}

} // namespace

Dataset build_dataset(const ExperimentConfig& config, std::uint64_t seed) {
    Dataset d;
    if (config.source == ExperimentConfig::Source::Csv) {
        d = ingest_csv(config.csv_path, config.hints);
    } else {
        d = make_blob_rows(config.blob_centers, config.blob_sizes, config.blob_spread, seed);
    }
    if (config.standardize) d = standardize(d);
    return discretize(d, config.bins);
}

std::string make_run_dir(const ExperimentConfig& config, const std::string& out_root) {
    std::uint64_t h = fnv1a(canonical_text(config));
    char tag[32];
    std::snprintf(tag, sizeof(tag), "%010llx", static_cast<unsigned long long>(h & 0xffffffffffULL));
    fs::path root = out_root.empty() ? fs::path(".") : fs::path(out_root);
    fs::create_directories(root);
    // never overwrite an existing run
    fs::path dir = root / ("run-" + std::string(tag));
    for (int n = 2; fs::exists(dir); ++n)
        dir = root / ("run-" + std::string(tag) + "-" + std::to_string(n));
    fs::create_directories(dir);
    return dir.string();
}

std::string recommendation_json(const Recommendation& rec) {
    nlohmann::json j;
    j["algorithm"] = to_string(rec.best_algorithm.kind);
    if (rec.best_algorithm.kind == AlgorithmKind::DBSCAN) {
        j["params"]["Eps"] = rec.best_algorithm.eps;
        j["params"]["min_pts"] = rec.best_algorithm.min_pts;
    } else {
        j["params"]["k"] = rec.best_algorithm.k;
    }
    j["max_silhouette"] = rec.max_silhouette;
    j["threshold"] = rec.silhouette_threshold;
    j["best_ch_index"] = rec.best_ch_index;
    return j.dump(2) + "\n";
}

namespace {

struct SimJob {
    double epsilon;
    double f;
    std::uint64_t seed;
};

struct SimRow {
    std::string algorithm;
    std::string params;
    bool recommended;
    MetricReport metrics;
};

struct SimResult {
    RunReport report;
    std::vector<SimRow> rows;
};

SimResult run_one(const ExperimentConfig& config, const SimJob& job) {
    Dataset base = build_dataset(config, job.seed);
    std::vector<Dataset> owners = partition(base, config.owner_shares, job.seed);

    ProtocolConfig pconf;
    pconf.selection.k_range = config.k_range;
    pconf.selection.alpha = config.alpha;
    pconf.selection.standardize_sample = config.standardize_sample;
    pconf.selection.algorithms = config.algorithms;

    SimResult out;
    out.report = run_protocol(owners, job.epsilon, job.f, pconf, job.seed);

    // Table rows: every scored candidate applied to the pooled clean data.
    Matrix x = decode_midpoints(base);
    for (const auto& sc : out.report.recommendation.scores) {
        SimRow row;
        row.algorithm = to_string(sc.candidate.kind);
        row.params = params_field(sc.candidate);
        row.recommended = sc.candidate.kind == out.report.recommendation.best_algorithm.kind;
        try {
            ClusterAssignment a =
                run_candidate(x, sc.candidate, mix_key(job.seed, 0x7461626cULL));
            row.metrics = evaluate(x, a, base.labels);
        } catch (const Error&) {
            row.metrics = MetricReport{};
            const double nan = std::numeric_limits<double>::quiet_NaN();
            row.metrics.ari = row.metrics.silhouette = row.metrics.ch = nan;
            row.metrics.homogeneity = row.metrics.completeness = nan;
            row.metrics.accuracy_raw = row.metrics.accuracy_mapped = nan;
        }
        out.rows.push_back(std::move(row));
    }
    return out;
}

} // namespace

std::string run_simulate(const ExperimentConfig& config, const std::string& out_root) {
    std::string dir = make_run_dir(config, out_root);
    write_text(dir + "/config.txt", canonical_text(config));

    std::vector<SimJob> jobs;
    for (double eps : config.epsilon_grid)
        for (double f : config.f_grid)
            for (std::uint64_t seed : config.seeds) jobs.push_back({eps, f, seed});

    std::vector<SimResult> results(jobs.size());
    parallel_for(jobs.size(), config.workers,
                 [&](std::size_t i) { results[i] = run_one(config, jobs[i]); });

    const std::string dataset_name =
        config.source == ExperimentConfig::Source::Csv ? fs::path(config.csv_path).stem().string()
                                                       : "blobs";
    csv::Table agg;
    agg.header = {"dataset",  "algorithm",  "shared", "epsilon",      "seed",
                  "k_or_eps", "ari",        "silhouette", "ch",       "accuracy_raw",
                  "accuracy_mapped", "recommended"};
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        for (const auto& row : results[i].rows) {
            agg.rows.push_back({dataset_name, row.algorithm, format_double(jobs[i].f),
                                format_double(jobs[i].epsilon), std::to_string(jobs[i].seed),
                                row.params, metric_field(row.metrics.ari),
                                metric_field(row.metrics.silhouette), metric_field(row.metrics.ch),
                                metric_field(row.metrics.accuracy_raw),
                                metric_field(row.metrics.accuracy_mapped),
                                row.recommended ? "1" : "0"});
        }
    }
    csv::write_csv(dir + "/aggregate.csv", agg);

    for (std::size_t i = 0; i < jobs.size(); ++i) {
        const auto& job = jobs[i];
        const auto& rep = results[i].report;
        std::string stem = "eps" + eps_tag(job.epsilon) + "_f" + eps_tag(job.f) + "_seed" +
                           std::to_string(job.seed);
        nlohmann::json j;
        j["epsilon"] = rep.epsilon;
        j["shared_fraction"] = rep.share_fraction;
        j["seed"] = rep.seed;
        j["recommendation"] = nlohmann::json::parse(recommendation_json(rep.recommendation));
        j["metrics"] = {{"ari", metric_field(rep.metrics.ari)},
                        {"silhouette", metric_field(rep.metrics.silhouette)},
                        {"ch", metric_field(rep.metrics.ch)},
                        {"homogeneity", metric_field(rep.metrics.homogeneity)},
                        {"completeness", metric_field(rep.metrics.completeness)},
                        {"accuracy_raw", metric_field(rep.metrics.accuracy_raw)},
                        {"accuracy_mapped", metric_field(rep.metrics.accuracy_mapped)}};
        write_text(dir + "/report_" + stem + ".json", j.dump(2) + "\n");

        if (config.write_assignments) {
            csv::Table t;
            t.header = {"id", "cluster"};
            for (Index r = 0; r < rep.final_assignment.labels.size(); ++r)
                t.rows.push_back({std::to_string(r),
                                  std::to_string(rep.final_assignment.labels[r])});
            csv::write_csv(dir + "/assignment_" + stem + ".csv", t);
        }
    }
    return dir;
}

Recommendation run_select(const std::string& noisy_csv_path, const ExperimentConfig& config,
                          const std::string& out_root, std::string* dir_out) {
    NoisyDataset nd = read_noisy_csv(noisy_csv_path);
    SelectionConfig sel;
    sel.k_range = config.k_range;
    sel.alpha = config.alpha;
    sel.standardize_sample = config.standardize_sample;
    sel.algorithms = config.algorithms;
    sel.seed = config.seeds.front();
    Recommendation rec = server_recommend(nd, sel);

    std::string dir = make_run_dir(config, out_root);
    write_text(dir + "/recommendation.json", recommendation_json(rec));
    if (dir_out) *dir_out = dir;
    return rec;
}

AttackSetup make_attack_setup(const ExperimentConfig& config, double epsilon, std::uint64_t seed,
                              bool null_model) {
    Dataset base = build_dataset(config, seed);
    const Index n = base.n();
    const Index need = config.attack_case_size + config.attack_control_size +
                       (null_model ? config.attack_case_size : 0);
    if (n < need)
        throw ConfigError("attack: dataset too small for the requested group sizes");

    std::vector<Index> order(n);
    std::iota(order.begin(), order.end(), Index{0});
    Rng rng(mix_key(seed, 0x6d696178ULL)); // "miax"
    for (Index i = n - 1; i > 0; --i)
        std::swap(order[i], order[rng.uniform_int(static_cast<std::uint64_t>(i) + 1)]);

    auto slice = [&](Index begin, Index count) {
        std::vector<Index> rows(order.begin() + begin, order.begin() + begin + count);
        std::sort(rows.begin(), rows.end());
        return subset_rows(base, rows);
    };

    AttackSetup setup;
    setup.case_group = slice(0, config.attack_case_size);
    setup.control_group = slice(config.attack_case_size, config.attack_control_size);
    Dataset source = null_model
                         ? slice(config.attack_case_size + config.attack_control_size,
                                 config.attack_case_size)
                         : setup.case_group;
    OwnerState st = owner_prepare(source, epsilon, 1.0, mix_key(seed, 0x6d6961ULL));
    setup.shared = std::move(st.shared);
    return setup;
}

std::string run_attack(const ExperimentConfig& config, const std::string& out_root,
                       AttackCurve* curve_out) {
    auto factory = [&](double eps, std::uint64_t seed) {
        return make_attack_setup(config, eps, seed);
    };
    AttackCurve curve =
        attack_power(factory, config.epsilon_grid, config.attack_case_size,
                     config.attack_control_size, config.attack_target_fpr, config.seeds);

    std::string dir = make_run_dir(config, out_root);
    write_text(dir + "/config.txt", canonical_text(config));
    csv::Table t;
    t.header = {"epsilon", "tau", "tpr", "fpr"};
    for (const auto& pt : curve)
        t.rows.push_back({format_double(pt.epsilon), format_double(pt.tau),
                          format_double(pt.tpr), format_double(pt.fpr)});
    csv::write_csv(dir + "/attack_curve.csv", t);

    double lo = curve.front().tpr, hi = curve.front().tpr;
    bool nondecreasing = true;
    for (std::size_t i = 0; i < curve.size(); ++i) {
        lo = std::min(lo, curve[i].tpr);
        hi = std::max(hi, curve[i].tpr);
        if (i > 0 && curve[i].tpr < curve[i - 1].tpr - 1e-12) nondecreasing = false;
    }
    std::ostringstream summary;
    summary << "attack power vs epsilon: "
            << (nondecreasing ? "non-decreasing" : "not monotone") << "\n"
            << "min TPR " << format_double(lo) << ", max TPR " << format_double(hi)
            << " at target FPR " << format_double(config.attack_target_fpr) << " over "
            << config.seeds.size() << " seeds\n";
    write_text(dir + "/summary.txt", summary.str());

    if (curve_out) *curve_out = curve;
    return dir;
}

std::string run_gapviz(const ExperimentConfig& config, const std::string& out_root) {
    Dataset base = build_dataset(config, config.seeds.front());
    if (!base.has_labels()) throw ConfigError("gapviz: fixture has no cluster labels");

    std::vector<Index> keep;
    for (Index i = 0; i < base.n(); ++i)
        if (base.labels[i] == config.gap_clusters[0] || base.labels[i] == config.gap_clusters[1])
            keep.push_back(i);
    if (keep.empty()) throw ConfigError("gapviz: selected clusters are empty");
    Dataset two = subset_rows(base, keep);
    bool both = false;
    for (Index i = 0; i < two.n(); ++i)
        if (two.labels[i] != two.labels[0]) both = true;
    if (!both) throw ConfigError("gapviz: need two distinct clusters in the fixture");

    const int fx = config.gap_features[0];
    const int fy = config.gap_features[1];
    if (fx < 0 || fy < 0 || fx >= two.dim() || fy >= two.dim())
        throw ConfigError("gapviz: feature indices out of range");

    std::string dir = make_run_dir(config, out_root);
    write_text(dir + "/config.txt", canonical_text(config));

    Matrix orig = decode_midpoints(two);
    for (double eps : config.epsilon_grid) {
        NoisyDataset nd = perturb_dataset(two, eps, mix_key(config.seeds.front(), 0x676170ULL));
        Matrix noisy = decode_midpoints(nd.data);
        csv::Table t;
        t.header = {"id", "x_orig", "y_orig", "x_noisy", "y_noisy", "cluster"};
        for (Index i = 0; i < two.n(); ++i)
            t.rows.push_back({std::to_string(two.ids[i]), format_double(orig(i, fx)),
                              format_double(orig(i, fy)), format_double(noisy(i, fx)),
                              format_double(noisy(i, fy)), std::to_string(two.labels[i])});
        csv::write_csv(dir + "/gap_eps" + eps_tag(eps) + ".csv", t);
    }
    return dir;
}

} // namespace ppclust
