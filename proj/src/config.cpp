#include "ppclust/config.hpp"

#include "ppclust/errors.hpp"
#include "ppclust/util.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace ppclust {

namespace {

double to_real(const std::string& key, const std::string& v) {
    char* end = nullptr;
    double x = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0')
        throw ConfigError("config: " + key + ": expected a number, got '" + v + "'");
    return x;
}

long to_int(const std::string& key, const std::string& v) {
    char* end = nullptr;
    long x = std::strtol(v.c_str(), &end, 10);
    if (end == v.c_str() || *end != '\0')
        throw ConfigError("config: " + key + ": expected an integer, got '" + v + "'");
    return x;
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("config: " + key + ": expected a boolean, got '" + v + "'");
}

std::vector<double> to_reals(const std::string& key, const std::string& v) {
    std::vector<double> out;
    for (const auto& tok : split(v, ',')) {
        std::string t = trim(tok);
        if (!t.empty()) out.push_back(to_real(key, t));
    }
    return out;
}

// "0..19" expands to a contiguous range; otherwise a comma list.
std::vector<std::uint64_t> to_seeds(const std::string& key, const std::string& v) {
    std::vector<std::uint64_t> out;
    auto dots = v.find("..");
    if (dots != std::string::npos) {
        long lo = to_int(key, trim(v.substr(0, dots)));
        long hi = to_int(key, trim(v.substr(dots + 2)));
        if (lo > hi) throw ConfigError("config: " + key + ": empty seed range");
        for (long s = lo; s <= hi; ++s) out.push_back(static_cast<std::uint64_t>(s));
        return out;
    }
    for (const auto& tok : split(v, ',')) {
        std::string t = trim(tok);
        if (!t.empty()) out.push_back(static_cast<std::uint64_t>(to_int(key, t)));
    }
    return out;
}

} // namespace

ExperimentConfig parse_config_text(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        auto eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(s.substr(0, eq));
        std::string val = trim(s.substr(eq + 1));
        if (key.empty()) throw ConfigError("config: line " + std::to_string(lineno) + ": empty key");
        kv[key] = val;
    }

    ExperimentConfig c;
    auto take = [&](const std::string& key) -> std::string {
        auto it = kv.find(key);
        if (it == kv.end()) return {};
        std::string v = it->second;
        kv.erase(it);
        return v;
    };
    auto has = [&](const std::string& key) { return kv.count(key) > 0; };

    if (std::string v = take("dataset"); !v.empty()) {
        if (v == "csv")
            c.source = ExperimentConfig::Source::Csv;
        else if (v == "blobs")
            c.source = ExperimentConfig::Source::Blobs;
        else
            throw ConfigError("config: dataset: expected csv or blobs, got '" + v + "'");
    }

    if (std::string v = take("csv.path"); !v.empty()) c.csv_path = v;
    if (std::string v = take("csv.label"); !v.empty()) c.hints.label_column = v;
    if (std::string v = take("csv.numeric"); !v.empty())
        for (const auto& t : split(v, ',')) c.hints.numeric_columns.push_back(trim(t));
    if (std::string v = take("csv.categorical"); !v.empty())
        for (const auto& t : split(v, ',')) c.hints.categorical_columns.push_back(trim(t));

    if (std::string v = take("blobs.centers"); !v.empty()) {
        std::vector<std::vector<double>> rows;
        for (const auto& row : split(v, ';')) {
            auto vals = to_reals("blobs.centers", row);
            if (!vals.empty()) rows.push_back(std::move(vals));
        }
        if (rows.empty()) throw ConfigError("config: blobs.centers: no rows");
        c.blob_centers.resize(static_cast<Index>(rows.size()), static_cast<Index>(rows[0].size()));
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != rows[0].size())
                throw ConfigError("config: blobs.centers: ragged rows");
            for (std::size_t j = 0; j < rows[i].size(); ++j)
                c.blob_centers(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
        }
    }
    if (std::string v = take("blobs.sizes"); !v.empty()) {
        for (const auto& t : split(v, ','))
            c.blob_sizes.push_back(static_cast<Index>(to_int("blobs.sizes", trim(t))));
    }
    if (std::string v = take("blobs.spread"); !v.empty()) c.blob_spread = to_reals("blobs.spread", v);

    if (std::string v = take("bins"); !v.empty()) c.bins = static_cast<int>(to_int("bins", v));
    if (std::string v = take("standardize"); !v.empty()) c.standardize = to_bool("standardize", v);

    if (std::string v = take("owners"); !v.empty()) c.owners = static_cast<int>(to_int("owners", v));
    if (std::string v = take("owner_shares"); !v.empty()) c.owner_shares = to_reals("owner_shares", v);

    if (std::string v = take("epsilon_grid"); !v.empty()) c.epsilon_grid = to_reals("epsilon_grid", v);
    if (std::string v = take("f_grid"); !v.empty()) c.f_grid = to_reals("f_grid", v);
    if (std::string v = take("seeds"); !v.empty()) c.seeds = to_seeds("seeds", v);

    if (std::string v = take("alpha"); !v.empty()) c.alpha = to_real("alpha", v);
    if (std::string v = take("k_range"); !v.empty()) {
        auto vals = to_reals("k_range", v);
        if (vals.size() != 2) throw ConfigError("config: k_range: expected two values");
        c.k_range = {static_cast<int>(vals[0]), static_cast<int>(vals[1])};
    }
    if (std::string v = take("algorithms"); !v.empty()) {
        c.algorithms.clear();
        for (const auto& t : split(v, ',')) c.algorithms.push_back(algorithm_from_string(trim(t)));
    }
    if (std::string v = take("standardize_sample"); !v.empty())
        c.standardize_sample = to_bool("standardize_sample", v);

    if (std::string v = take("out"); !v.empty()) c.out_dir = v;
    if (std::string v = take("workers"); !v.empty())
        c.workers = static_cast<int>(to_int("workers", v));
    if (std::string v = take("write_assignments"); !v.empty())
        c.write_assignments = to_bool("write_assignments", v);

    if (std::string v = take("attack.case_size"); !v.empty())
        c.attack_case_size = static_cast<Index>(to_int("attack.case_size", v));
    if (std::string v = take("attack.control_size"); !v.empty())
        c.attack_control_size = static_cast<Index>(to_int("attack.control_size", v));
    if (std::string v = take("attack.target_fpr"); !v.empty())
        c.attack_target_fpr = to_real("attack.target_fpr", v);

    if (std::string v = take("gapviz.features"); !v.empty()) {
        auto vals = to_reals("gapviz.features", v);
        if (vals.size() != 2) throw ConfigError("config: gapviz.features: expected two indices");
        c.gap_features = {static_cast<int>(vals[0]), static_cast<int>(vals[1])};
    }
    if (std::string v = take("gapviz.clusters"); !v.empty()) {
        auto vals = to_reals("gapviz.clusters", v);
        if (vals.size() != 2) throw ConfigError("config: gapviz.clusters: expected two ids");
        c.gap_clusters = {static_cast<int>(vals[0]), static_cast<int>(vals[1])};
    }

    if (!kv.empty()) throw ConfigError("config: unknown key '" + kv.begin()->first + "'");
    (void)has;

    // validation
    if (c.source == ExperimentConfig::Source::Csv) {
        if (c.csv_path.empty()) throw ConfigError("config: csv.path: required for dataset = csv");
    } else {
        if (c.blob_centers.rows() == 0) throw ConfigError("config: blobs.centers: required");
        std::size_t k = static_cast<std::size_t>(c.blob_centers.rows());
        if (c.blob_sizes.empty()) throw ConfigError("config: blobs.sizes: required");
        if (c.blob_sizes.size() == 1) c.blob_sizes.assign(k, c.blob_sizes[0]);
        if (c.blob_sizes.size() != k)
            throw ConfigError("config: blobs.sizes: need one size or one per cluster");
        if (c.blob_spread.empty()) c.blob_spread.assign(k, 1.0);
        if (c.blob_spread.size() == 1) c.blob_spread.assign(k, c.blob_spread[0]);
        if (c.blob_spread.size() != k)
            throw ConfigError("config: blobs.spread: need one value or one per cluster");
        for (double s : c.blob_spread)
            if (!(s > 0.0)) throw ConfigError("config: blobs.spread: must be > 0");
    }
    if (c.bins < 2) throw ConfigError("config: bins: must be >= 2");
    if (c.owners < 1) throw ConfigError("config: owners: must be >= 1");
    if (c.owner_shares.empty())
        c.owner_shares.assign(c.owners, 1.0 / static_cast<double>(c.owners));
    if (static_cast<int>(c.owner_shares.size()) != c.owners)
        throw ConfigError("config: owner_shares: need one share per owner");
    if (c.epsilon_grid.empty()) throw ConfigError("config: epsilon_grid: must be non-empty");
    for (double e : c.epsilon_grid)
        if (!(e > 0.0)) throw ConfigError("config: epsilon_grid: budgets must be > 0");
    if (c.f_grid.empty()) throw ConfigError("config: f_grid: must be non-empty");
    for (double f : c.f_grid)
        if (!(f > 0.0) || f > 1.0) throw ConfigError("config: f_grid: fractions must lie in (0, 1]");
    if (c.seeds.empty()) throw ConfigError("config: seeds: must be non-empty");
    if (c.alpha < 0.0) throw ConfigError("config: alpha: must be >= 0");
    if (c.k_range[0] < 1 || c.k_range[1] < c.k_range[0])
        throw ConfigError("config: k_range: expected 1 <= lo <= hi");
    if (c.algorithms.empty()) throw ConfigError("config: algorithms: must be non-empty");
    if (c.workers < 1) throw ConfigError("config: workers: must be >= 1");
    if (!(c.attack_target_fpr > 0.0) || !(c.attack_target_fpr < 1.0))
        throw ConfigError("config: attack.target_fpr: must lie in (0, 1)");
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    ExperimentConfig c = parse_config_text(ss.str());
    if (c.source == ExperimentConfig::Source::Csv && !std::filesystem::exists(c.csv_path))
        throw ConfigError("config: csv.path: no such file: " + c.csv_path);
    return c;
}

std::string canonical_text(const ExperimentConfig& c) {
    std::ostringstream out;
    out << "dataset=" << (c.source == ExperimentConfig::Source::Csv ? "csv" : "blobs") << "\n";
    if (c.source == ExperimentConfig::Source::Csv) {
        out << "csv.path=" << c.csv_path << "\n";
        if (c.hints.label_column) out << "csv.label=" << *c.hints.label_column << "\n";
    } else {
        out << "blobs.centers=";
        for (Index i = 0; i < c.blob_centers.rows(); ++i) {
            if (i) out << ";";
            for (Index j = 0; j < c.blob_centers.cols(); ++j) {
                if (j) out << ",";
                out << format_double(c.blob_centers(i, j));
            }
        }
        out << "\nblobs.sizes=";
        for (std::size_t i = 0; i < c.blob_sizes.size(); ++i)
            out << (i ? "," : "") << c.blob_sizes[i];
        out << "\nblobs.spread=";
        for (std::size_t i = 0; i < c.blob_spread.size(); ++i)
            out << (i ? "," : "") << format_double(c.blob_spread[i]);
        out << "\n";
    }
    out << "bins=" << c.bins << "\nstandardize=" << c.standardize << "\nowners=" << c.owners
        << "\nowner_shares=";
    for (std::size_t i = 0; i < c.owner_shares.size(); ++i)
        out << (i ? "," : "") << format_double(c.owner_shares[i]);
    out << "\nepsilon_grid=";
    for (std::size_t i = 0; i < c.epsilon_grid.size(); ++i)
        out << (i ? "," : "") << format_double(c.epsilon_grid[i]);
    out << "\nf_grid=";
    for (std::size_t i = 0; i < c.f_grid.size(); ++i)
        out << (i ? "," : "") << format_double(c.f_grid[i]);
    out << "\nseeds=";
    for (std::size_t i = 0; i < c.seeds.size(); ++i) out << (i ? "," : "") << c.seeds[i];
    out << "\nalpha=" << format_double(c.alpha) << "\nk_range=" << c.k_range[0] << ","
        << c.k_range[1] << "\nalgorithms=";
    for (std::size_t i = 0; i < c.algorithms.size(); ++i)
        out << (i ? "," : "") << to_string(c.algorithms[i]);
    out << "\nstandardize_sample=" << c.standardize_sample
        << "\nattack.case_size=" << c.attack_case_size
        << "\nattack.control_size=" << c.attack_control_size
        << "\nattack.target_fpr=" << format_double(c.attack_target_fpr)
        << "\ngapviz.features=" << c.gap_features[0] << "," << c.gap_features[1]
        << "\ngapviz.clusters=" << c.gap_clusters[0] << "," << c.gap_clusters[1] << "\n";
    return out.str();
}

} // namespace ppclust
