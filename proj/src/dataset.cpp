#include "ppclust/dataset.hpp"

#include "ppclust/csv.hpp"
#include "ppclust/errors.hpp"
#include "ppclust/rng.hpp"
#include "ppclust/util.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <unordered_map>

namespace ppclust {

namespace {

bool parse_real(const std::string& token, double& out) {
    const char* begin = token.c_str();
    char* end = nullptr;
    out = std::strtod(begin, &end);
    return end != begin && *end == '\0' && std::isfinite(out);
}

bool contains(const std::vector<std::string>& v, const std::string& s) {
    return std::find(v.begin(), v.end(), s) != v.end();
}

} // namespace

ClusterAssignment make_assignment(const IntVector& raw_labels) {
    ClusterAssignment a;
    a.labels.resize(raw_labels.size());
    std::unordered_map<int, int> remap;
    int next = 0;
    for (Index i = 0; i < raw_labels.size(); ++i) {
        int l = raw_labels[i];
        if (l == ClusterAssignment::kNoise) {
            a.labels[i] = ClusterAssignment::kNoise;
            continue;
        }
        auto [it, inserted] = remap.try_emplace(l, next);
        if (inserted) ++next;
        a.labels[i] = it->second;
    }
    a.k_effective = next;
    return a;
}

std::vector<int> to_std(const IntVector& v) {
    return std::vector<int>(v.data(), v.data() + v.size());
}

bool same_schema(const std::vector<FeatureSchema>& a, const std::vector<FeatureSchema>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (a[j].name != b[j].name || a[j].kind != b[j].kind ||
            a[j].state_count != b[j].state_count || a[j].bin_edges != b[j].bin_edges ||
            a[j].categories != b[j].categories)
            return false;
    }
    return true;
}

Dataset ingest_csv_text(const std::string& text, const SchemaHints& hints) {
    csv::Table t = csv::parse_csv(text);
    if (t.rows.empty()) throw ParseError("ingest: no data rows");

    Index label_col = -1;
    if (hints.label_column) {
        for (std::size_t j = 0; j < t.header.size(); ++j)
            if (t.header[j] == *hints.label_column) label_col = static_cast<Index>(j);
        if (label_col < 0)
            throw ParseError("ingest: label column '" + *hints.label_column + "' not found");
    }

    const Index n = static_cast<Index>(t.rows.size());
    const Index total_cols = static_cast<Index>(t.header.size());

    // Column kinds: hinted, else numeric iff every token parses as a real.
    std::vector<FeatureKind> kinds(total_cols, FeatureKind::Numeric);
    for (Index j = 0; j < total_cols; ++j) {
        if (contains(hints.numeric_columns, t.header[j])) {
            kinds[j] = FeatureKind::Numeric;
            continue;
        }
        if (contains(hints.categorical_columns, t.header[j])) {
            kinds[j] = FeatureKind::Categorical;
            continue;
        }
        for (Index i = 0; i < n; ++i) {
            double v;
            const std::string& tok = t.rows[i][j];
            if (tok.empty())
                throw ParseError("ingest: empty cell at row " + std::to_string(i) +
                                 ", column '" + t.header[j] + "'");
            if (!parse_real(tok, v)) {
                kinds[j] = FeatureKind::Categorical;
                break;
            }
        }
    }

    Dataset d;
    Index feat_cols = total_cols - (label_col >= 0 ? 1 : 0);
    d.rows.resize(n, feat_cols);
    d.ids.resize(n);
    std::iota(d.ids.begin(), d.ids.end(), 0);

    std::unordered_map<std::string, int> label_codes;
    if (label_col >= 0) d.labels.resize(n);

    Index out_j = 0;
    for (Index j = 0; j < total_cols; ++j) {
        if (j == label_col) {
            for (Index i = 0; i < n; ++i) {
                const std::string& tok = t.rows[i][j];
                if (tok.empty())
                    throw ParseError("ingest: empty label at row " + std::to_string(i));
                auto [it, inserted] = label_codes.try_emplace(tok, static_cast<int>(label_codes.size()));
                (void)inserted;
                d.labels[i] = it->second;
            }
            continue;
        }
        FeatureSchema fs;
        fs.name = t.header[j];
        fs.kind = kinds[j];
        if (fs.kind == FeatureKind::Numeric) {
            for (Index i = 0; i < n; ++i) {
                double v;
                const std::string& tok = t.rows[i][j];
                if (tok.empty() || !parse_real(tok, v))
                    throw ParseError("ingest: non-numeric token '" + tok + "' at row " +
                                     std::to_string(i) + ", column '" + fs.name + "'");
                d.rows(i, out_j) = v;
            }
            fs.state_count = 0;
        } else {
            std::unordered_map<std::string, int> codes;
            for (Index i = 0; i < n; ++i) {
                const std::string& tok = t.rows[i][j];
                if (tok.empty())
                    throw ParseError("ingest: empty cell at row " + std::to_string(i) +
                                     ", column '" + fs.name + "'");
                auto [it, inserted] = codes.try_emplace(tok, static_cast<int>(codes.size()));
                if (inserted) fs.categories.push_back(tok);
                d.rows(i, out_j) = it->second;
            }
            fs.state_count = static_cast<int>(fs.categories.size());
        }
        d.schema.push_back(std::move(fs));
        ++out_j;
    }
    return d;
}

Dataset ingest_csv(const std::string& path, const SchemaHints& hints) {
    csv::Table t = csv::read_csv(path); // reuse error handling for missing file
    return ingest_csv_text(csv::to_csv(t), hints);
}

std::string dataset_to_csv(const Dataset& d, bool include_labels) {
    csv::Table t;
    for (const auto& fs : d.schema) t.header.push_back(fs.name);
    bool with_labels = include_labels && d.has_labels();
    if (with_labels) t.header.push_back("label");

    Matrix decoded = decode_midpoints(d);
    for (Index i = 0; i < d.n(); ++i) {
        std::vector<std::string> row;
        row.reserve(t.header.size());
        for (Index j = 0; j < d.dim(); ++j) {
            const auto& fs = d.schema[j];
            if (fs.kind == FeatureKind::Categorical) {
                int code = static_cast<int>(d.rows(i, j));
                row.push_back(fs.categories.at(code));
            } else {
                row.push_back(format_double(decoded(i, j)));
            }
        }
        if (with_labels) row.push_back(std::to_string(d.labels[i]));
        t.rows.push_back(std::move(row));
    }
    return csv::to_csv(t);
}

void write_dataset_csv(const std::string& path, const Dataset& d, bool include_labels) {
    csv::Table t = csv::parse_csv(dataset_to_csv(d, include_labels));
    csv::write_csv(path, t);
}

Dataset standardize(const Dataset& d) {
    if (d.n() < 2) throw ParameterError("standardize: need at least 2 rows");
    Dataset out = d;
    for (Index j = 0; j < d.dim(); ++j) {
        const auto& fs = d.schema[j];
        if (fs.kind != FeatureKind::Numeric || fs.state_count >= 1) continue;
        double mean = d.rows.col(j).mean();
        double var = (d.rows.col(j).array() - mean).square().sum() / static_cast<double>(d.n());
        double sd = std::sqrt(var);
        if (sd > 0.0)
            out.rows.col(j) = (d.rows.col(j).array() - mean) / sd;
        else
            out.rows.col(j) = d.rows.col(j).array() - mean;
    }
    return out;
}

Matrix standardize_matrix(const Matrix& m) {
    Matrix out = m;
    for (Index j = 0; j < m.cols(); ++j) {
        double mean = m.col(j).mean();
        double var = (m.col(j).array() - mean).square().sum() / static_cast<double>(m.rows());
        double sd = std::sqrt(var);
        if (sd > 0.0)
            out.col(j) = (m.col(j).array() - mean) / sd;
        else
            out.col(j) = m.col(j).array() - mean;
    }
    return out;
}

std::vector<Dataset> partition(const Dataset& d, const std::vector<double>& shares,
                               std::uint64_t seed) {
    if (shares.empty()) throw ConfigError("partition: empty share vector");
    double total = 0.0;
    for (double s : shares) {
        if (s <= 0.0) throw ConfigError("partition: shares must be positive");
        total += s;
    }
    if (std::abs(total - 1.0) > 1e-9)
        throw ConfigError("partition: shares sum to " + format_double(total) + ", expected 1");

    const Index n = d.n();
    std::vector<Index> order(n);
    std::iota(order.begin(), order.end(), Index{0});
    Rng rng(mix_key(seed, 0x70617274ULL)); // "part"
    for (Index i = n - 1; i > 0; --i)
        std::swap(order[i], order[rng.uniform_int(static_cast<std::uint64_t>(i) + 1)]);

    // Largest-remainder sizing: every part within one row of n*share.
    std::vector<Index> counts(shares.size());
    std::vector<std::pair<double, std::size_t>> rema(shares.size());
    Index assigned = 0;
    for (std::size_t p = 0; p < shares.size(); ++p) {
        double exact = shares[p] * static_cast<double>(n);
        counts[p] = static_cast<Index>(std::floor(exact));
        rema[p] = {exact - std::floor(exact), p};
        assigned += counts[p];
    }
    std::stable_sort(rema.begin(), rema.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (Index r = 0; r < n - assigned; ++r) ++counts[rema[r % rema.size()].second];

    std::vector<Dataset> parts;
    Index pos = 0;
    for (std::size_t p = 0; p < shares.size(); ++p) {
        std::vector<Index> rows(order.begin() + pos, order.begin() + pos + counts[p]);
        std::sort(rows.begin(), rows.end());
        parts.push_back(subset_rows(d, rows));
        pos += counts[p];
    }
    return parts;
}

Dataset subset_rows(const Dataset& d, const std::vector<Index>& rows) {
    Dataset out;
    out.schema = d.schema;
    out.rows.resize(static_cast<Index>(rows.size()), d.dim());
    out.ids.resize(rows.size());
    if (d.has_labels()) out.labels.resize(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out.rows.row(static_cast<Index>(i)) = d.rows.row(rows[i]);
        out.ids[i] = d.ids[rows[i]];
        if (d.has_labels()) out.labels[i] = d.labels[rows[i]];
    }
    return out;
}

Dataset make_blob_rows(const Matrix& centers, const std::vector<Index>& sizes,
                       const std::vector<double>& spread, std::uint64_t seed) {
    if (centers.rows() == 0 || static_cast<std::size_t>(centers.rows()) != sizes.size() ||
        sizes.size() != spread.size())
        throw ParameterError("make_blobs: centers, sizes and spread disagree");
    for (double s : spread)
        if (!(s > 0.0)) throw ParameterError("make_blobs: spread must be > 0");

    Index n = 0;
    for (Index s : sizes) n += s;
    const Index dim = centers.cols();

    Dataset d;
    d.rows.resize(n, dim);
    d.labels.resize(n);
    d.ids.resize(n);
    for (Index j = 0; j < dim; ++j) {
        FeatureSchema fs;
        fs.name = "x" + std::to_string(j);
        fs.kind = FeatureKind::Numeric;
        d.schema.push_back(std::move(fs));
    }

    Rng rng(mix_key(seed, 0x626c6f62ULL)); // "blob"
    Index row = 0;
    for (std::size_t c = 0; c < sizes.size(); ++c) {
        for (Index i = 0; i < sizes[c]; ++i, ++row) {
            for (Index j = 0; j < dim; ++j)
                d.rows(row, j) = centers(static_cast<Index>(c), j) + spread[c] * rng.gaussian();
            d.labels[row] = static_cast<int>(c);
            d.ids[row] = row;
        }
    }
    return d;
}

Dataset make_blobs(const BlobSpec& spec) {
    if (spec.k_true < 1) throw ParameterError("make_blobs: k_true must be >= 1");
    Matrix centers = spec.centers;
    if (centers.rows() != spec.k_true || centers.cols() != spec.dim)
        throw ParameterError("make_blobs: centers must be k_true x dim");
    std::vector<Index> sizes(spec.k_true, spec.n_per_cluster);
    std::vector<double> spread = spec.spread;
    if (spread.size() == 1) spread.assign(spec.k_true, spread[0]);
    return make_blob_rows(centers, sizes, spread, spec.seed);
}

Dataset concat(const std::vector<Dataset>& parts) {
    if (parts.empty()) throw ParameterError("concat: no datasets");
    for (const auto& p : parts)
        if (!same_schema(p.schema, parts.front().schema))
            throw ProtocolError("concat: schema mismatch");
    Index n = 0;
    bool with_labels = true;
    for (const auto& p : parts) {
        n += p.n();
        with_labels = with_labels && p.has_labels();
    }
    Dataset out;
    out.schema = parts.front().schema;
    out.rows.resize(n, parts.front().dim());
    out.ids.resize(n);
    if (with_labels) out.labels.resize(n);
    Index pos = 0;
    for (const auto& p : parts) {
        out.rows.middleRows(pos, p.n()) = p.rows;
        for (Index i = 0; i < p.n(); ++i) {
            out.ids[pos + i] = p.ids[i];
            if (with_labels) out.labels[pos + i] = p.labels[i];
        }
        pos += p.n();
    }
    return out;
}

Matrix decode_midpoints(const Dataset& d) {
    Matrix out = d.rows;
    for (Index j = 0; j < d.dim(); ++j) {
        const auto& fs = d.schema[j];
        if (fs.kind != FeatureKind::Numeric || fs.state_count < 1) continue;
        for (Index i = 0; i < d.n(); ++i) {
            int code = static_cast<int>(d.rows(i, j));
            out(i, j) = 0.5 * (fs.bin_edges[code] + fs.bin_edges[code + 1]);
        }
    }
    return out;
}

} // namespace ppclust
