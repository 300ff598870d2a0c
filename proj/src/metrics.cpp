#include "ppclust/metrics.hpp"

#include "ppclust/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

namespace ppclust {

namespace {

std::vector<int> compact(const std::vector<int>& labels) {
    std::unordered_map<int, int> remap;
    std::vector<int> out(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        auto [it, inserted] = remap.try_emplace(labels[i], static_cast<int>(remap.size()));
        (void)inserted;
        out[i] = it->second;
    }
    return out;
}

Matrix contingency(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> ca = compact(a);
    std::vector<int> cb = compact(b);
    int ra = *std::max_element(ca.begin(), ca.end()) + 1;
    int rb = *std::max_element(cb.begin(), cb.end()) + 1;
    Matrix m = Matrix::Zero(ra, rb);
    for (std::size_t i = 0; i < ca.size(); ++i) m(ca[i], cb[i]) += 1.0;
    return m;
}

double entropy(const Vector& counts) {
    double n = counts.sum();
    double h = 0.0;
    for (Index i = 0; i < counts.size(); ++i) {
        if (counts[i] > 0.0) {
            double p = counts[i] / n;
            h -= p * std::log(p);
        }
    }
    return h;
}

double comb2(double x) { return 0.5 * x * (x - 1.0); }

} // namespace

double ari(const std::vector<int>& truth, const std::vector<int>& pred) {
    if (truth.size() != pred.size()) throw ParameterError("ari: label vectors differ in length");
    if (truth.size() < 2) throw ParameterError("ari: need at least 2 rows");

    Matrix m = contingency(truth, pred);
    double sum_ij = 0.0;
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j) sum_ij += comb2(m(i, j));
    double sum_a = 0.0;
    for (Index i = 0; i < m.rows(); ++i) sum_a += comb2(m.row(i).sum());
    double sum_b = 0.0;
    for (Index j = 0; j < m.cols(); ++j) sum_b += comb2(m.col(j).sum());

    double total = comb2(static_cast<double>(truth.size()));
    double expected = sum_a * sum_b / total;
    double max_index = 0.5 * (sum_a + sum_b);
    if (max_index == expected) return 1.0; // both partitions trivial
    return (sum_ij - expected) / (max_index - expected);
}

double silhouette(const Matrix& data, const ClusterAssignment& assignment) {
    const Index n = data.rows();
    if (assignment.labels.size() != n)
        throw ParameterError("silhouette: assignment size mismatch");

    const int k = assignment.k_effective;
    if (k < 2) throw MetricError("silhouette: need at least 2 clusters");

    std::vector<Index> counts(k, 0);
    for (Index i = 0; i < n; ++i)
        if (assignment.labels[i] >= 0) ++counts[assignment.labels[i]];

    double total = 0.0;
    Index scored = 0;
    std::vector<double> sums(k);
    for (Index i = 0; i < n; ++i) {
        int li = assignment.labels[i];
        if (li < 0) continue;
        ++scored;
        if (counts[li] == 1) continue; // singleton rows score 0
        std::fill(sums.begin(), sums.end(), 0.0);
        for (Index j = 0; j < n; ++j) {
            int lj = assignment.labels[j];
            if (lj < 0 || j == i) continue;
            sums[lj] += (data.row(i) - data.row(j)).norm();
        }
        double a = sums[li] / static_cast<double>(counts[li] - 1);
        double b = std::numeric_limits<double>::infinity();
        for (int c = 0; c < k; ++c) {
            if (c == li || counts[c] == 0) continue;
            b = std::min(b, sums[c] / static_cast<double>(counts[c]));
        }
        double denom = std::max(a, b);
        if (denom > 0.0) total += (b - a) / denom;
    }
    if (scored < 2) throw MetricError("silhouette: fewer than 2 scored rows");
    return total / static_cast<double>(scored);
}

double calinski_harabasz(const Matrix& data, const ClusterAssignment& assignment) {
    const Index n = data.rows();
    if (assignment.labels.size() != n)
        throw ParameterError("calinski_harabasz: assignment size mismatch");
    const int k = assignment.k_effective;
    if (k < 2) throw MetricError("calinski_harabasz: need at least 2 clusters");

    std::vector<Index> counts(k, 0);
    Matrix means = Matrix::Zero(k, data.cols());
    RowVector grand = RowVector::Zero(data.cols());
    Index scored = 0;
    for (Index i = 0; i < n; ++i) {
        int l = assignment.labels[i];
        if (l < 0) continue;
        means.row(l) += data.row(i);
        grand += data.row(i);
        ++counts[l];
        ++scored;
    }
    if (scored <= k) throw MetricError("calinski_harabasz: need more rows than clusters");
    grand /= static_cast<double>(scored);
    for (int c = 0; c < k; ++c)
        if (counts[c] > 0) means.row(c) /= static_cast<double>(counts[c]);

    double within = 0.0;
    for (Index i = 0; i < n; ++i) {
        int l = assignment.labels[i];
        if (l < 0) continue;
        within += (data.row(i) - means.row(l)).squaredNorm();
    }
    double between = 0.0;
    for (int c = 0; c < k; ++c)
        between += static_cast<double>(counts[c]) * (means.row(c) - grand).squaredNorm();

    if (within <= 0.0) throw MetricError("calinski_harabasz: zero within-cluster scatter");
    return (between / (k - 1)) / (within / static_cast<double>(scored - k));
}

std::pair<double, double> homogeneity_completeness(const std::vector<int>& truth,
                                                   const std::vector<int>& pred) {
    if (truth.size() != pred.size())
        throw ParameterError("homogeneity: label vectors differ in length");
    if (truth.empty()) throw ParameterError("homogeneity: empty labels");

    Matrix m = contingency(truth, pred);
    const double n = static_cast<double>(truth.size());
    Vector truth_counts = m.rowwise().sum();
    Vector pred_counts = m.colwise().sum();

    double h_truth = entropy(truth_counts);
    double h_pred = entropy(pred_counts);

    // conditional entropies H(truth|pred), H(pred|truth)
    double h_t_given_p = 0.0;
    double h_p_given_t = 0.0;
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j) {
            double c = m(i, j);
            if (c <= 0.0) continue;
            h_t_given_p -= (c / n) * std::log(c / pred_counts[j]);
            h_p_given_t -= (c / n) * std::log(c / truth_counts[i]);
        }
    }
    double homo = h_truth > 0.0 ? 1.0 - h_t_given_p / h_truth : 1.0;
    double comp = h_pred > 0.0 ? 1.0 - h_p_given_t / h_pred : 1.0;
    return {homo, comp};
}

namespace detail {

// Hungarian algorithm (potentials form) on the negated scores.
double max_assignment(const Matrix& scores) {
    const Index side = std::max(scores.rows(), scores.cols());
    Matrix cost = Matrix::Zero(side + 1, side + 1);
    double top = scores.size() > 0 ? scores.maxCoeff() : 0.0;
    for (Index i = 0; i < side; ++i)
        for (Index j = 0; j < side; ++j)
            cost(i + 1, j + 1) =
                (i < scores.rows() && j < scores.cols()) ? top - scores(i, j) : top;

    std::vector<double> u(side + 1, 0.0), v(side + 1, 0.0);
    std::vector<Index> match(side + 1, 0), way(side + 1, 0);
    for (Index i = 1; i <= side; ++i) {
        match[0] = i;
        Index j0 = 0;
        std::vector<double> minv(side + 1, std::numeric_limits<double>::infinity());
        std::vector<bool> used(side + 1, false);
        do {
            used[j0] = true;
            Index i0 = match[j0], j1 = 0;
            double delta = std::numeric_limits<double>::infinity();
            for (Index j = 1; j <= side; ++j) {
                if (used[j]) continue;
                double cur = cost(i0, j) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (Index j = 0; j <= side; ++j) {
                if (used[j]) {
                    u[match[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (match[j0] != 0);
        do {
            Index j1 = way[j0];
            match[j0] = match[j1];
            j0 = j1;
        } while (j0);
    }

    double total = 0.0;
    for (Index j = 1; j <= side; ++j) {
        Index i = match[j];
        if (i >= 1 && i <= scores.rows() && j <= scores.cols()) total += scores(i - 1, j - 1);
    }
    return total;
}

} // namespace detail

double accuracy(const std::vector<int>& truth, const std::vector<int>& pred, bool mapped) {
    if (truth.size() != pred.size())
        throw ParameterError("accuracy: label vectors differ in length");
    if (truth.empty()) throw ParameterError("accuracy: empty labels");

    if (!mapped) {
        std::size_t hits = 0;
        for (std::size_t i = 0; i < truth.size(); ++i)
            if (truth[i] == pred[i]) ++hits;
        return static_cast<double>(hits) / static_cast<double>(truth.size());
    }
    Matrix m = contingency(pred, truth); // rows: clusters, cols: classes
    return detail::max_assignment(m) / static_cast<double>(truth.size());
}

MetricReport evaluate(const Matrix& data, const ClusterAssignment& assignment,
                      const std::vector<int>& truth) {
    MetricReport r;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    try {
        r.silhouette = silhouette(data, assignment);
    } catch (const MetricError&) {
        r.silhouette = nan;
    }
    try {
        r.ch = calinski_harabasz(data, assignment);
    } catch (const MetricError&) {
        r.ch = nan;
    }
    if (!truth.empty()) {
        std::vector<int> pred = to_std(assignment.labels);
        r.ari = ari(truth, pred);
        auto hc = homogeneity_completeness(truth, pred);
        r.homogeneity = hc.first;
        r.completeness = hc.second;
        r.accuracy_raw = accuracy(truth, pred, false);
        r.accuracy_mapped = accuracy(truth, pred, true);
    } else {
        r.ari = r.homogeneity = r.completeness = r.accuracy_raw = r.accuracy_mapped = nan;
    }
    return r;
}

} // namespace ppclust
