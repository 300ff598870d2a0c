#include "ppclust/kmeans.hpp"

#include "ppclust/errors.hpp"
#include "ppclust/rng.hpp"

#include <limits>

namespace ppclust {

namespace {

// Squared distances of every row to every centroid, n x k.
Matrix cross_sqdist(const Matrix& x, const Matrix& c) {
    Matrix d = -2.0 * x * c.transpose();
    d.colwise() += x.rowwise().squaredNorm();
    d.rowwise() += c.rowwise().squaredNorm().transpose();
    return d.cwiseMax(0.0);
}

void assign_rows(const Matrix& dist, IntVector& labels, Vector& best) {
    const Index n = dist.rows();
    const Index k = dist.cols();
    for (Index i = 0; i < n; ++i) {
        int arg = 0;
        double b = dist(i, 0);
        for (Index j = 1; j < k; ++j) {
            if (dist(i, j) < b) {
                b = dist(i, j);
                arg = static_cast<int>(j);
            }
        }
        labels[i] = arg;
        best[i] = b;
    }
}

} // namespace

KMeansResult kmeans(const Matrix& data, int k, std::uint64_t seed, int max_iter, double tol) {
    const Index n = data.rows();
    const Index d = data.cols();
    if (k < 1 || k > n) throw ParameterError("kmeans: k must satisfy 1 <= k <= n");

    // Greedy farthest-point seeding after one seeded uniform pick.
    Matrix centroids(k, d);
    Rng rng(mix_key(seed, 0x6b6d6e73ULL)); // "kmns"
    centroids.row(0) = data.row(static_cast<Index>(rng.uniform_int(static_cast<std::uint64_t>(n))));
    Vector mind = (data.rowwise() - centroids.row(0)).rowwise().squaredNorm();
    for (int j = 1; j < k; ++j) {
        Index far = 0;
        double best = -1.0;
        for (Index i = 0; i < n; ++i) {
            if (mind[i] > best) {
                best = mind[i];
                far = i;
            }
        }
        centroids.row(j) = data.row(far);
        mind = mind.cwiseMin((data.rowwise() - centroids.row(j)).rowwise().squaredNorm());
    }

    KMeansResult res;
    res.assignment.labels.resize(n);
    Vector best(n);
    Matrix sums(k, d);
    IntVector counts(k);

    for (int it = 0; it < max_iter; ++it) {
        Matrix dist = cross_sqdist(data, centroids);
        assign_rows(dist, res.assignment.labels, best);
        res.wcss = best.sum();
        res.wcss_trace.push_back(res.wcss);
        res.iterations = it + 1;

        sums.setZero();
        counts.setZero();
        for (Index i = 0; i < n; ++i) {
            sums.row(res.assignment.labels[i]) += data.row(i);
            ++counts[res.assignment.labels[i]];
        }
        double shift = 0.0;
        for (int j = 0; j < k; ++j) {
            if (counts[j] == 0) {
                // Re-seat an empty centroid on the row farthest from its
                // assigned centroid; never increases the objective.
                Index far = 0;
                double worst = -1.0;
                for (Index i = 0; i < n; ++i) {
                    if (best[i] > worst) {
                        worst = best[i];
                        far = i;
                    }
                }
                centroids.row(j) = data.row(far);
                best[far] = 0.0;
                shift = std::numeric_limits<double>::infinity();
                continue;
            }
            RowVector mean = sums.row(j) / static_cast<double>(counts[j]);
            shift = std::max(shift, (mean - centroids.row(j)).cwiseAbs().maxCoeff());
            centroids.row(j) = mean;
        }
        if (shift < tol) break;
    }

    // Final consistent state: labels against the converged centroids, then
    // centroids as exact means of their rows.
    Matrix dist = cross_sqdist(data, centroids);
    assign_rows(dist, res.assignment.labels, best);
    sums.setZero();
    counts.setZero();
    for (Index i = 0; i < n; ++i) {
        sums.row(res.assignment.labels[i]) += data.row(i);
        ++counts[res.assignment.labels[i]];
    }
    for (int j = 0; j < k; ++j)
        if (counts[j] > 0) centroids.row(j) = sums.row(j) / static_cast<double>(counts[j]);

    res.wcss = 0.0;
    for (Index i = 0; i < n; ++i)
        res.wcss += (data.row(i) - centroids.row(res.assignment.labels[i])).squaredNorm();
    if (res.wcss_trace.empty() || res.wcss < res.wcss_trace.back())
        res.wcss_trace.push_back(res.wcss);

    res.centroids = std::move(centroids);
    res.assignment = make_assignment(res.assignment.labels);
    // Contiguous relabeling can permute centroid rows; rebuild in label order.
    Matrix ordered(res.assignment.k_effective, d);
    IntVector seen(res.assignment.k_effective);
    seen.setZero();
    sums.setZero();
    counts.setZero();
    for (Index i = 0; i < n; ++i) {
        sums.row(res.assignment.labels[i]) += data.row(i);
        ++counts[res.assignment.labels[i]];
    }
    for (int j = 0; j < res.assignment.k_effective; ++j)
        ordered.row(j) = sums.row(j) / static_cast<double>(counts[j]);
    res.centroids = std::move(ordered);
    return res;
}

} // namespace ppclust
