#include "ppclust/hierarchical.hpp"

#include "ppclust/errors.hpp"

#include <cmath>
#include <limits>
#include <numeric>

namespace ppclust {

Linkage linkage_from_string(const std::string& s) {
    if (s == "single") return Linkage::Single;
    if (s == "complete") return Linkage::Complete;
    if (s == "average") return Linkage::Average;
    if (s == "ward") return Linkage::Ward;
    throw ParameterError("unknown linkage '" + s + "'");
}

std::string to_string(Linkage l) {
    switch (l) {
        case Linkage::Single: return "single";
        case Linkage::Complete: return "complete";
        case Linkage::Average: return "average";
        case Linkage::Ward: return "ward";
    }
    return "?";
}

namespace {

double lance_williams(Linkage link, double d_iw, double d_jw, double d_ij, double ni, double nj,
                      double nw) {
    switch (link) {
        case Linkage::Single: return std::min(d_iw, d_jw);
        case Linkage::Complete: return std::max(d_iw, d_jw);
        case Linkage::Average: return (ni * d_iw + nj * d_jw) / (ni + nj);
        case Linkage::Ward:
            return ((ni + nw) * d_iw + (nj + nw) * d_jw - nw * d_ij) / (ni + nj + nw);
    }
    return 0.0;
}

} // namespace

HierarchicalResult hierarchical(const Matrix& data, int k, Linkage linkage) {
    const Index n = data.rows();
    if (k < 1 || k > n) throw ParameterError("hierarchical: k must satisfy 1 <= k <= n");

    // Pairwise distances; ward works on squared Euclidean.
    Matrix dist(n, n);
    for (Index i = 0; i < n; ++i) {
        dist(i, i) = 0.0;
        for (Index j = i + 1; j < n; ++j) {
            double d2 = (data.row(i) - data.row(j)).squaredNorm();
            double v = linkage == Linkage::Ward ? d2 : std::sqrt(d2);
            dist(i, j) = v;
            dist(j, i) = v;
        }
    }

    const double inf = std::numeric_limits<double>::infinity();
    std::vector<bool> active(n, true);
    std::vector<double> sizes(n, 1.0);
    std::vector<Index> parent(n);
    std::iota(parent.begin(), parent.end(), Index{0});

    // Nearest active neighbor per active cluster.
    std::vector<Index> nn(n);
    std::vector<double> nnd(n, inf);
    auto refresh_nn = [&](Index i) {
        nnd[i] = inf;
        for (Index j = 0; j < n; ++j) {
            if (j == i || !active[j]) continue;
            if (dist(i, j) < nnd[i]) {
                nnd[i] = dist(i, j);
                nn[i] = j;
            }
        }
    };
    for (Index i = 0; i < n; ++i) refresh_nn(i);

    HierarchicalResult res;
    Index clusters = n;
    while (clusters > k) {
        Index a = -1;
        double best = inf;
        for (Index i = 0; i < n; ++i) {
            if (active[i] && nnd[i] < best) {
                best = nnd[i];
                a = i;
            }
        }
        Index b = nn[a];
        if (b < a) std::swap(a, b);

        res.merge_distances.push_back(best);
        double d_ab = dist(a, b);

        for (Index w = 0; w < n; ++w) {
            if (!active[w] || w == a || w == b) continue;
            double v = lance_williams(linkage, dist(a, w), dist(b, w), d_ab, sizes[a], sizes[b],
                                      sizes[w]);
            dist(a, w) = v;
            dist(w, a) = v;
        }
        sizes[a] += sizes[b];
        active[b] = false;
        parent[b] = a;
        --clusters;

        refresh_nn(a);
        for (Index i = 0; i < n; ++i) {
            if (!active[i] || i == a) continue;
            if (nn[i] == a || nn[i] == b) {
                refresh_nn(i);
            } else if (dist(i, a) < nnd[i]) {
                nnd[i] = dist(i, a);
                nn[i] = a;
            }
        }
    }

    auto root = [&](Index i) {
        while (parent[i] != i) i = parent[i];
        return i;
    };
    IntVector raw(n);
    for (Index i = 0; i < n; ++i) raw[i] = static_cast<int>(root(i));
    res.assignment = make_assignment(raw);
    return res;
}

} // namespace ppclust
