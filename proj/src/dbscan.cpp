#include "ppclust/dbscan.hpp"

#include "ppclust/errors.hpp"

#include <deque>
#include <vector>

namespace ppclust {

ClusterAssignment dbscan(const Matrix& data, const DBSCANParams& params) {
    if (!(params.eps > 0.0)) throw ParameterError("dbscan: eps must be > 0");
    if (params.min_pts < 1) throw ParameterError("dbscan: min_pts must be >= 1");

    const Index n = data.rows();
    const double eps2 = params.eps * params.eps;

    auto neighbors = [&](Index i) {
        std::vector<Index> out;
        for (Index j = 0; j < n; ++j)
            if ((data.row(i) - data.row(j)).squaredNorm() <= eps2) out.push_back(j);
        return out;
    };

    constexpr int kUnvisited = -2;
    IntVector labels = IntVector::Constant(n, kUnvisited);
    int cluster = 0;

    for (Index i = 0; i < n; ++i) {
        if (labels[i] != kUnvisited) continue;
        std::vector<Index> nbrs = neighbors(i);
        if (static_cast<int>(nbrs.size()) < params.min_pts) {
            labels[i] = ClusterAssignment::kNoise;
            continue;
        }
        labels[i] = cluster;
        std::deque<Index> queue(nbrs.begin(), nbrs.end());
        while (!queue.empty()) {
            Index q = queue.front();
            queue.pop_front();
            if (labels[q] == ClusterAssignment::kNoise) labels[q] = cluster; // border point
            if (labels[q] != kUnvisited) continue;
            labels[q] = cluster;
            std::vector<Index> qn = neighbors(q);
            if (static_cast<int>(qn.size()) >= params.min_pts)
                queue.insert(queue.end(), qn.begin(), qn.end());
        }
        ++cluster;
    }

    ClusterAssignment a;
    a.labels = std::move(labels);
    a.k_effective = cluster;
    return a;
}

} // namespace ppclust
