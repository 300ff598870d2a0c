#include "ppclust/gmm.hpp"

#include "ppclust/errors.hpp"
#include "ppclust/kmeans.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <iostream>
#include <limits>

namespace ppclust {

namespace {

constexpr double kLog2Pi = 1.8378770664093454835606594728112;

struct Component {
    double log_weight;
    RowVector mean;
    Eigen::LLT<Matrix> llt;
    double log_det; // log |Sigma|
};

bool prepare(Component& c, const Matrix& cov) {
    c.llt.compute(cov);
    if (c.llt.info() != Eigen::Success) return false;
    c.log_det = 0.0;
    for (Index i = 0; i < cov.rows(); ++i) c.log_det += 2.0 * std::log(c.llt.matrixL()(i, i));
    return true;
}

Matrix global_covariance(const Matrix& x, double reg) {
    RowVector mean = x.colwise().mean();
    Matrix centered = x.rowwise() - mean;
    Matrix cov = centered.transpose() * centered / static_cast<double>(x.rows());
    cov.diagonal().array() += reg;
    return cov;
}

Index farthest_point(const Matrix& x, const Matrix& means) {
    Vector mind = Vector::Constant(x.rows(), std::numeric_limits<double>::infinity());
    for (Index j = 0; j < means.rows(); ++j)
        mind = mind.cwiseMin((x.rowwise() - means.row(j)).rowwise().squaredNorm());
    Index far = 0;
    mind.maxCoeff(&far);
    return far;
}

} // namespace

GMMResult gmm(const Matrix& data, int k, std::uint64_t seed, int max_iter, double tol,
              double reg) {
    const Index n = data.rows();
    const Index d = data.cols();
    if (k < 1 || k > n) throw ParameterError("gmm: k must satisfy 1 <= k <= n");
    if (!(reg > 0.0)) throw ParameterError("gmm: reg must be > 0");

    GMMResult res;
    res.weights = Vector::Constant(k, 1.0 / k);
    res.means.resize(k, d);
    res.covariances.assign(k, Matrix());

    KMeansResult init = kmeans(data, k, seed);
    Matrix gcov = global_covariance(data, reg);
    for (int j = 0; j < k; ++j) {
        if (j < init.assignment.k_effective)
            res.means.row(j) = init.centroids.row(j);
        else
            res.means.row(j) = data.row(farthest_point(data, res.means.topRows(j)));
    }
    for (int j = 0; j < k; ++j) {
        double nj = 0.0;
        RowVector mu = res.means.row(j);
        Matrix cov = Matrix::Zero(d, d);
        for (Index i = 0; i < n; ++i) {
            if (j < init.assignment.k_effective && init.assignment.labels[i] == j) {
                RowVector c = data.row(i) - mu;
                cov += c.transpose() * c;
                nj += 1.0;
            }
        }
        if (nj >= 2.0) {
            cov /= nj;
            cov.diagonal().array() += reg;
            res.covariances[j] = cov;
        } else {
            res.covariances[j] = gcov;
        }
        res.weights[j] = std::max(nj, 1.0) / static_cast<double>(n);
    }
    res.weights /= res.weights.sum();

    std::vector<Component> comps(k);
    Matrix log_resp(n, k);
    double prev_ll = -std::numeric_limits<double>::infinity();

    for (int it = 0; it < max_iter; ++it) {
        // E step
        for (int j = 0; j < k; ++j) {
            comps[j].log_weight = std::log(res.weights[j]);
            comps[j].mean = res.means.row(j);
            Matrix cov = res.covariances[j];
            int tries = 0;
            while (!prepare(comps[j], cov) && tries < 8) {
                cov.diagonal().array() += reg * std::pow(10.0, tries);
                ++tries;
            }
            if (tries == 8) {
                std::cerr << "gmm: component " << j << " degenerate, re-seeding\n";
                res.means.row(j) = data.row(farthest_point(data, res.means));
                res.covariances[j] = gcov;
                comps[j].mean = res.means.row(j);
                prepare(comps[j], res.covariances[j]);
            }
        }
        for (int j = 0; j < k; ++j) {
            const auto& c = comps[j];
            Matrix centered = data.rowwise() - c.mean;
            Matrix solved = c.llt.solve(centered.transpose());
            Vector maha = (centered.transpose().cwiseProduct(solved)).colwise().sum();
            log_resp.col(j) =
                (-0.5 * (maha.array() + d * kLog2Pi + c.log_det) + c.log_weight).matrix();
        }
        double ll = 0.0;
        for (Index i = 0; i < n; ++i) {
            double mx = log_resp.row(i).maxCoeff();
            double s = (log_resp.row(i).array() - mx).exp().sum();
            double lse = mx + std::log(s);
            ll += lse;
            log_resp.row(i) = (log_resp.row(i).array() - lse).matrix();
        }
        res.log_likelihood.push_back(ll);
        res.iterations = it + 1;

        // M step
        Matrix resp = log_resp.array().exp();
        bool reseeded = false;
        for (int j = 0; j < k; ++j) {
            double nj = resp.col(j).sum();
            if (nj < 1e-10) {
                std::cerr << "gmm: component " << j << " lost all mass, re-seeding\n";
                res.means.row(j) = data.row(farthest_point(data, res.means));
                res.covariances[j] = gcov;
                res.weights[j] = 1.0 / static_cast<double>(n);
                reseeded = true;
                continue;
            }
            RowVector mu = (resp.col(j).transpose() * data) / nj;
            Matrix centered = data.rowwise() - mu;
            Matrix cov = centered.transpose() * (centered.array().colwise() * resp.col(j).array()).matrix() / nj;
            cov.diagonal().array() += reg;
            res.means.row(j) = mu;
            res.covariances[j] = cov;
            res.weights[j] = nj / static_cast<double>(n);
        }
        res.weights /= res.weights.sum();

        if (!reseeded && ll - prev_ll < tol && it > 0) break;
        prev_ll = ll;
    }

    IntVector raw(n);
    for (Index i = 0; i < n; ++i) {
        int arg = 0;
        double best = log_resp(i, 0);
        for (int j = 1; j < k; ++j) {
            if (log_resp(i, j) > best) {
                best = log_resp(i, j);
                arg = j;
            }
        }
        raw[i] = arg;
    }
    res.assignment = make_assignment(raw);
    return res;
}

} // namespace ppclust
