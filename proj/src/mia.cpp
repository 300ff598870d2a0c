#include "ppclust/mia.hpp"

#include "ppclust/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ppclust {

double membership_score(const RowVector& target, const Matrix& shared) {
    if (shared.rows() == 0) throw ParameterError("membership_score: empty shared set");
    if (target.size() != shared.cols())
        throw ParameterError("membership_score: dimension mismatch");
    return (shared.rowwise() - target).rowwise().norm().minCoeff();
}

double calibrate_threshold(std::vector<double> control_scores, double target_fpr) {
    if (control_scores.size() < 20)
        throw ParameterError("calibrate_threshold: need at least 20 control scores");
    if (!(target_fpr > 0.0) || !(target_fpr < 1.0))
        throw ParameterError("calibrate_threshold: target_fpr must lie in (0, 1)");
    std::sort(control_scores.begin(), control_scores.end());
    auto pos = static_cast<std::size_t>(
        std::floor(target_fpr * static_cast<double>(control_scores.size() - 1)));
    return control_scores[pos];
}

AttackScores score_setup(const AttackSetup& setup) {
    if (setup.shared.n() == 0) throw ParameterError("score_setup: empty shared set");

    Matrix shared = decode_midpoints(setup.shared.data);
    RowVector mean = shared.colwise().mean();
    RowVector sd(shared.cols());
    for (Index j = 0; j < shared.cols(); ++j) {
        double var =
            (shared.col(j).array() - mean[j]).square().sum() / static_cast<double>(shared.rows());
        sd[j] = std::sqrt(var);
        if (!(sd[j] > 0.0)) sd[j] = 1.0;
    }
    Matrix s = (shared.rowwise() - mean).array().rowwise() / sd.array();

    auto score_rows = [&](const Dataset& group) {
        Matrix x = decode_midpoints(group);
        if (x.cols() != s.cols()) throw ParameterError("score_setup: dimension mismatch");
        std::vector<double> out(static_cast<std::size_t>(x.rows()));
        for (Index i = 0; i < x.rows(); ++i) {
            RowVector z = (x.row(i) - mean).array() / sd.array();
            out[static_cast<std::size_t>(i)] = membership_score(z, s);
        }
        return out;
    };

    AttackScores scores;
    scores.case_scores = score_rows(setup.case_group);
    scores.control_scores = score_rows(setup.control_group);
    return scores;
}

AttackPoint evaluate_attack(const AttackSetup& setup, double target_fpr) {
    AttackScores sc = score_setup(setup);
    AttackPoint pt;
    pt.epsilon = setup.shared.epsilon;
    pt.tau = calibrate_threshold(sc.control_scores, target_fpr);

    auto rate_below = [&](const std::vector<double>& v) {
        std::size_t hits = 0;
        for (double x : v)
            if (x < pt.tau) ++hits;
        return static_cast<double>(hits) / static_cast<double>(v.size());
    };
    pt.tpr = rate_below(sc.case_scores);
    pt.fpr = rate_below(sc.control_scores);
    return pt;
}

AttackCurve attack_power(const std::function<AttackSetup(double, std::uint64_t)>& factory,
                         const std::vector<double>& epsilon_grid, Index case_size,
                         Index control_size, double target_fpr,
                         const std::vector<std::uint64_t>& seeds) {
    if (epsilon_grid.empty()) throw ParameterError("attack_power: empty epsilon grid");
    if (case_size < 20 || control_size < 20)
        throw ParameterError("attack_power: case and control groups need at least 20 rows");
    if (seeds.empty()) throw ParameterError("attack_power: need at least one seed");

    AttackCurve curve;
    for (double eps : epsilon_grid) {
        AttackPoint mean;
        mean.epsilon = eps;
        for (std::uint64_t seed : seeds) {
            AttackSetup setup = factory(eps, seed);
            if (setup.case_group.n() != case_size || setup.control_group.n() != control_size)
                throw ParameterError("attack_power: factory produced wrong group sizes");
            AttackPoint pt = evaluate_attack(setup, target_fpr);
            mean.tau += pt.tau;
            mean.tpr += pt.tpr;
            mean.fpr += pt.fpr;
        }
        const double m = static_cast<double>(seeds.size());
        mean.tau /= m;
        mean.tpr /= m;
        mean.fpr /= m;
        curve.push_back(mean);
    }
    std::sort(curve.begin(), curve.end(),
              [](const AttackPoint& a, const AttackPoint& b) { return a.epsilon < b.epsilon; });
    return curve;
}

} // namespace ppclust
