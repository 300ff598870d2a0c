#pragma once

#include "ppclust/dataset.hpp"
#include "ppclust/ldp.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace ppclust {

/// Attacker's view for one experiment: clean case/control rows and the
/// noisy rows the server received. The shared set derives from the case
/// group only (or from neither, for null calibration).
struct AttackSetup {
    Dataset case_group;
    Dataset control_group;
    NoisyDataset shared;
};

/// Minimum Euclidean distance from the target to any shared row; lower
/// means stronger membership evidence.
double membership_score(const RowVector& target, const Matrix& shared);

/// Lower-interpolation quantile of the control scores at target_fpr.
/// Declaring membership when score < tau keeps the realized FPR at or
/// below target_fpr on the control group.
double calibrate_threshold(std::vector<double> control_scores, double target_fpr);

struct AttackPoint {
    double epsilon = 0.0;
    double tau = 0.0;
    double tpr = 0.0;
    double fpr = 0.0;
};

using AttackCurve = std::vector<AttackPoint>;

/// Case/control scores for one setup, computed on standardized decoded
/// features (standardization fitted on the shared rows — everything the
/// attacker can see).
struct AttackScores {
    std::vector<double> case_scores;
    std::vector<double> control_scores;
};

AttackScores score_setup(const AttackSetup& setup);

/// One attack evaluation: calibrate on control, report TPR on case.
AttackPoint evaluate_attack(const AttackSetup& setup, double target_fpr);

/// Attack power across a privacy-budget grid, averaged over seeds. The
/// factory builds the setup for a given (epsilon, seed); group sizes must be
/// at least 20.
AttackCurve attack_power(const std::function<AttackSetup(double, std::uint64_t)>& factory,
                         const std::vector<double>& epsilon_grid, Index case_size,
                         Index control_size, double target_fpr,
                         const std::vector<std::uint64_t>& seeds);

} // namespace ppclust
