#pragma once

#include "ppclust/config.hpp"
#include "ppclust/mia.hpp"
#include "ppclust/protocol.hpp"

#include <string>
#include <vector>

namespace ppclust {

/// Base dataset from a config (CSV or blobs), standardized/discretized as
/// configured. Blob draws are seeded per run.
Dataset build_dataset(const ExperimentConfig& config, std::uint64_t seed);

/// Creates out/<config-hash>-s<seed tag>[-n]; an existing directory is
/// never reused.
std::string make_run_dir(const ExperimentConfig& config, const std::string& out_root);

/// Protocol sweep over (epsilon, f, seed); writes per-run reports and the
/// aggregate CSV. Returns the run directory.
std::string run_simulate(const ExperimentConfig& config, const std::string& out_root);

/// Standalone server recommendation on a noisy CSV + sidecar; writes the
/// recommendation JSON next to the run artifacts and returns it.
Recommendation run_select(const std::string& noisy_csv_path, const ExperimentConfig& config,
                          const std::string& out_root, std::string* dir_out = nullptr);

/// Membership-inference sweep; writes curve CSV + summary. Returns run dir.
std::string run_attack(const ExperimentConfig& config, const std::string& out_root,
                       AttackCurve* curve_out = nullptr);

/// Original-vs-noisy paired coordinates per epsilon for two selected
/// clusters; plot-ready CSVs. Returns run dir.
std::string run_gapviz(const ExperimentConfig& config, const std::string& out_root);

/// The attack factory used by run_attack, exposed so tests can drive
/// attack_power directly. When null_model is true the shared rows come from
/// records outside both groups.
AttackSetup make_attack_setup(const ExperimentConfig& config, double epsilon, std::uint64_t seed,
                              bool null_model = false);

std::string recommendation_json(const Recommendation& rec);

} // namespace ppclust
