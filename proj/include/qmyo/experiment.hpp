#pragma once

#include "qmyo/config.hpp"
#include "qmyo/dataset.hpp"
#include "qmyo/decode.hpp"
#include "qmyo/metrics.hpp"

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace qmyo {

struct Evaluation {
  std::vector<Dof> dofs;
  std::map<Dof, double> r_squared;
  double r_squared_global = 0.0;
  BlockErrors errors;
  std::size_t n_blocks = 0;
  std::size_t n_windows = 0;
  std::size_t negative_zero_windows = 0;
  std::size_t clamped_windows = 0;
};

/// Decodes every row of `test` and scores the DOFs the model controls.
/// When `decode_csv` is given, one row per window is written to it.
Evaluation evaluate_model(const ControllerModel& model, const FeatureDataset& test,
                          BlockRule rule = BlockRule::Majority,
                          std::ostream* decode_csv = nullptr);

struct SizeResult {
  std::size_t per_action = 0;
  Evaluation evaluation;
  std::map<Dof, double> overlap;
  std::map<Dof, double> p_zero_min_eigenvalue;
  std::string decode_csv;
};

struct ExperimentReport {
  std::string config_hash;
  std::uint64_t seed = 0;
  std::size_t n_train_rows = 0;
  std::size_t n_test_rows = 0;
  std::size_t skipped_return_phase = 0;
  std::vector<SizeResult> results;
};

/// One model per entry of cfg.training_sizes, each decoded over `test`.
ExperimentReport run_experiment(const ExperimentConfig& cfg, const FeatureDataset& train,
                                const FeatureDataset& test);

std::string format_report_text(const ExperimentReport& report);
std::string format_report_csv(const ExperimentReport& report);

std::string format_evaluation_text(const Evaluation& eval);

}  // namespace qmyo
