#include "qmyo/experiment.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace qmyo {

Evaluation evaluate_model(const ControllerModel& model, const FeatureDataset& test,
                          BlockRule rule, std::ostream* decode_csv) {
  if (test.rows.empty()) throw EmptyInputError("evaluate: test dataset has no rows");
  if (test.n_channels != model.n_channels) {
    throw DimensionError("evaluate: test data has " + std::to_string(test.n_channels) +
                         " channels, model expects " + std::to_string(model.n_channels));
  }
  validate_model(model);

  Evaluation eval;
  for (const auto& [dof, ops] : model.dofs) eval.dofs.push_back(dof);
  const auto n = static_cast<Eigen::Index>(test.rows.size());
  const auto k = static_cast<Eigen::Index>(eval.dofs.size());

  TrajectoryPair pair;
  pair.dofs = eval.dofs;
  pair.truth.resize(n, k);
  pair.estimate.resize(n, k);
  std::vector<int> block_ids(test.rows.size());

  if (decode_csv) write_decode_csv_header(*decode_csv, model);
  for (Eigen::Index i = 0; i < n; ++i) {
    const DatasetRow& row = test.rows[static_cast<std::size_t>(i)];
    const DecodedAction action = decode_features(row.features, model);
    for (Eigen::Index c = 0; c < k; ++c) {
      const Dof dof = eval.dofs[static_cast<std::size_t>(c)];
      const DofDecision& d = action.per_dof.at(dof);
      pair.truth(i, c) = row.angles[index_of(dof)];
      pair.estimate(i, c) = d.signed_angle();
      if (d.negative_zero) ++eval.negative_zero_windows;
      if (d.angle_clamped) ++eval.clamped_windows;
    }
    block_ids[static_cast<std::size_t>(i)] = row.block;
    if (decode_csv) write_decode_csv_row(*decode_csv, static_cast<std::size_t>(i), action, model);
  }

  pair.blocks = blocks_from_ids(block_ids, pair.truth, pair.dofs);
  for (Eigen::Index c = 0; c < k; ++c) {
    eval.r_squared[eval.dofs[static_cast<std::size_t>(c)]] =
        r_squared_dof(VecXd(pair.truth.col(c)), VecXd(pair.estimate.col(c)));
  }
  eval.r_squared_global = r_squared_global(pair.truth, pair.estimate);
  eval.errors = block_errors(pair, rule);
  eval.n_blocks = pair.blocks.size();
  eval.n_windows = test.rows.size();
  return eval;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg, const FeatureDataset& train_set,
                                const FeatureDataset& test) {
  cfg.validate();
  if (test.rows.empty()) throw EmptyInputError("experiment: test dataset has no rows");
  if (train_set.n_channels != test.n_channels) {
    throw DimensionError("experiment: training data has " + std::to_string(train_set.n_channels) +
                         " channels, test data " + std::to_string(test.n_channels));
  }

  ExperimentReport report;
  report.config_hash = config_hash(cfg);
  report.seed = cfg.seed;
  report.n_train_rows = train_set.rows.size();
  report.n_test_rows = test.rows.size();

  const auto samples = to_training_samples(train_set);
  const std::size_t available = min_per_action(samples, cfg.dofs);
  for (std::size_t size : cfg.training_sizes) {
    if (size > available) {
      throw ConfigError("experiment: training size " + std::to_string(size) +
                        " per action exceeds the " + std::to_string(available) + " available");
    }
  }

  for (std::size_t size : cfg.training_sizes) {
    TrainingSummary summary;
    const auto subset = take_per_action(samples, size);
    const ControllerModel model =
        train(subset, train_set.n_channels, cfg.dofs, cfg.decode, &summary);
    report.skipped_return_phase = static_cast<std::size_t>(
        std::count_if(samples.begin(), samples.end(),
                      [](const TrainingSample& s) { return s.phase == MovementPhase::Return; }));

    SizeResult result;
    result.per_action = size;
    std::ostringstream csv;
    try {
      result.evaluation = evaluate_model(model, test, cfg.block_rule, &csv);
    } catch (const NumericError& e) {
      throw NumericError("experiment (" + std::to_string(size) + " per action): " + e.what());
    }
    result.decode_csv = csv.str();
    for (const auto& [dof, ops] : model.dofs) {
      result.overlap[dof] = ops.overlap;
      result.p_zero_min_eigenvalue[dof] = min_eigenvalue(ops.p_zero);
    }
    report.results.push_back(std::move(result));
  }
  return report;
}

namespace {

std::string fixed(double v, int digits = 4) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

std::string block_list(const std::vector<std::size_t>& blocks) {
  std::string s;
  for (std::size_t i = 0; i < blocks.size(); ++i) s += (i ? " " : "") + std::to_string(blocks[i]);
  return s.empty() ? "-" : s;
}

}  // namespace

std::string format_evaluation_text(const Evaluation& eval) {
  std::ostringstream os;
  os << "windows " << eval.n_windows << ", blocks " << eval.n_blocks << '\n';
  for (Dof d : eval.dofs) {
    os << "  " << to_string(d) << "  R2 " << fixed(eval.r_squared.at(d)) << "  block errors "
       << eval.errors.per_dof.at(d) << '\n';
  }
  os << "  global R2 " << fixed(eval.r_squared_global) << '\n'
     << "  misclassified blocks " << eval.errors.misclassified_blocks.size() << " of "
     << eval.n_blocks << " (all DOFs wrong in " << eval.errors.all_dofs_wrong << "): "
     << block_list(eval.errors.misclassified_blocks) << '\n'
     << "  windows with negative zero expectation " << eval.negative_zero_windows
     << ", clamped angle estimates " << eval.clamped_windows << '\n';
  return os.str();
}

std::string format_report_text(const ExperimentReport& report) {
  std::ostringstream os;
  os << "qmyo experiment report\n"
     << "config hash " << report.config_hash << '\n'
     << "seed " << report.seed << '\n'
     << "training rows " << report.n_train_rows << ", test rows " << report.n_test_rows
     << ", return-phase training rows ignored " << report.skipped_return_phase << '\n';
  for (const SizeResult& r : report.results) {
    os << '\n' << r.per_action << " samples per action\n" << format_evaluation_text(r.evaluation);
    for (const auto& [dof, overlap] : r.overlap) {
      os << "  " << to_string(dof) << " overlap " << fixed(overlap, 6) << ", p_zero min eigenvalue "
         << fixed(r.p_zero_min_eigenvalue.at(dof), 6) << '\n';
    }
  }
  return os.str();
}

std::string format_report_csv(const ExperimentReport& report) {
  std::ostringstream os;
  os << "config_hash,seed,per_action,dof,r2,global_r2,block_errors,misclassified_blocks,"
        "total_blocks,overlap,p_zero_min_eigenvalue,misclassified_block_ids\n";
  for (const SizeResult& r : report.results) {
    const Evaluation& e = r.evaluation;
    for (Dof d : e.dofs) {
      os << report.config_hash << ',' << report.seed << ',' << r.per_action << ','
         << to_string(d) << ',' << format_number(e.r_squared.at(d)) << ','
         << format_number(e.r_squared_global) << ',' << e.errors.per_dof.at(d) << ','
         << e.errors.misclassified_blocks.size() << ',' << e.n_blocks << ','
         << format_number(r.overlap.at(d)) << ',' << format_number(r.p_zero_min_eigenvalue.at(d))
         << ',' << block_list(e.errors.misclassified_blocks) << '\n';
    }
  }
  return os.str();
}

}  // namespace qmyo
