// Command-line front end: synth, extract, train, decode, evaluate,
// experiment, learning-curve, inspect-model.

#include "qmyo/config.hpp"
#include "qmyo/dataset.hpp"
#include "qmyo/decode.hpp"
#include "qmyo/experiment.hpp"
#include "qmyo/model_io.hpp"
#include "qmyo/synth.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace {

using namespace qmyo;

/// Options shared by every subcommand that reads an ExperimentConfig.
struct ConfigOptions {
  std::string file;
  std::vector<std::string> settings;
  std::string seed;
  std::string dofs;
  std::string rest_threshold;
  std::string noise;
  std::string sizes;

  void attach(CLI::App* app) {
    app->add_option("--config", file, "Flat key = value config file")->check(CLI::ExistingFile);
    app->add_option("--set", settings, "Override a config key (key=value), repeatable");
    app->add_option("--seed", seed, "Random seed");
    app->add_option("--dofs", dofs, "Comma-separated DOFs, e.g. D1,D3");
    app->add_option("--rest-threshold", rest_threshold, "Rest dead zone on |f - e|");
    app->add_option("--noise", noise, "Synthetic feature noise sigma");
    app->add_option("--sizes", sizes, "Comma-separated training sizes per action");
  }

  ExperimentConfig resolve() const {
    ExperimentConfig cfg;
    if (!file.empty()) apply_config_file(cfg, file);
    try {
      for (const auto& s : settings) {
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw UsageError("--set expects key=value, got '" + s + "'");
        apply_setting(cfg, s.substr(0, eq), s.substr(eq + 1));
      }
      if (!seed.empty()) apply_setting(cfg, "seed", seed);
      if (!dofs.empty()) apply_setting(cfg, "dofs", dofs);
      if (!rest_threshold.empty()) apply_setting(cfg, "rest_threshold", rest_threshold);
      if (!noise.empty()) apply_setting(cfg, "noise_sigma", noise);
      if (!sizes.empty()) apply_setting(cfg, "training_sizes", sizes);
    } catch (const ConfigError& e) {
      throw UsageError(e.what());
    }
    cfg.validate();
    return cfg;
  }
};

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path);
  out << text;
}

void report_dataset(const FeatureDataset& ds) {
  std::cerr << ds.source << ": " << ds.rows.size() << " rows (" << ds.count(MovementPhase::Direct)
            << " direct, " << ds.count(MovementPhase::Return) << " return)\n";
  for (const auto& w : ds.warnings) std::cerr << "warning: " << w << '\n';
}

MixingModel mixing_by_name(const std::string& name, double noise, std::uint64_t seed) {
  if (name == "default") return default_mixing_model(noise, seed);
  if (name == "separable") return separable_mixing_model(noise, seed);
  throw UsageError("unknown mixing model '" + name + "' (default, separable)");
}

int run(int argc, char** argv) {
  CLI::App app{"Quantum-inspired simultaneous proportional myoelectric control"};
  app.require_subcommand(1);

  // synth
  ConfigOptions synth_cfg;
  std::string synth_train = "train.csv", synth_test = "test.csv", synth_mixing = "default";
  std::string synth_raw;
  std::size_t synth_per_action = 0, synth_raw_blocks = 1;
  auto* synth = app.add_subcommand("synth", "Generate synthetic training and test feature data");
  synth_cfg.attach(synth);
  synth->add_option("--train-out", synth_train, "Training dataset CSV");
  synth->add_option("--test-out", synth_test, "Test dataset CSV");
  synth->add_option("--per-action", synth_per_action,
                    "Training samples per action (default: largest training size)");
  synth->add_option("--mixing", synth_mixing, "Mixing model: default or separable");
  synth->add_option("--raw-out", synth_raw, "Also write raw EMG for the first test blocks");
  synth->add_option("--raw-blocks", synth_raw_blocks, "Number of test blocks in --raw-out");

  // extract
  ConfigOptions extract_cfg;
  std::string extract_in, extract_out = "-", extract_kind = "MAV";
  double extract_step = 0.0;
  auto* extract = app.add_subcommand("extract", "Window a raw EMG CSV and extract features");
  extract_cfg.attach(extract);
  extract->add_option("--input", extract_in, "Raw EMG CSV (header ch1..chN)")->required()->check(CLI::ExistingFile);
  extract->add_option("--out", extract_out, "Feature dataset CSV");
  extract->add_option("--feature", extract_kind, "MAV, ZC, SSC or WL");
  extract->add_option("--step-ms", extract_step, "Window step (default: window length)");

  // train
  ConfigOptions train_cfg;
  std::string train_data, train_out = "model.json";
  std::size_t train_per_action = 0;
  auto* train_cmd = app.add_subcommand("train", "Learn measurement operators from single-DOF data");
  train_cfg.attach(train_cmd);
  train_cmd->add_option("--data", train_data, "Training dataset CSV")->required()->check(CLI::ExistingFile);
  train_cmd->add_option("--out", train_out, "Model file");
  train_cmd->add_option("--per-action", train_per_action, "Use the first N samples per action (0 = all)");

  // decode
  std::string decode_model, decode_data, decode_out = "-";
  auto* decode_cmd = app.add_subcommand("decode", "Decode a feature dataset window by window");
  decode_cmd->add_option("--model", decode_model, "Model file")->required()->check(CLI::ExistingFile);
  decode_cmd->add_option("--data", decode_data, "Feature dataset CSV")->required()->check(CLI::ExistingFile);
  decode_cmd->add_option("--out", decode_out, "Decode CSV");

  // evaluate
  std::string eval_model, eval_data, eval_report = "-", eval_decode, eval_rule = "majority";
  auto* eval_cmd = app.add_subcommand("evaluate", "Score a model against labelled test data");
  eval_cmd->add_option("--model", eval_model, "Model file")->required()->check(CLI::ExistingFile);
  eval_cmd->add_option("--data", eval_data, "Test dataset CSV")->required()->check(CLI::ExistingFile);
  eval_cmd->add_option("--report", eval_report, "Text report");
  eval_cmd->add_option("--decode-out", eval_decode, "Per-window decode CSV");
  eval_cmd->add_option("--block-rule", eval_rule, "majority, any or all");

  // experiment
  ConfigOptions exp_cfg;
  std::string exp_train, exp_test, exp_report = "-", exp_csv, exp_decode_prefix;
  auto* exp_cmd = app.add_subcommand("experiment", "Train at each training size and evaluate");
  exp_cfg.attach(exp_cmd);
  exp_cmd->add_option("--train", exp_train, "Training dataset CSV")->required()->check(CLI::ExistingFile);
  exp_cmd->add_option("--test", exp_test, "Test dataset CSV")->required()->check(CLI::ExistingFile);
  exp_cmd->add_option("--report", exp_report, "Text report");
  exp_cmd->add_option("--csv", exp_csv, "CSV summary");
  exp_cmd->add_option("--decode-prefix", exp_decode_prefix,
                      "Write <prefix><size>.csv decode output per training size");

  // learning-curve
  ConfigOptions lc_cfg;
  std::string lc_data, lc_out = "-";
  auto* lc_cmd = app.add_subcommand("learning-curve", "Prototype overlap against training size");
  lc_cfg.attach(lc_cmd);
  lc_cmd->add_option("--data", lc_data, "Training dataset CSV")->required()->check(CLI::ExistingFile);
  lc_cmd->add_option("--out", lc_out, "CSV output");

  // inspect-model
  std::string inspect_model;
  auto* inspect_cmd = app.add_subcommand("inspect-model", "Print operator spectra and overlaps");
  inspect_cmd->add_option("--model", inspect_model, "Model file")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(ExitCode::Usage);
  }

  if (*synth) {
    const ExperimentConfig cfg = synth_cfg.resolve();
    const std::size_t per_action =
        synth_per_action > 0
            ? synth_per_action
            : *std::max_element(cfg.training_sizes.begin(), cfg.training_sizes.end());
    MixingModel mixing = mixing_by_name(synth_mixing, cfg.noise_sigma, cfg.seed);
    mixing.validate();
    const auto training = generate_training_set(mixing, per_action, {cfg.angle_min, cfg.angle_max}, cfg.dofs);
    const auto scenario = standard_scenario(cfg.dofs, cfg.angle_max, cfg.seed);
    const auto test = generate_test_scenario(mixing, scenario);
    save_feature_dataset(synth_train, from_training_set(training, mixing.n_channels()));
    save_feature_dataset(synth_test, from_test_set(test, mixing.n_channels()));
    std::cerr << "wrote " << training.samples.size() << " training rows to " << synth_train << ", "
              << test.features.size() << " test rows in " << scenario.blocks.size() << " blocks to "
              << synth_test << " (clipped features: " << training.clipped + test.clipped << ")\n";
    if (!synth_raw.empty()) {
      std::vector<DofAngles> angles;
      std::size_t rows = 0;
      for (std::size_t b = 0; b < std::min(synth_raw_blocks, scenario.blocks.size()); ++b) {
        rows += scenario.blocks[b].windows;
      }
      for (std::size_t i = 0; i < rows; ++i) {
        DofAngles a{};
        for (std::size_t k = 0; k < kMaxDofs; ++k) a[k] = test.truth(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
        angles.push_back(a);
      }
      Rng rng(cfg.seed);
      const auto rec = generate_raw_emg(mixing, angles, rows_for_duration(cfg.window_ms, cfg.sample_rate),
                                        cfg.sample_rate, rng);
      write_emg_csv(synth_raw, rec);
      std::cerr << "wrote " << rec.n_samples() << " raw samples to " << synth_raw << '\n';
    }
    return 0;
  }

  if (*extract) {
    const ExperimentConfig cfg = extract_cfg.resolve();
    const auto rec = read_emg_csv(extract_in, cfg.sample_rate);
    const double step = extract_step > 0.0 ? extract_step : cfg.window_ms;
    const auto ds = features_from_recording(rec, cfg.window_ms, step,
                                            parse_feature_kind(extract_kind), cfg.deadband);
    std::ostringstream os;
    write_feature_dataset(os, ds);
    write_text(extract_out, os.str());
    std::cerr << "extracted " << ds.rows.size() << " windows of "
              << rows_for_duration(cfg.window_ms, cfg.sample_rate) << " samples\n";
    return 0;
  }

  if (*train_cmd) {
    const ExperimentConfig cfg = train_cfg.resolve();
    const auto ds = load_feature_dataset(train_data);
    report_dataset(ds);
    std::size_t rest_rows = 0;
    auto samples = to_training_samples(ds, &rest_rows);
    if (train_per_action > 0) {
      const std::size_t available = min_per_action(samples, cfg.dofs);
      if (train_per_action > available) {
        throw ConfigError("train: " + std::to_string(train_per_action) +
                          " samples per action requested, " + std::to_string(available) + " available");
      }
      samples = take_per_action(samples, train_per_action);
    }
    TrainingSummary summary;
    const auto model = train(samples, ds.n_channels, cfg.dofs, cfg.decode, &summary);
    validate_model(model);
    save_model(train_out, model);
    std::cerr << "trained on " << summary.used << " samples (" << summary.skipped_return_phase
              << " return-phase, " << summary.skipped_zero_signal << " all-zero and " << rest_rows
              << " rest rows ignored); model written to "
              << train_out << '\n';
    return 0;
  }

  if (*decode_cmd) {
    const auto model = load_model(decode_model);
    validate_model(model);
    const auto ds = load_feature_dataset(decode_data);
    if (ds.n_channels != model.n_channels) {
      throw DimensionError("decode: data has " + std::to_string(ds.n_channels) +
                           " channels, model expects " + std::to_string(model.n_channels));
    }
    std::ostringstream os;
    write_decode_csv_header(os, model);
    for (std::size_t i = 0; i < ds.rows.size(); ++i) {
      write_decode_csv_row(os, i, decode_features(ds.rows[i].features, model), model);
    }
    write_text(decode_out, os.str());
    return 0;
  }

  if (*eval_cmd) {
    const auto model = load_model(eval_model);
    const auto ds = load_feature_dataset(eval_data);
    report_dataset(ds);
    std::ostringstream decoded;
    const auto eval = evaluate_model(model, ds, parse_block_rule(eval_rule),
                                     eval_decode.empty() ? nullptr : &decoded);
    if (!eval_decode.empty()) write_text(eval_decode, decoded.str());
    write_text(eval_report, format_evaluation_text(eval));
    return 0;
  }

  if (*exp_cmd) {
    const ExperimentConfig cfg = exp_cfg.resolve();
    const auto train_ds = load_feature_dataset(exp_train);
    const auto test_ds = load_feature_dataset(exp_test);
    report_dataset(train_ds);
    report_dataset(test_ds);
    const auto report = run_experiment(cfg, train_ds, test_ds);
    write_text(exp_report, format_report_text(report));
    if (!exp_csv.empty()) write_text(exp_csv, format_report_csv(report));
    if (!exp_decode_prefix.empty()) {
      for (const auto& r : report.results) {
        write_text(exp_decode_prefix + std::to_string(r.per_action) + ".csv", r.decode_csv);
      }
    }
    return 0;
  }

  if (*lc_cmd) {
    const ExperimentConfig cfg = lc_cfg.resolve();
    const auto ds = load_feature_dataset(lc_data);
    const auto samples = to_training_samples(ds);
    std::vector<std::size_t> sizes = cfg.training_sizes;
    if (lc_cfg.sizes.empty()) {
      // default: doubling batches up to everything available
      sizes.clear();
      const std::size_t available = min_per_action(samples, cfg.dofs);
      for (std::size_t s = 10; s < available; s *= 2) sizes.push_back(s);
      if (available > 0) sizes.push_back(available);
    }
    const auto curve = overlap_curve(samples, sizes, ds.n_channels, cfg.dofs);
    std::ostringstream os;
    os << "per_action";
    for (const auto& [dof, values] : curve.overlap) os << ",overlap_" << to_string(dof);
    os << '\n';
    for (std::size_t i = 0; i < curve.batch_sizes.size(); ++i) {
      os << curve.batch_sizes[i];
      for (const auto& [dof, values] : curve.overlap) os << ',' << format_number(values[i]);
      os << '\n';
    }
    write_text(lc_out, os.str());
    return 0;
  }

  if (*inspect_cmd) {
    const auto model = load_model(inspect_model);
    std::ostringstream os;
    os << std::setprecision(6);
    os << "channels " << model.n_channels << ", rest threshold " << model.decode_config.rest_threshold
       << ", overlap epsilon " << model.decode_config.overlap_epsilon << '\n';
    for (const auto& [dof, ops] : model.dofs) {
      Eigen::SelfAdjointEigenSolver<MatXd> es(ops.p_zero, Eigen::EigenvaluesOnly);
      os << to_string(dof) << ": theta_pos_max " << ops.theta_pos_max << ", theta_neg_max "
         << ops.theta_neg_max << ", overlap " << ops.overlap << '\n'
         << "  p_zero spectrum";
      for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) os << ' ' << es.eigenvalues()(i);
      const double lowest = es.eigenvalues().minCoeff();
      os << "\n  p_zero min eigenvalue " << lowest
         << (lowest < -1e-12 ? "  (negative: triple is not a positive POVM)" : "") << '\n';
    }
    std::cout << os.str();
    return 0;
  }
  return static_cast<int>(ExitCode::Usage);
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const qmyo::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(e.exit_code());
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(qmyo::ExitCode::Usage);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(qmyo::ExitCode::Data);
  }
}
