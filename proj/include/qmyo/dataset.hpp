#pragma once

#include "qmyo/learn.hpp"
#include "qmyo/signal.hpp"
#include "qmyo/synth.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace qmyo {

/// One data string: per-channel features plus signed ground-truth angles.
struct DatasetRow {
  VecXd features;
  DofAngles angles{};
  MovementPhase phase = MovementPhase::Direct;
  int block = 0;
};

/// CSV columns: ch1..chN, d1_angle, d2_angle, d3_angle, phase, block.
/// Angle columns may be omitted (read as 0); phase defaults to direct and
/// block to 0.
struct FeatureDataset {
  Eigen::Index n_channels = 0;
  FeatureKind kind = FeatureKind::MAV;
  std::string source;
  std::vector<DatasetRow> rows;
  std::vector<std::string> warnings;

  std::size_t count(MovementPhase p) const;
};

FeatureDataset read_feature_dataset(std::istream& is, const std::string& source = "<stream>");
FeatureDataset load_feature_dataset(const std::filesystem::path& path);

void write_feature_dataset(std::ostream& os, const FeatureDataset& ds);
void save_feature_dataset(const std::filesystem::path& path, const FeatureDataset& ds);

/// Rows with one nonzero angle become samples. All-zero rows are skipped and
/// counted in `rest_rows`; rows with several active DOFs are rejected.
std::vector<TrainingSample> to_training_samples(const FeatureDataset& ds,
                                                std::size_t* rest_rows = nullptr);

FeatureDataset from_training_set(const TrainingSet& set, Eigen::Index n_channels);
FeatureDataset from_test_set(const TestSet& set, Eigen::Index n_channels);

/// Every window of a recording reduced to one feature row.
FeatureDataset features_from_recording(const EmgRecording& rec, double window_ms,
                                       double step_ms, FeatureKind kind,
                                       double deadband = 0.0);

std::string format_number(double v);

}  // namespace qmyo
