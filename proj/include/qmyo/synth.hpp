#pragma once

#include "qmyo/fwd.hpp"
#include "qmyo/learn.hpp"
#include "qmyo/signal.hpp"

#include <array>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace qmyo {

using Rng = std::mt19937_64;
using DofAngles = std::array<double, kMaxDofs>;

/// Linear generative model: feature = mixing * activation + noise.
/// Columns are ordered D1+, D1-, D2+, D2-, D3+, D3- (feature units per degree).
struct MixingModel {
  MatXd mixing;
  double noise_sigma = 0.0;
  std::uint64_t seed = 0;

  Eigen::Index n_channels() const { return mixing.rows(); }
  static Eigen::Index column(Dof d, Direction dir) {
    return 2 * static_cast<Eigen::Index>(index_of(d)) + (dir == Direction::Negative ? 1 : 0);
  }
  /// Throws std::invalid_argument when the invariants do not hold.
  void validate() const;
};

/// 8 channels with a dominant channel pair per direction. Pronation and
/// supination columns have half the gain of the others and share channels
/// with flexion and extension, so D3 is masked by D1.
MixingModel default_mixing_model(double noise_sigma = 4.0, std::uint64_t seed = 1);

/// 8 channels, disjoint dominant channel pairs for D1 and D3 directions,
/// equal gains. Per-DOF prototype overlap is well below 0.3.
MixingModel separable_mixing_model(double noise_sigma = 0.0, std::uint64_t seed = 1);

/// Activation vector (length 6) for signed per-DOF angles.
VecXd activation(const DofAngles& signed_angles);

struct GeneratedWindow {
  VecXd features;
  DofAngles angles{};
};

/// Draws `count` feature windows at fixed signed angles. Negative feature
/// values are clipped to 0 and counted in `clipped`.
std::vector<GeneratedWindow> generate_features(const MixingModel& model,
                                               const DofAngles& signed_angles,
                                               std::size_t count, Rng& rng,
                                               std::size_t* clipped = nullptr);

struct AngleRange {
  double min = 5.0;
  double max = 60.0;
};

struct TrainingSet {
  std::vector<TrainingSample> samples;
  std::size_t clipped = 0;
};

/// Single-DOF activations, `per_action_count` per (DOF, direction), angles
/// uniform in `range`. Seeded by model.seed.
TrainingSet generate_training_set(const MixingModel& model, std::size_t per_action_count,
                                  AngleRange range, std::span<const Dof> dofs);

/// Linear ramp of signed angles from `start` to `end` over `windows` windows.
struct ScenarioBlock {
  DofAngles start{};
  DofAngles end{};
  std::size_t windows = 0;
};

struct SyntheticScenario {
  std::vector<ScenarioBlock> blocks;

  std::size_t total_windows() const;
};

struct ScenarioShape {
  std::size_t n_blocks = 55;
  std::size_t total_windows = 8216;
  /// Active-DOF target magnitude is drawn uniformly from this fraction of the
  /// per-direction maximum.
  double min_fraction = 0.25;
  double max_fraction = 1.0;
  /// Each block ramps from ramp_start * target to target.
  double ramp_start = 0.8;
};

/// Every block activates all of `dofs` simultaneously; the sign pattern
/// cycles through all combinations. Windows are split as evenly as possible.
SyntheticScenario standard_scenario(std::span<const Dof> dofs, double theta_max,
                                 std::uint64_t seed, const ScenarioShape& shape = {});

struct TestSet {
  std::vector<VecXd> features;
  /// rows = windows, columns D1, D2, D3 (signed degrees)
  MatXd truth;
  std::vector<int> block_ids;
  std::size_t clipped = 0;
};

/// Each block draws from its own substream derived from (model.seed, block).
TestSet generate_test_scenario(const MixingModel& model, const SyntheticScenario& scenario);

/// Band-limited noise whose per-channel envelope follows the mixing model.
/// The mean absolute value of channel c over a window is approximately
/// feature(c). Used to drive the signal module end to end.
EmgRecording generate_raw_emg(const MixingModel& model, std::span<const DofAngles> window_angles,
                              Eigen::Index samples_per_window, double sample_rate, Rng& rng);

}  // namespace qmyo
