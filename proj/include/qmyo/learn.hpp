#pragma once

#include "qmyo/encode.hpp"
#include "qmyo/errors.hpp"
#include "qmyo/fwd.hpp"

#include <map>
#include <optional>
#include <span>
#include <vector>

namespace qmyo {

/// Single-DOF labelled feature window. The angle is a positive magnitude in
/// degrees; the sign lives in `direction`.
struct TrainingSample {
  FeatureVector features;
  Dof dof = Dof::D1;
  Direction direction = Direction::Positive;
  double angle = 0.0;
  MovementPhase phase = MovementPhase::Direct;
};

/// Measurement-operator triple for one DOF.
struct DofOperators {
  QuantumState proto_pos;
  QuantumState proto_neg;
  MatXd p_pos;
  MatXd p_neg;
  MatXd p_zero;
  double theta_pos_max = 0.0;
  double theta_neg_max = 0.0;
  /// Tr(p_pos * p_neg) == <proto_pos|proto_neg>^2
  double overlap = 0.0;

  double theta_max(Direction d) const {
    return d == Direction::Negative ? theta_neg_max : theta_pos_max;
  }
};

/// Thresholds used when turning expectation values into joint commands.
struct DecodeConfig {
  /// |f - e| at or below this is rest.
  double rest_threshold = 0.05;
  /// Operators with overlap >= 1 - overlap_epsilon cannot be decoded.
  double overlap_epsilon = 1e-6;
  /// Clamp angle estimates to [0, theta_max].
  bool clamp_angles = true;
};

struct ControllerModel {
  Eigen::Index n_channels = 0;
  std::map<Dof, DofOperators> dofs;
  DecodeConfig decode_config;
};

/// Bookkeeping from a training run.
struct TrainingSummary {
  std::size_t used = 0;
  std::size_t skipped_return_phase = 0;
  std::size_t skipped_other_dof = 0;
  /// All-zero feature windows carry no direction and are left out.
  std::size_t skipped_zero_signal = 0;
};

template <typename DerivedA, typename DerivedB>
Mat<typename DerivedA::Scalar> outer_product(const Eigen::MatrixBase<DerivedA>& a,
                                             const Eigen::MatrixBase<DerivedB>& b) {
  return a * b.transpose();
}

/// Angle-weighted superposition of encoded samples, renormalized. All
/// samples must share one DOF and one direction.
QuantumState build_prototype(std::span<const TrainingSample> samples);

/// |p><p|
MatXd build_direction_operator(const QuantumState& prototype);

/// I - p_pos - p_neg
MatXd build_completeness_operator(const MatXd& p_pos, const MatXd& p_neg);

/// Smallest eigenvalue of p_zero. Negative whenever the two direction
/// projectors overlap, in which case the triple is not a positive POVM.
double min_eigenvalue(const MatXd& symmetric);

DofOperators train_dof(std::span<const TrainingSample> samples, Dof dof,
                       Eigen::Index n_channels);

/// Trains one operator triple per requested DOF. Return-phase and all-zero
/// samples are ignored and counted in `summary`.
ControllerModel train(std::span<const TrainingSample> samples, Eigen::Index n_channels,
                      std::span<const Dof> dofs, const DecodeConfig& cfg = {},
                      TrainingSummary* summary = nullptr);

/// Keeps the first `per_action` direct-phase samples of every (DOF,
/// direction) pair, preserving order.
std::vector<TrainingSample> take_per_action(std::span<const TrainingSample> samples,
                                            std::size_t per_action);

/// Available direct-phase samples for the scarcest (DOF, direction) pair
/// among `dofs`.
std::size_t min_per_action(std::span<const TrainingSample> samples, std::span<const Dof> dofs);

struct OverlapCurve {
  std::vector<std::size_t> batch_sizes;
  std::map<Dof, std::vector<double>> overlap;
};

/// Retrains on the first n samples per action for each n in `batch_sizes`
/// and records each DOF's overlap.
OverlapCurve overlap_curve(std::span<const TrainingSample> samples,
                           std::span<const std::size_t> batch_sizes, Eigen::Index n_channels,
                           std::span<const Dof> dofs);

/// Throws DegenerateOperatorsError if any DOF's overlap is too close to 1.
void validate_model(const ControllerModel& model);

}  // namespace qmyo
