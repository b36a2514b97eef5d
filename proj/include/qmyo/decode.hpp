#pragma once

#include "qmyo/encode.hpp"
#include "qmyo/learn.hpp"

#include <array>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>

namespace qmyo {

template <typename DerivedV, typename DerivedM>
typename DerivedV::Scalar quadratic_form(const Eigen::MatrixBase<DerivedV>& psi,
                                         const Eigen::MatrixBase<DerivedM>& op) {
  return psi.dot(op * psi);
}

/// <psi|P|psi>
double expectation(const QuantumState& state, const MatXd& op);

struct DofDecision {
  double expectation_pos = 0.0;
  double expectation_neg = 0.0;
  double expectation_zero = 0.0;
  Direction direction = Direction::Rest;
  /// Non-negative magnitude in degrees.
  double angle_estimate = 0.0;
  /// Angle before clamping to [0, theta_max].
  double raw_angle = 0.0;
  bool angle_clamped = false;
  /// expectation_zero < 0: the completeness operator is not positive.
  bool negative_zero = false;

  double signed_angle() const {
    return static_cast<double>(static_cast<int>(direction)) * angle_estimate;
  }
};

DofDecision decode_dof(const QuantumState& state, const DofOperators& ops,
                       const DecodeConfig& cfg);

/// Solves z1 = d2 + d3, z2 = d1 + d3, z3 = d1 + d2.
std::array<double, 3> residual_activations(double z1, double z2, double z3);

struct DecodedAction {
  std::map<Dof, DofDecision> per_dof;
  /// Present only for 3-DOF models.
  std::optional<std::array<double, 3>> residual_activations;
  bool zero_signal = false;
  /// Zero expectations raised to 0 before entering the residual system.
  std::array<bool, 3> residual_input_clamped{false, false, false};
  std::string note;

  double signed_angle(Dof d) const {
    auto it = per_dof.find(d);
    return it == per_dof.end() ? 0.0 : it->second.signed_angle();
  }
};

DecodedAction decode(const QuantumState& state, const ControllerModel& model);

/// Encodes then decodes; an all-zero feature vector decodes to all-rest.
DecodedAction decode_features(const VecXd& features, const ControllerModel& model);

/// One CSV row per window: index, per-DOF f/e/z/direction/angle/flags,
/// residual activations.
void write_decode_csv_header(std::ostream& os, const ControllerModel& model);
void write_decode_csv_row(std::ostream& os, std::size_t window_index,
                          const DecodedAction& action, const ControllerModel& model);

}  // namespace qmyo
