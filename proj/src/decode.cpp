#include "qmyo/decode.hpp"

#include "qmyo/dataset.hpp"

#include <cctype>
#include <ostream>
#include <string>
#include <utility>

namespace qmyo {

double expectation(const QuantumState& state, const MatXd& op) {
  if (op.rows() != state.dim() || op.cols() != state.dim()) {
    throw DimensionError("expectation: state has dimension " + std::to_string(state.dim()) +
                         ", operator is " + std::to_string(op.rows()) + "x" +
                         std::to_string(op.cols()));
  }
  return quadratic_form(state.amplitudes(), op);
}

DofDecision decode_dof(const QuantumState& state, const DofOperators& ops,
                       const DecodeConfig& cfg) {
  if (!(ops.overlap < 1.0 - cfg.overlap_epsilon)) {
    throw DegenerateOperatorsError("decode: prototype overlap " + std::to_string(ops.overlap) +
                                   " leaves no margin below 1");
  }
  DofDecision d;
  d.expectation_pos = expectation(state, ops.p_pos);
  d.expectation_neg = expectation(state, ops.p_neg);
  d.expectation_zero = expectation(state, ops.p_zero);
  d.negative_zero = d.expectation_zero < 0.0;

  const double diff = d.expectation_pos - d.expectation_neg;
  if (std::abs(diff) <= cfg.rest_threshold) {
    d.direction = Direction::Rest;
    return d;
  }
  d.direction = diff > 0.0 ? Direction::Positive : Direction::Negative;
  const double theta_max = ops.theta_max(d.direction);
  d.raw_angle = std::abs(diff) * theta_max / (1.0 - ops.overlap);
  d.angle_estimate = d.raw_angle;
  if (cfg.clamp_angles && d.raw_angle > theta_max) {
    d.angle_estimate = theta_max;
    d.angle_clamped = true;
  }
  return d;
}

namespace {

// Error-free transformation: a + b == s + e exactly.
std::pair<double, double> two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

// (a + b + c) / 2 with a single final rounding in practice.
double half_sum(double a, double b, double c) {
  const auto [s, e1] = two_sum(a, b);
  const auto [t, e2] = two_sum(s, c);
  return (t + (e1 + e2)) / 2.0;
}

}  // namespace

std::array<double, 3> residual_activations(double z1, double z2, double z3) {
  return {half_sum(-z1, z2, z3), half_sum(z1, -z2, z3), half_sum(z1, z2, -z3)};
}

DecodedAction decode(const QuantumState& state, const ControllerModel& model) {
  if (state.dim() != model.n_channels) {
    throw DimensionError("decode: state has " + std::to_string(state.dim()) +
                         " channels, model expects " + std::to_string(model.n_channels));
  }
  DecodedAction action;
  for (const auto& [dof, ops] : model.dofs) {
    action.per_dof.emplace(dof, decode_dof(state, ops, model.decode_config));
  }
  if (model.dofs.size() == kMaxDofs) {
    std::array<double, 3> z{};
    for (Dof d : kAllDofs) {
      z[index_of(d)] = action.per_dof.at(d).expectation_zero;
      if (z[index_of(d)] < 0.0) {
        z[index_of(d)] = 0.0;
        action.residual_input_clamped[index_of(d)] = true;
      }
    }
    action.residual_activations = residual_activations(z[0], z[1], z[2]);
  } else {
    action.note = "residual activations need all three DOFs";
  }
  return action;
}

DecodedAction decode_features(const VecXd& features, const ControllerModel& model) {
  if (features.size() != model.n_channels) {
    throw DimensionError("decode: window has " + std::to_string(features.size()) +
                         " channels, model expects " + std::to_string(model.n_channels));
  }
  if (features.isZero(0.0)) {
    DecodedAction rest;
    rest.zero_signal = true;
    for (const auto& [dof, ops] : model.dofs) {
      DofDecision d;
      d.expectation_zero = 1.0;
      rest.per_dof.emplace(dof, d);
    }
    rest.note = "zero signal";
    return rest;
  }
  return decode(encode(features), model);
}

namespace {

std::string lower_name(Dof d) {
  std::string s(to_string(d));
  s[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(s[0])));
  return s;
}

}  // namespace

void write_decode_csv_header(std::ostream& os, const ControllerModel& model) {
  os << "window";
  for (const auto& [dof, ops] : model.dofs) {
    const std::string p = lower_name(dof);
    os << ',' << p << "_f," << p << "_e," << p << "_z," << p << "_direction," << p
       << "_angle," << p << "_raw_angle," << p << "_clamped," << p << "_negative_z";
  }
  os << ",residual_d1,residual_d2,residual_d3,zero_signal\n";
}

void write_decode_csv_row(std::ostream& os, std::size_t window_index,
                          const DecodedAction& action, const ControllerModel& model) {
  os << window_index;
  for (const auto& [dof, ops] : model.dofs) {
    const DofDecision& d = action.per_dof.at(dof);
    os << ',' << format_number(d.expectation_pos) << ',' << format_number(d.expectation_neg)
       << ',' << format_number(d.expectation_zero) << ',' << to_string(d.direction) << ','
       << format_number(d.signed_angle()) << ',' << format_number(d.raw_angle) << ','
       << (d.angle_clamped ? 1 : 0) << ',' << (d.negative_zero ? 1 : 0);
  }
  for (std::size_t k = 0; k < 3; ++k) {
    os << ',';
    if (action.residual_activations) os << format_number((*action.residual_activations)[k]);
  }
  os << ',' << (action.zero_signal ? 1 : 0) << '\n';
}

}  // namespace qmyo
