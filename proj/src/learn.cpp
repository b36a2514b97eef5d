#include "qmyo/learn.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace qmyo {

namespace {

std::string action_name(Dof dof, Direction dir) {
  return std::string(to_string(dof)) + " " + std::string(to_string(dir));
}

std::vector<TrainingSample> select(std::span<const TrainingSample> samples, Dof dof,
                                   Direction dir) {
  std::vector<TrainingSample> out;
  for (const auto& s : samples) {
    if (s.dof == dof && s.direction == dir && s.phase == MovementPhase::Direct &&
        !s.features.values.isZero(0.0)) {
      out.push_back(s);
    }
  }
  return out;
}

}  // namespace

QuantumState build_prototype(std::span<const TrainingSample> samples) {
  if (samples.empty()) throw InsufficientTrainingError("build_prototype: no samples");
  const Dof dof = samples.front().dof;
  const Direction dir = samples.front().direction;
  const Eigen::Index n = samples.front().features.values.size();

  double angle_sum = 0.0;
  for (const auto& s : samples) {
    if (s.dof != dof || s.direction != dir) {
      throw std::invalid_argument("build_prototype: samples mix DOFs or directions");
    }
    if (!(s.angle > 0.0)) throw std::invalid_argument("build_prototype: angles must be > 0");
    if (s.features.values.size() != n) {
      throw DimensionError("build_prototype: inconsistent feature dimension");
    }
    angle_sum += s.angle;
  }

  VecXd sum = VecXd::Zero(n);
  for (const auto& s : samples) {
    sum += (s.angle / angle_sum) * encode(s.features).amplitudes();
  }
  if (sum.norm() < 1e-12) {
    throw DegeneratePrototypeError("build_prototype: weighted superposition for " +
                                   action_name(dof, dir) + " cancels to zero");
  }
  return QuantumState::from_unit(sum / sum.norm());
}

MatXd build_direction_operator(const QuantumState& prototype) {
  return outer_product(prototype.amplitudes(), prototype.amplitudes());
}

MatXd build_completeness_operator(const MatXd& p_pos, const MatXd& p_neg) {
  if (p_pos.rows() != p_neg.rows() || p_pos.cols() != p_neg.cols()) {
    throw DimensionError("build_completeness_operator: operator shapes differ");
  }
  return MatXd::Identity(p_pos.rows(), p_pos.cols()) - p_pos - p_neg;
}

double min_eigenvalue(const MatXd& symmetric) {
  Eigen::SelfAdjointEigenSolver<MatXd> es(symmetric, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

DofOperators train_dof(std::span<const TrainingSample> samples, Dof dof,
                       Eigen::Index n_channels) {
  DofOperators ops;
  const auto pos = select(samples, dof, Direction::Positive);
  const auto neg = select(samples, dof, Direction::Negative);
  if (pos.empty()) {
    throw InsufficientTrainingError("train: no direct-phase samples for " +
                                    action_name(dof, Direction::Positive));
  }
  if (neg.empty()) {
    throw InsufficientTrainingError("train: no direct-phase samples for " +
                                    action_name(dof, Direction::Negative));
  }
  for (const auto* group : {&pos, &neg}) {
    for (const auto& s : *group) {
      if (s.features.values.size() != n_channels) {
        throw DimensionError("train: sample has " + std::to_string(s.features.values.size()) +
                             " channels, model expects " + std::to_string(n_channels));
      }
    }
  }

  ops.proto_pos = build_prototype(pos);
  ops.proto_neg = build_prototype(neg);
  ops.p_pos = build_direction_operator(ops.proto_pos);
  ops.p_neg = build_direction_operator(ops.proto_neg);
  ops.p_zero = build_completeness_operator(ops.p_pos, ops.p_neg);

  auto max_angle = [](const std::vector<TrainingSample>& v) {
    double m = 0.0;
    for (const auto& s : v) m = std::max(m, s.angle);
    return m;
  };
  ops.theta_pos_max = max_angle(pos);
  ops.theta_neg_max = max_angle(neg);

  const double c = inner_product(ops.proto_pos, ops.proto_neg);
  ops.overlap = c * c;
  return ops;
}

ControllerModel train(std::span<const TrainingSample> samples, Eigen::Index n_channels,
                      std::span<const Dof> dofs, const DecodeConfig& cfg,
                      TrainingSummary* summary) {
  if (n_channels < 1) throw DimensionError("train: n_channels must be >= 1");
  if (dofs.empty()) throw std::invalid_argument("train: no DOFs requested");

  ControllerModel model;
  model.n_channels = n_channels;
  model.decode_config = cfg;
  for (Dof d : dofs) model.dofs.emplace(d, train_dof(samples, d, n_channels));

  if (summary) {
    *summary = {};
    for (const auto& s : samples) {
      const bool wanted = std::find(dofs.begin(), dofs.end(), s.dof) != dofs.end();
      if (!wanted) {
        ++summary->skipped_other_dof;
      } else if (s.phase == MovementPhase::Return) {
        ++summary->skipped_return_phase;
      } else if (s.features.values.isZero(0.0)) {
        ++summary->skipped_zero_signal;
      } else {
        ++summary->used;
      }
    }
  }
  return model;
}

std::vector<TrainingSample> take_per_action(std::span<const TrainingSample> samples,
                                            std::size_t per_action) {
  std::map<std::pair<Dof, Direction>, std::size_t> taken;
  std::vector<TrainingSample> out;
  for (const auto& s : samples) {
    if (s.phase != MovementPhase::Direct) continue;
    auto& n = taken[{s.dof, s.direction}];
    if (n < per_action) {
      out.push_back(s);
      ++n;
    }
  }
  return out;
}

std::size_t min_per_action(std::span<const TrainingSample> samples, std::span<const Dof> dofs) {
  std::map<std::pair<Dof, Direction>, std::size_t> counts;
  for (const auto& s : samples) {
    if (s.phase == MovementPhase::Direct) ++counts[{s.dof, s.direction}];
  }
  std::size_t m = std::numeric_limits<std::size_t>::max();
  for (Dof d : dofs) {
    for (Direction dir : {Direction::Positive, Direction::Negative}) {
      m = std::min(m, counts[{d, dir}]);
    }
  }
  return dofs.empty() ? 0 : m;
}

OverlapCurve overlap_curve(std::span<const TrainingSample> samples,
                           std::span<const std::size_t> batch_sizes, Eigen::Index n_channels,
                           std::span<const Dof> dofs) {
  const std::size_t available = min_per_action(samples, dofs);
  OverlapCurve curve;
  std::size_t previous = 0;
  for (std::size_t size : batch_sizes) {
    if (size == 0 || size <= previous) {
      throw ConfigError("overlap_curve: batch sizes must be positive and increasing");
    }
    if (size > available) {
      throw ConfigError("overlap_curve: batch size " + std::to_string(size) +
                        " exceeds the " + std::to_string(available) +
                        " samples available per action");
    }
    previous = size;
    const auto subset = take_per_action(samples, size);
    const auto model = train(subset, n_channels, dofs);
    curve.batch_sizes.push_back(size);
    for (const auto& [dof, ops] : model.dofs) curve.overlap[dof].push_back(ops.overlap);
  }
  return curve;
}

void validate_model(const ControllerModel& model) {
  const double limit = 1.0 - model.decode_config.overlap_epsilon;
  for (const auto& [dof, ops] : model.dofs) {
    if (!(ops.overlap < limit)) {
      throw DegenerateOperatorsError("model: " + std::string(to_string(dof)) +
                                     " prototypes overlap " + std::to_string(ops.overlap) +
                                     "; direction pair cannot be separated");
    }
  }
}

}  // namespace qmyo
