#include "qmyo/synth.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qmyo {

void MixingModel::validate() const {
  if (mixing.cols() != 2 * static_cast<Eigen::Index>(kMaxDofs)) {
    throw std::invalid_argument("MixingModel: need one column per DOF direction (6)");
  }
  if (mixing.rows() < 1) throw std::invalid_argument("MixingModel: no channels");
  if ((mixing.array() < 0.0).any()) throw std::invalid_argument("MixingModel: negative gain");
  if (!(noise_sigma >= 0.0)) throw std::invalid_argument("MixingModel: noise_sigma < 0");
  bool any_independent = false;
  for (Eigen::Index c = 0; c < mixing.cols(); ++c) {
    if (!(mixing.col(c).maxCoeff() > 0.0)) {
      throw std::invalid_argument("MixingModel: column " + std::to_string(c) + " is zero");
    }
    const VecXd u = mixing.col(c).normalized();
    for (Eigen::Index k = 0; k < c; ++k) {
      if (std::abs(u.dot(mixing.col(k).normalized())) < 1.0 - 1e-12) any_independent = true;
    }
  }
  if (!any_independent) throw std::invalid_argument("MixingModel: all columns are parallel");
}

namespace {

enum class Stream : std::uint32_t { Training = 0x7a11, Scenario = 0x5ce7, TestBlock = 0x7e57 };

// Independent generator per purpose (and per block) derived from one seed.
Rng substream(std::uint64_t seed, Stream purpose, std::uint32_t index = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(purpose), index};
  return Rng(seq);
}

MatXd with_baseline(Eigen::Index n_channels, double baseline) {
  return MatXd::Constant(n_channels, 2 * static_cast<Eigen::Index>(kMaxDofs), baseline);
}

}  // namespace

MixingModel default_mixing_model(double noise_sigma, std::uint64_t seed) {
  MatXd m = with_baseline(8, 0.05);
  const auto col = [](Dof d, Direction dir) { return MixingModel::column(d, dir); };
  // flexion: anterior channels
  m(0, col(Dof::D1, Direction::Positive)) = 1.0;
  m(1, col(Dof::D1, Direction::Positive)) = 0.8;
  m(7, col(Dof::D1, Direction::Positive)) = 0.3;
  // extension: posterior channels
  m(4, col(Dof::D1, Direction::Negative)) = 1.0;
  m(5, col(Dof::D1, Direction::Negative)) = 0.8;
  m(3, col(Dof::D1, Direction::Negative)) = 0.3;
  // radial and ulnar deviation
  m(2, col(Dof::D2, Direction::Positive)) = 0.9;
  m(1, col(Dof::D2, Direction::Positive)) = 0.4;
  m(3, col(Dof::D2, Direction::Positive)) = 0.3;
  m(6, col(Dof::D2, Direction::Negative)) = 0.9;
  m(5, col(Dof::D2, Direction::Negative)) = 0.4;
  m(7, col(Dof::D2, Direction::Negative)) = 0.3;
  // pronation and supination: deep muscles, weak and spread over the
  // flexor/extensor channels
  m(2, col(Dof::D3, Direction::Positive)) = 0.5;
  m(1, col(Dof::D3, Direction::Positive)) = 0.35;
  m(0, col(Dof::D3, Direction::Positive)) = 0.25;
  m(6, col(Dof::D3, Direction::Negative)) = 0.5;
  m(5, col(Dof::D3, Direction::Negative)) = 0.35;
  m(4, col(Dof::D3, Direction::Negative)) = 0.25;
  return {std::move(m), noise_sigma, seed};
}

MixingModel separable_mixing_model(double noise_sigma, std::uint64_t seed) {
  MatXd m = with_baseline(8, 0.02);
  const auto col = [](Dof d, Direction dir) { return MixingModel::column(d, dir); };
  m(0, col(Dof::D1, Direction::Positive)) = 1.0;
  m(1, col(Dof::D1, Direction::Positive)) = 1.0;
  m(2, col(Dof::D1, Direction::Negative)) = 1.0;
  m(3, col(Dof::D1, Direction::Negative)) = 1.0;
  m(4, col(Dof::D3, Direction::Positive)) = 1.0;
  m(5, col(Dof::D3, Direction::Positive)) = 1.0;
  m(6, col(Dof::D3, Direction::Negative)) = 1.0;
  m(7, col(Dof::D3, Direction::Negative)) = 1.0;
  // D2 is not separable from the others on 8 channels; share the D1/D3 pairs
  m(1, col(Dof::D2, Direction::Positive)) = 1.0;
  m(4, col(Dof::D2, Direction::Positive)) = 1.0;
  m(3, col(Dof::D2, Direction::Negative)) = 1.0;
  m(6, col(Dof::D2, Direction::Negative)) = 1.0;
  return {std::move(m), noise_sigma, seed};
}

VecXd activation(const DofAngles& signed_angles) {
  VecXd a = VecXd::Zero(2 * static_cast<Eigen::Index>(kMaxDofs));
  for (Dof d : kAllDofs) {
    const double angle = signed_angles[index_of(d)];
    if (angle == 0.0) continue;
    a(MixingModel::column(d, direction_of(angle))) = std::abs(angle);
  }
  return a;
}

std::vector<GeneratedWindow> generate_features(const MixingModel& model,
                                               const DofAngles& signed_angles,
                                               std::size_t count, Rng& rng,
                                               std::size_t* clipped) {
  const VecXd clean = model.mixing * activation(signed_angles);
  std::normal_distribution<double> noise(0.0, model.noise_sigma > 0.0 ? model.noise_sigma : 1.0);
  std::vector<GeneratedWindow> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    GeneratedWindow w{clean, signed_angles};
    if (model.noise_sigma > 0.0) {
      for (Eigen::Index c = 0; c < w.features.size(); ++c) {
        w.features(c) += noise(rng);
        if (w.features(c) < 0.0) {
          w.features(c) = 0.0;
          if (clipped) ++*clipped;
        }
      }
    }
    out.push_back(std::move(w));
  }
  return out;
}

TrainingSet generate_training_set(const MixingModel& model, std::size_t per_action_count,
                                  AngleRange range, std::span<const Dof> dofs) {
  if (per_action_count < 1) throw std::invalid_argument("generate_training_set: count < 1");
  if (!(range.min > 0.0) || !(range.max > range.min)) {
    throw std::invalid_argument("generate_training_set: need 0 < min < max");
  }
  Rng rng = substream(model.seed, Stream::Training);
  std::uniform_real_distribution<double> angle_dist(range.min, range.max);
  TrainingSet set;
  set.samples.reserve(per_action_count * dofs.size() * 2);
  for (Dof d : dofs) {
    for (Direction dir : {Direction::Positive, Direction::Negative}) {
      for (std::size_t i = 0; i < per_action_count; ++i) {
        const double angle = angle_dist(rng);
        DofAngles signed_angles{};
        signed_angles[index_of(d)] = static_cast<double>(static_cast<int>(dir)) * angle;
        auto w = generate_features(model, signed_angles, 1, rng, &set.clipped);
        set.samples.push_back(TrainingSample{{std::move(w.front().features), FeatureKind::MAV},
                                             d, dir, angle, MovementPhase::Direct});
      }
    }
  }
  return set;
}

std::size_t SyntheticScenario::total_windows() const {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.windows;
  return n;
}

SyntheticScenario standard_scenario(std::span<const Dof> dofs, double theta_max,
                                 std::uint64_t seed, const ScenarioShape& shape) {
  if (shape.n_blocks == 0 || shape.total_windows < shape.n_blocks) {
    throw std::invalid_argument("standard_scenario: need at least one window per block");
  }
  Rng rng = substream(seed, Stream::Scenario);
  std::uniform_real_distribution<double> fraction(shape.min_fraction, shape.max_fraction);
  const std::size_t patterns = std::size_t{1} << dofs.size();
  SyntheticScenario scenario;
  for (std::size_t b = 0; b < shape.n_blocks; ++b) {
    ScenarioBlock block;
    block.windows = shape.total_windows / shape.n_blocks +
                    (b < shape.total_windows % shape.n_blocks ? 1 : 0);
    const std::size_t pattern = b % patterns;
    for (std::size_t k = 0; k < dofs.size(); ++k) {
      const double sign = (pattern >> k) & 1U ? -1.0 : 1.0;
      const double target = sign * fraction(rng) * theta_max;
      block.start[index_of(dofs[k])] = shape.ramp_start * target;
      block.end[index_of(dofs[k])] = target;
    }
    scenario.blocks.push_back(block);
  }
  return scenario;
}

TestSet generate_test_scenario(const MixingModel& model, const SyntheticScenario& scenario) {
  TestSet set;
  const std::size_t total = scenario.total_windows();
  set.truth = MatXd::Zero(static_cast<Eigen::Index>(total), static_cast<Eigen::Index>(kMaxDofs));
  set.features.reserve(total);
  set.block_ids.reserve(total);
  Eigen::Index row = 0;
  for (std::size_t b = 0; b < scenario.blocks.size(); ++b) {
    const ScenarioBlock& block = scenario.blocks[b];
    Rng rng = substream(model.seed, Stream::TestBlock, static_cast<std::uint32_t>(b));
    for (std::size_t w = 0; w < block.windows; ++w) {
      const double t = block.windows > 1 ? static_cast<double>(w) / (block.windows - 1) : 1.0;
      DofAngles angles{};
      for (std::size_t k = 0; k < kMaxDofs; ++k) {
        angles[k] = block.start[k] + t * (block.end[k] - block.start[k]);
      }
      auto gen = generate_features(model, angles, 1, rng, &set.clipped);
      set.features.push_back(std::move(gen.front().features));
      for (std::size_t k = 0; k < kMaxDofs; ++k) set.truth(row, static_cast<Eigen::Index>(k)) = angles[k];
      set.block_ids.push_back(static_cast<int>(b));
      ++row;
    }
  }
  return set;
}

EmgRecording generate_raw_emg(const MixingModel& model, std::span<const DofAngles> window_angles,
                              Eigen::Index samples_per_window, double sample_rate, Rng& rng) {
  if (samples_per_window < 1) throw std::invalid_argument("generate_raw_emg: empty windows");
  const Eigen::Index n_channels = model.n_channels();
  const auto n_windows = static_cast<Eigen::Index>(window_angles.size());
  MatXd samples(n_windows * samples_per_window, n_channels);

  // first-order low-pass of white noise, kept at unit variance
  constexpr double kPole = 0.5;
  const double drive = std::sqrt(1.0 - kPole * kPole);
  // E|x| = sqrt(2/pi) for a unit normal
  const double mav_gain = std::sqrt(std::numbers::pi / 2.0);
  std::normal_distribution<double> white(0.0, 1.0);
  VecXd carrier(n_channels);
  for (Eigen::Index c = 0; c < n_channels; ++c) carrier(c) = white(rng);

  for (Eigen::Index w = 0; w < n_windows; ++w) {
    const VecXd envelope =
        model.mixing * activation(window_angles[static_cast<std::size_t>(w)]) * mav_gain;
    for (Eigen::Index t = 0; t < samples_per_window; ++t) {
      for (Eigen::Index c = 0; c < n_channels; ++c) {
        carrier(c) = kPole * carrier(c) + drive * white(rng);
      }
      samples.row(w * samples_per_window + t) = envelope.cwiseProduct(carrier).transpose();
    }
  }
  return EmgRecording(std::move(samples), sample_rate);
}

}  // namespace qmyo
