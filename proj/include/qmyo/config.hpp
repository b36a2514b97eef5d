#pragma once

#include "qmyo/learn.hpp"
#include "qmyo/metrics.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace qmyo {

struct ExperimentConfig {
  double window_ms = 100.0;
  double sample_rate = 1024.0;
  double deadband = 0.0;
  DecodeConfig decode;
  BlockRule block_rule = BlockRule::Majority;
  std::vector<std::size_t> training_sizes{500, 2000};
  std::uint64_t seed = 1;
  std::vector<Dof> dofs{Dof::D1, Dof::D3};
  // synthetic data
  double noise_sigma = 4.0;
  double angle_min = 5.0;
  double angle_max = 60.0;

  /// Throws ConfigError when an invariant does not hold.
  void validate() const;
};

/// Sets one key. Unknown keys and unparsable values raise ConfigError.
void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value);

/// Flat `key = value` lines; `#` starts a comment.
void apply_config_file(ExperimentConfig& cfg, const std::filesystem::path& path);

/// Canonical `key = value` listing, one per line, fixed key order.
std::string to_config_text(const ExperimentConfig& cfg);

/// FNV-1a 64 of the canonical text, as 16 hex digits.
std::string config_hash(const ExperimentConfig& cfg);

}  // namespace qmyo
