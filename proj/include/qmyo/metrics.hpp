#pragma once

#include "qmyo/fwd.hpp"
#include "qmyo/errors.hpp"

#include <map>
#include <span>
#include <vector>

namespace qmyo {

/// Half-open sample range [begin, end) with the direction each DOF is meant
/// to move in.
struct Block {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::map<Dof, Direction> intended;

  std::size_t size() const { return end - begin; }
};

/// Signed joint-angle trajectories (degrees, + positive direction).
struct TrajectoryPair {
  std::vector<Dof> dofs;
  /// rows = samples, columns follow `dofs`
  MatXd truth;
  MatXd estimate;
  std::vector<Block> blocks;
};

double r_squared_dof(std::span<const double> truth, std::span<const double> estimate);
double r_squared_dof(const VecXd& truth, const VecXd& estimate);

/// Pooled over all columns: 1 - sum(err^2) / sum(dev^2) with deviations
/// taken from each column's own mean.
double r_squared_global(const MatXd& truth, const MatXd& estimate);

enum class BlockRule : std::uint8_t {
  /// The most frequent decoded direction must equal the intended one; ties
  /// count as errors.
  Majority,
  /// Any wrong window makes the block wrong.
  Any,
  /// Only a block with every window wrong is wrong.
  All,
};

BlockRule parse_block_rule(std::string_view text);
std::string_view to_string(BlockRule r);

struct BlockErrors {
  std::map<Dof, std::size_t> per_dof;
  /// Indices into TrajectoryPair::blocks with at least one DOF wrong.
  std::vector<std::size_t> misclassified_blocks;
  /// Blocks with every evaluated DOF wrong.
  std::size_t all_dofs_wrong = 0;
};

/// Decoded direction per window is the sign of the estimate.
BlockErrors block_errors(const TrajectoryPair& pair, BlockRule rule = BlockRule::Majority);

/// Groups consecutive equal block ids and derives each block's intended
/// directions from the most common sign of the truth.
std::vector<Block> blocks_from_ids(std::span<const int> block_ids, const MatXd& truth,
                                   std::span<const Dof> dofs);

}  // namespace qmyo
