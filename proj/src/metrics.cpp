#include "qmyo/metrics.hpp"

#include <algorithm>
#include <array>
#include <string>

namespace qmyo {

double r_squared_dof(const VecXd& truth, const VecXd& estimate) {
  if (truth.size() != estimate.size()) {
    throw DimensionError("r_squared: truth has " + std::to_string(truth.size()) +
                         " samples, estimate " + std::to_string(estimate.size()));
  }
  if (truth.size() == 0) throw EmptyInputError("r_squared: empty trajectory");
  const double residual = (estimate - truth).squaredNorm();
  const double spread = (truth.array() - truth.mean()).matrix().squaredNorm();
  if (!(spread > 0.0)) throw UndefinedDenominatorError("r_squared: truth is constant");
  return (spread - residual) / spread;
}

double r_squared_dof(std::span<const double> truth, std::span<const double> estimate) {
  return r_squared_dof(
      VecXd(Eigen::Map<const VecXd>(truth.data(), static_cast<Eigen::Index>(truth.size()))),
      VecXd(Eigen::Map<const VecXd>(estimate.data(),
                                    static_cast<Eigen::Index>(estimate.size()))));
}

double r_squared_global(const MatXd& truth, const MatXd& estimate) {
  if (truth.rows() != estimate.rows() || truth.cols() != estimate.cols()) {
    throw DimensionError("r_squared_global: truth and estimate shapes differ");
  }
  if (truth.size() == 0) throw EmptyInputError("r_squared_global: empty trajectories");
  const double residual = (estimate - truth).squaredNorm();
  const MatXd centred = truth.rowwise() - truth.colwise().mean();
  const double spread = centred.squaredNorm();
  if (!(spread > 0.0)) throw UndefinedDenominatorError("r_squared_global: every truth column is constant");
  return (spread - residual) / spread;
}

BlockRule parse_block_rule(std::string_view text) {
  if (text == "majority") return BlockRule::Majority;
  if (text == "any") return BlockRule::Any;
  if (text == "all") return BlockRule::All;
  throw ParseError("unknown block rule '" + std::string(text) + "'");
}

std::string_view to_string(BlockRule r) {
  switch (r) {
    case BlockRule::Majority: return "majority";
    case BlockRule::Any: return "any";
    case BlockRule::All: return "all";
  }
  return "?";
}

namespace {

std::size_t slot(Direction d) { return static_cast<std::size_t>(static_cast<int>(d) + 1); }

bool block_dof_wrong(const std::array<std::size_t, 3>& counts, Direction intended,
                     std::size_t total, BlockRule rule) {
  const std::size_t right = counts[slot(intended)];
  switch (rule) {
    case BlockRule::Majority:
      for (std::size_t k = 0; k < 3; ++k) {
        if (k != slot(intended) && counts[k] >= right) return true;
      }
      return false;
    case BlockRule::Any: return right != total;
    case BlockRule::All: return right == 0;
  }
  return true;
}

}  // namespace

BlockErrors block_errors(const TrajectoryPair& pair, BlockRule rule) {
  const auto n_dofs = static_cast<Eigen::Index>(pair.dofs.size());
  if (pair.truth.cols() != n_dofs || pair.estimate.cols() != n_dofs ||
      pair.truth.rows() != pair.estimate.rows()) {
    throw DimensionError("block_errors: trajectory shapes do not match the DOF list");
  }
  const auto n = static_cast<std::size_t>(pair.estimate.rows());

  BlockErrors out;
  for (Dof d : pair.dofs) out.per_dof[d] = 0;

  std::size_t expected_begin = 0;
  for (std::size_t b = 0; b < pair.blocks.size(); ++b) {
    const Block& block = pair.blocks[b];
    if (block.end <= block.begin) {
      throw MalformedBlockError("block " + std::to_string(b) + " is empty");
    }
    if (block.begin != expected_begin || block.end > n) {
      throw MalformedBlockError("block " + std::to_string(b) +
                                " does not continue the partition of the sample range");
    }
    expected_begin = block.end;

    std::size_t wrong_dofs = 0;
    for (Eigen::Index k = 0; k < n_dofs; ++k) {
      const Dof dof = pair.dofs[static_cast<std::size_t>(k)];
      auto it = block.intended.find(dof);
      const Direction intended = it == block.intended.end() ? Direction::Rest : it->second;
      std::array<std::size_t, 3> counts{};
      for (std::size_t i = block.begin; i < block.end; ++i) {
        ++counts[slot(direction_of(pair.estimate(static_cast<Eigen::Index>(i), k)))];
      }
      if (block_dof_wrong(counts, intended, block.size(), rule)) {
        ++out.per_dof[dof];
        ++wrong_dofs;
      }
    }
    if (wrong_dofs > 0) out.misclassified_blocks.push_back(b);
    if (wrong_dofs > 0 && wrong_dofs == pair.dofs.size()) ++out.all_dofs_wrong;
  }
  if (!pair.blocks.empty() && expected_begin != n) {
    throw MalformedBlockError("blocks do not cover all " + std::to_string(n) + " samples");
  }
  return out;
}

std::vector<Block> blocks_from_ids(std::span<const int> block_ids, const MatXd& truth,
                                   std::span<const Dof> dofs) {
  if (static_cast<Eigen::Index>(block_ids.size()) != truth.rows()) {
    throw DimensionError("blocks_from_ids: block id count differs from trajectory length");
  }
  std::vector<Block> blocks;
  std::size_t begin = 0;
  for (std::size_t i = 1; i <= block_ids.size(); ++i) {
    if (i < block_ids.size() && block_ids[i] == block_ids[begin]) continue;
    Block block{begin, i, {}};
    for (std::size_t k = 0; k < dofs.size(); ++k) {
      std::array<std::size_t, 3> counts{};
      for (std::size_t r = begin; r < i; ++r) {
        ++counts[slot(direction_of(truth(static_cast<Eigen::Index>(r),
                                         static_cast<Eigen::Index>(k))))];
      }
      // ties resolve in slot order: negative, rest, positive
      const auto best = std::max_element(counts.begin(), counts.end()) - counts.begin();
      block.intended[dofs[k]] = static_cast<Direction>(static_cast<int>(best) - 1);
    }
    blocks.push_back(std::move(block));
    begin = i;
  }
  return blocks;
}

}  // namespace qmyo
