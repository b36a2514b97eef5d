#include "qmyo/metrics.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace qmyo;

TEST(RSquaredDof, examples) {
  const std::vector<double> truth{0, 1, 2, 3};
  EXPECT_EQ(r_squared_dof(truth, truth), 1.0);
  const std::vector<double> mean(4, 1.5);
  EXPECT_EQ(r_squared_dof(truth, mean), 0.0);
  const std::vector<double> off{0, 1, 2, 5};
  EXPECT_EQ(r_squared_dof(truth, off), 0.2);
  EXPECT_NEAR(oracle::r_squared(truth, off), 0.2, 1e-15);
}

TEST(RSquaredDof, errors) {
  const std::vector<double> flat{2, 2, 2};
  EXPECT_THROW(r_squared_dof(flat, flat), UndefinedDenominatorError);
  const std::vector<double> a{1, 2}, b{1, 2, 3};
  EXPECT_THROW(r_squared_dof(a, b), DimensionError);
  EXPECT_THROW(r_squared_dof(std::span<const double>{}, std::span<const double>{}), EmptyInputError);
}

TEST(RSquaredDof, negative_values_are_reported) {
  const std::vector<double> truth{0, 1, 2, 3};
  const std::vector<double> bad{3, 2, 1, 0};
  EXPECT_LT(r_squared_dof(truth, bad), 0.0);
}

TEST(RSquaredGlobal, examples) {
  MatXd truth(4, 2), perfect(4, 2);
  truth << 0, 0, 1, 1, 2, 2, 3, 3;
  EXPECT_EQ(r_squared_global(truth, truth), 1.0);

  // same truth in both columns, so equal denominators; per-DOF 0.2 and 1.0
  MatXd est = truth;
  est(3, 0) = 5;
  EXPECT_EQ(r_squared_dof(VecXd(truth.col(0)), VecXd(est.col(0))), 0.2);
  EXPECT_NEAR(r_squared_global(truth, est), 0.6, 1e-15);

  const MatXd one = truth.leftCols(1);
  EXPECT_EQ(r_squared_global(one, est.leftCols(1)), r_squared_dof(VecXd(one.col(0)), VecXd(est.col(0))));
  EXPECT_THROW(r_squared_global(MatXd::Ones(3, 2), MatXd::Ones(3, 2)), UndefinedDenominatorError);
}

TEST(RSquared, matches_brute_force_on_random_trajectories) {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> g(0.0, 20.0);
  std::uniform_int_distribution<int> len(2, 300);
  std::uniform_int_distribution<int> dofs(1, 3);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = len(rng);
    const int k = dofs(rng);
    MatXd truth(n, k), est(n, k);
    std::vector<std::vector<double>> t(static_cast<std::size_t>(k)), e(static_cast<std::size_t>(k));
    for (int c = 0; c < k; ++c) {
      for (int i = 0; i < n; ++i) {
        truth(i, c) = g(rng);
        est(i, c) = truth(i, c) + 0.5 * g(rng);
        t[static_cast<std::size_t>(c)].push_back(truth(i, c));
        e[static_cast<std::size_t>(c)].push_back(est(i, c));
      }
      ASSERT_NEAR(r_squared_dof(VecXd(truth.col(c)), VecXd(est.col(c))),
                  oracle::r_squared(t[static_cast<std::size_t>(c)], e[static_cast<std::size_t>(c)]), 1e-12);
    }
    ASSERT_NEAR(r_squared_global(truth, est), oracle::r_squared_pooled(t, e), 1e-12);
  }
}

TEST(RSquared, properties) {
  std::mt19937_64 rng(23);
  std::normal_distribution<double> g(0.0, 10.0);
  for (int trial = 0; trial < 500; ++trial) {
    MatXd truth(50, 2), est(50, 2);
    for (Eigen::Index i = 0; i < truth.size(); ++i) {
      truth.data()[i] = g(rng);
      est.data()[i] = truth.data()[i] + g(rng);
    }
    const double r = r_squared_dof(VecXd(truth.col(0)), VecXd(est.col(0)));
    EXPECT_LT(r, 1.0);
    const double c = g(rng);
    const MatXd ts = truth.array() + c, es = est.array() + c;
    EXPECT_NEAR(r_squared_dof(VecXd(ts.col(0)), VecXd(es.col(0))), r, 1e-12);
    EXPECT_NEAR(r_squared_global(ts, es), r_squared_global(truth, est), 1e-12);

    // the pooled index is the denominator-weighted mean of per-DOF values
    const auto spread = [](const VecXd& v) { return (v.array() - v.mean()).matrix().squaredNorm(); };
    const double w0 = spread(truth.col(0)), w1 = spread(truth.col(1));
    const double r0 = r, r1 = r_squared_dof(VecXd(truth.col(1)), VecXd(est.col(1)));
    EXPECT_NEAR(r_squared_global(truth, est), (w0 * r0 + w1 * r1) / (w0 + w1), 1e-12);
  }
}

namespace {

TrajectoryPair pair_with_blocks(const std::vector<std::vector<double>>& est_columns,
                                std::vector<Block> blocks, std::vector<Dof> dofs) {
  TrajectoryPair p;
  p.dofs = std::move(dofs);
  const auto n = static_cast<Eigen::Index>(est_columns.front().size());
  p.truth = MatXd::Zero(n, static_cast<Eigen::Index>(p.dofs.size()));
  p.estimate.resize(n, static_cast<Eigen::Index>(p.dofs.size()));
  for (std::size_t c = 0; c < est_columns.size(); ++c) {
    for (Eigen::Index i = 0; i < n; ++i) {
      p.estimate(i, static_cast<Eigen::Index>(c)) = est_columns[c][static_cast<std::size_t>(i)];
    }
  }
  p.blocks = std::move(blocks);
  return p;
}

}  // namespace

TEST(BlockErrors, all_correct) {
  auto p = pair_with_blocks({{1, 2, 3, -1, -2, -3}, {5, 5, 5, 5, 5, 5}},
                            {{0, 3, {{Dof::D1, Direction::Positive}, {Dof::D3, Direction::Positive}}},
                             {3, 6, {{Dof::D1, Direction::Negative}, {Dof::D3, Direction::Positive}}}},
                            {Dof::D1, Dof::D3});
  const auto e = block_errors(p);
  EXPECT_EQ(e.per_dof.at(Dof::D1), 0u);
  EXPECT_EQ(e.per_dof.at(Dof::D3), 0u);
  EXPECT_TRUE(e.misclassified_blocks.empty());
}

TEST(BlockErrors, flipped_majority_counts_once) {
  auto p = pair_with_blocks({{1, 2, 3, 1, 2, -3}, {5, 5, 5, 5, 5, 5}},
                            {{0, 3, {{Dof::D1, Direction::Positive}, {Dof::D3, Direction::Positive}}},
                             {3, 6, {{Dof::D1, Direction::Negative}, {Dof::D3, Direction::Positive}}}},
                            {Dof::D1, Dof::D3});
  const auto e = block_errors(p);
  EXPECT_EQ(e.per_dof.at(Dof::D1), 1u);
  EXPECT_EQ(e.per_dof.at(Dof::D3), 0u);
  EXPECT_EQ(e.misclassified_blocks, std::vector<std::size_t>{1});
  EXPECT_EQ(e.all_dofs_wrong, 0u);
}

TEST(BlockErrors, three_of_five_wrong_is_an_error_under_majority) {
  // enumerate every placement of 3 wrong windows among 5
  for (int mask = 0; mask < 32; ++mask) {
    if (__builtin_popcount(static_cast<unsigned>(mask)) != 3) continue;
    std::vector<double> d3(5);
    for (int i = 0; i < 5; ++i) d3[static_cast<std::size_t>(i)] = (mask >> i) & 1 ? -4.0 : 4.0;
    auto p = pair_with_blocks({d3}, {{0, 5, {{Dof::D3, Direction::Positive}}}}, {Dof::D3});
    EXPECT_EQ(block_errors(p).per_dof.at(Dof::D3), 1u);
    EXPECT_EQ(block_errors(p, BlockRule::Any).per_dof.at(Dof::D3), 1u);
    EXPECT_EQ(block_errors(p, BlockRule::All).per_dof.at(Dof::D3), 0u);
  }
}

TEST(BlockErrors, rest_windows_and_ties) {
  // two positive, two rest: tie against the intended direction is an error
  auto p = pair_with_blocks({{1, 1, 0, 0}}, {{0, 4, {{Dof::D1, Direction::Positive}}}}, {Dof::D1});
  EXPECT_EQ(block_errors(p).per_dof.at(Dof::D1), 1u);
  // intended rest with rest decoded is fine
  auto q = pair_with_blocks({{0, 0, 1}}, {{0, 3, {}}}, {Dof::D1});
  EXPECT_EQ(block_errors(q).per_dof.at(Dof::D1), 0u);
}

TEST(BlockErrors, order_within_a_block_does_not_matter) {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> dir(-1, 1);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> col(9);
    for (auto& v : col) v = dir(rng) * 10.0;
    auto p = pair_with_blocks({col}, {{0, 9, {{Dof::D1, Direction::Positive}}}}, {Dof::D1});
    const auto before = block_errors(p).per_dof.at(Dof::D1);
    std::shuffle(col.begin(), col.end(), rng);
    auto q = pair_with_blocks({col}, {{0, 9, {{Dof::D1, Direction::Positive}}}}, {Dof::D1});
    EXPECT_EQ(block_errors(q).per_dof.at(Dof::D1), before);
  }
}

TEST(BlockErrors, malformed_partitions) {
  auto empty = pair_with_blocks({{1, 1}}, {{0, 0, {}}, {0, 2, {}}}, {Dof::D1});
  EXPECT_THROW(block_errors(empty), MalformedBlockError);
  auto gap = pair_with_blocks({{1, 1, 1}}, {{0, 1, {}}, {2, 3, {}}}, {Dof::D1});
  EXPECT_THROW(block_errors(gap), MalformedBlockError);
  auto short_cover = pair_with_blocks({{1, 1, 1}}, {{0, 2, {}}}, {Dof::D1});
  EXPECT_THROW(block_errors(short_cover), MalformedBlockError);
}

TEST(BlocksFromIds, derives_intended_directions) {
  MatXd truth(6, 2);
  truth << 10, -5,
           12, -6,
           14, -7,
           -3,  0,
           -4,  0,
           -5,  0;
  const std::vector<int> ids{7, 7, 7, 2, 2, 2};
  const std::array<Dof, 2> dofs{Dof::D1, Dof::D3};
  const auto blocks = blocks_from_ids(ids, truth, dofs);
  ASSERT_EQ(blocks.size(), 2u);
  EXPECT_EQ(blocks[0].begin, 0u);
  EXPECT_EQ(blocks[0].end, 3u);
  EXPECT_EQ(blocks[0].intended.at(Dof::D1), Direction::Positive);
  EXPECT_EQ(blocks[0].intended.at(Dof::D3), Direction::Negative);
  EXPECT_EQ(blocks[1].intended.at(Dof::D1), Direction::Negative);
  EXPECT_EQ(blocks[1].intended.at(Dof::D3), Direction::Rest);
}
