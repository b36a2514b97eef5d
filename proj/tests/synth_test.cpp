#include "qmyo/synth.hpp"

#include "qmyo/encode.hpp"
#include "qmyo/signal.hpp"

#include <gtest/gtest.h>

using namespace qmyo;

namespace {
const std::array<Dof, 2> kD1D3{Dof::D1, Dof::D3};
}

TEST(GenerateFeatures, noiseless_single_dof_is_a_scaled_column) {
  const auto m = default_mixing_model(0.0);
  Rng rng(1);
  const auto w = generate_features(m, {25.0, 0.0, 0.0}, 3, rng);
  ASSERT_EQ(w.size(), 3u);
  for (const auto& x : w) {
    EXPECT_EQ(x.features, (25.0 * m.mixing.col(MixingModel::column(Dof::D1, Direction::Positive))).eval());
  }
  const auto neg = generate_features(m, {0.0, 0.0, -12.0}, 1, rng);
  EXPECT_EQ(neg[0].features, (12.0 * m.mixing.col(MixingModel::column(Dof::D3, Direction::Negative))).eval());
}

TEST(GenerateFeatures, rest_is_zero) {
  const auto m = default_mixing_model(0.0);
  Rng rng(1);
  EXPECT_TRUE(generate_features(m, {0.0, 0.0, 0.0}, 1, rng)[0].features.isZero(0.0));
}

TEST(GenerateFeatures, combined_activation_superposes) {
  const auto m = default_mixing_model(0.0);
  Rng rng(1);
  const VecXd expected = 20.0 * m.mixing.col(MixingModel::column(Dof::D1, Direction::Positive)) +
                         10.0 * m.mixing.col(MixingModel::column(Dof::D3, Direction::Positive));
  EXPECT_LT((generate_features(m, {20.0, 0.0, 10.0}, 1, rng)[0].features - expected).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(GenerateFeatures, noise_is_clipped_at_zero_and_counted) {
  const auto m = default_mixing_model(5.0);
  Rng rng(1);
  std::size_t clipped = 0;
  const auto w = generate_features(m, {1.0, 0.0, 0.0}, 200, rng, &clipped);
  EXPECT_GT(clipped, 0u);
  for (const auto& x : w) EXPECT_GE(x.features.minCoeff(), 0.0);
}

TEST(GenerateTrainingSet, sizes_follow_actions) {
  const auto m = default_mixing_model(4.0, 9);
  EXPECT_EQ(generate_training_set(m, 500, {}, kD1D3).samples.size(), 2000u);
  EXPECT_EQ(generate_training_set(m, 2000, {}, kD1D3).samples.size(), 8000u);
}

TEST(GenerateTrainingSet, deterministic_and_single_dof) {
  const auto m = default_mixing_model(4.0, 9);
  const auto a = generate_training_set(m, 50, {10.0, 20.0}, kD1D3);
  const auto b = generate_training_set(m, 50, {10.0, 20.0}, kD1D3);
  ASSERT_EQ(a.samples.size(), b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    EXPECT_EQ(a.samples[i].features.values, b.samples[i].features.values);
    EXPECT_EQ(a.samples[i].angle, b.samples[i].angle);
    EXPECT_GE(a.samples[i].angle, 10.0);
    EXPECT_LT(a.samples[i].angle, 20.0);
    EXPECT_NE(a.samples[i].direction, Direction::Rest);
  }
  EXPECT_THROW(generate_training_set(m, 0, {}, kD1D3), std::invalid_argument);
  EXPECT_THROW(generate_training_set(m, 1, {0.0, 10.0}, kD1D3), std::invalid_argument);
}

TEST(GenerateTrainingSet, noiseless_states_are_identical_per_direction) {
  const auto m = default_mixing_model(0.0, 9);
  const auto set = generate_training_set(m, 100, {}, kD1D3);
  EXPECT_EQ(set.clipped, 0u);
  for (std::size_t i = 1; i < set.samples.size(); ++i) {
    const auto& a = set.samples[i - 1];
    const auto& b = set.samples[i];
    if (a.dof != b.dof || a.direction != b.direction) continue;
    EXPECT_LT((encode(a.features).amplitudes() - encode(b.features).amplitudes()).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(StandardScenario, has_55_blocks_and_8216_windows) {
  const auto s = standard_scenario(kD1D3, 60.0, 4);
  EXPECT_EQ(s.blocks.size(), 55u);
  EXPECT_EQ(s.total_windows(), 8216u);
  for (const auto& b : s.blocks) {
    EXPECT_GE(b.windows, 149u);
    EXPECT_LE(b.windows, 150u);
    for (Dof d : kD1D3) {
      EXPECT_NE(b.end[index_of(d)], 0.0);
      EXPECT_LE(std::abs(b.end[index_of(d)]), 60.0);
      EXPECT_EQ(direction_of(b.start[index_of(d)]), direction_of(b.end[index_of(d)]));
    }
    EXPECT_EQ(b.end[index_of(Dof::D2)], 0.0);
  }
}

TEST(GenerateTestScenario, single_block_reduces_to_generate_features) {
  const auto m = default_mixing_model(0.0, 3);
  SyntheticScenario s;
  s.blocks.push_back({{15.0, 0.0, 0.0}, {15.0, 0.0, 0.0}, 4});
  const auto set = generate_test_scenario(m, s);
  Rng rng(0);
  const auto w = generate_features(m, {15.0, 0.0, 0.0}, 4, rng);
  ASSERT_EQ(set.features.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(set.features[i], w[i].features);
    EXPECT_EQ(set.truth(static_cast<Eigen::Index>(i), 0), 15.0);
    EXPECT_EQ(set.block_ids[i], 0);
  }
}

TEST(GenerateTestScenario, deterministic_and_ramped) {
  const auto m = default_mixing_model(4.0, 3);
  const auto s = standard_scenario(kD1D3, 60.0, 3);
  const auto a = generate_test_scenario(m, s);
  const auto b = generate_test_scenario(m, s);
  ASSERT_EQ(a.features.size(), 8216u);
  EXPECT_EQ(a.truth, b.truth);
  for (std::size_t i = 0; i < a.features.size(); ++i) ASSERT_EQ(a.features[i], b.features[i]);
  EXPECT_EQ(a.truth(0, 0), s.blocks[0].start[0]);
  EXPECT_EQ(a.truth(static_cast<Eigen::Index>(s.blocks[0].windows) - 1, 0), s.blocks[0].end[0]);
  EXPECT_EQ(a.block_ids.back(), 54);
}

TEST(MixingModel, validation) {
  EXPECT_NO_THROW(default_mixing_model().validate());
  EXPECT_NO_THROW(separable_mixing_model().validate());
  MixingModel bad = default_mixing_model();
  bad.mixing.col(2).setZero();
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  MixingModel parallel{MatXd::Ones(4, 6), 0.0, 1};
  EXPECT_THROW(parallel.validate(), std::invalid_argument);
}

TEST(GenerateRawEmg, window_mav_tracks_the_feature_model) {
  const auto m = default_mixing_model(0.0, 3);
  const std::vector<DofAngles> angles{{30.0, 0.0, 0.0}, {0.0, 0.0, -40.0}, {20.0, 0.0, 20.0}};
  Rng rng(5);
  const auto rec = generate_raw_emg(m, angles, 4096, 1024.0, rng);
  ASSERT_EQ(rec.n_samples(), 3 * 4096);
  const auto windows = segment_windows(rec, 4000.0);
  ASSERT_EQ(windows.size(), 3u);
  for (std::size_t w = 0; w < 3; ++w) {
    const VecXd expected = m.mixing * activation(angles[w]);
    const VecXd got = mav(windows[w]).values;
    // long windows: sampling error of the mean well under 10%
    EXPECT_LT(((got - expected).cwiseAbs().array() / expected.array()).maxCoeff(), 0.1);
  }
}
