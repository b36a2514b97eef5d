#include "qmyo/encode.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace qmyo;

TEST(Encode, examples) {
  const auto s = encode(VecXd{{3.0, 4.0}});
  EXPECT_DOUBLE_EQ(s[0], 0.6);
  EXPECT_DOUBLE_EQ(s[1], 0.8);
  EXPECT_EQ(encode(VecXd{{1.0, 0.0, 0.0}}).amplitudes(), (VecXd{{1.0, 0.0, 0.0}}));
  EXPECT_EQ(encode(VecXd::Ones(4)).amplitudes(), VecXd::Constant(4, 0.5));
}

TEST(Encode, zero_vector_is_rejected) {
  EXPECT_THROW(encode(VecXd::Zero(8)), ZeroSignalError);
  EXPECT_THROW(encode(VecXd()), DimensionError);
}

TEST(Encode, unit_norm_for_a_million_random_inputs) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  std::uniform_int_distribution<int> dim(1, 16);
  double worst = 0.0;
  for (int i = 0; i < 1'000'000; ++i) {
    VecXd v(dim(rng));
    for (Eigen::Index k = 0; k < v.size(); ++k) v(k) = u(rng);
    if (v.isZero(0.0)) continue;
    worst = std::max(worst, std::abs(encode(v).amplitudes().squaredNorm() - 1.0));
  }
  EXPECT_LT(worst, 1e-12);
}

TEST(Encode, scale_invariant_and_positive_for_mav) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  std::uniform_real_distribution<double> c(1e-3, 1e3);
  for (int i = 0; i < 1000; ++i) {
    FeatureVector fv{VecXd(8), FeatureKind::MAV};
    for (Eigen::Index k = 0; k < 8; ++k) fv.values(k) = u(rng);
    const auto s = encode(fv);
    EXPECT_GE(s.amplitudes().minCoeff(), 0.0);
    FeatureVector scaled{c(rng) * fv.values, FeatureKind::MAV};
    EXPECT_LT((encode(scaled).amplitudes() - s.amplitudes()).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(InnerProduct, examples) {
  const auto a = encode(VecXd{{0.6, 0.8}});
  const auto b = encode(VecXd{{0.8, 0.6}});
  EXPECT_DOUBLE_EQ(inner_product(a, a), 1.0);
  EXPECT_NEAR(inner_product(a, b), 0.96, 1e-15);
  EXPECT_EQ(inner_product(encode(VecXd{{1.0, 0.0}}), encode(VecXd{{0.0, 1.0}})), 0.0);
  EXPECT_THROW(inner_product(a, encode(VecXd::Ones(3))), DimensionError);
}

TEST(QuantumState, from_unit_checks_norm) {
  EXPECT_NO_THROW(QuantumState::from_unit(VecXd{{0.6, 0.8}}));
  EXPECT_THROW(QuantumState::from_unit(VecXd{{0.6, 0.9}}), NumericError);
}
