#include "qmyo/signal.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

using namespace qmyo;

namespace {

MatXd column(std::initializer_list<double> values) {
  MatXd m(static_cast<Eigen::Index>(values.size()), 1);
  Eigen::Index i = 0;
  for (double v : values) m(i++, 0) = v;
  return m;
}

}  // namespace

TEST(SegmentWindows, hundred_ms_window_at_1024_hz) {
  EmgRecording rec(MatXd::Random(1024, 8), 1024.0);
  const auto windows = segment_windows(rec, 100.0);
  ASSERT_EQ(windows.size(), oracle::window_count(1024, 102, 102));
  ASSERT_EQ(windows.size(), 10u);
  for (std::size_t k = 0; k < windows.size(); ++k) {
    ASSERT_EQ(windows[k].rows(), 102);
    ASSERT_EQ(windows[k].cols(), 8);
    EXPECT_EQ(windows[k], rec.samples.middleRows(static_cast<Eigen::Index>(k) * 102, 102));
  }
}

TEST(SegmentWindows, recording_shorter_than_window) {
  EmgRecording rec(MatXd::Zero(50, 2), 1024.0);
  EXPECT_THROW(segment_windows(rec, 100.0), EmptyInputError);
}

TEST(SegmentWindows, exactly_one_window) {
  EmgRecording rec(MatXd::Zero(102, 3), 1024.0);
  EXPECT_EQ(segment_windows(rec, 100.0).size(), 1u);
}

TEST(SegmentWindows, overlapping_steps_and_bad_arguments) {
  EmgRecording rec(MatXd::Zero(1000, 1), 1000.0);
  EXPECT_EQ(segment_windows(rec, 100.0, 50.0).size(), oracle::window_count(1000, 100, 50));
  EXPECT_THROW(segment_windows(rec, 0.0), std::invalid_argument);
  EXPECT_THROW(segment_windows(rec, 100.0, -1.0), std::invalid_argument);
  // one sample per window is not enough for WL or SSC
  EXPECT_THROW(segment_windows(rec, 1.0), InsufficientSamplesError);
}

TEST(SegmentWindows, count_matches_enumeration) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> len(0, 3000);
  std::uniform_real_distribution<double> ms(2.0, 300.0);
  const std::array<double, 4> rates{500.0, 1000.0, 1024.0, 2048.0};
  for (int trial = 0; trial < 500; ++trial) {
    const double rate = rates[static_cast<std::size_t>(trial) % rates.size()];
    const double window_ms = ms(rng);
    const double step_ms = ms(rng);
    const auto win = static_cast<std::size_t>(std::floor(window_ms * rate / 1000.0));
    const auto step = static_cast<std::size_t>(std::floor(step_ms * rate / 1000.0));
    if (win < 2 || step < 1) continue;
    const auto n = static_cast<Eigen::Index>(len(rng));
    EmgRecording rec(MatXd::Zero(n, 1), rate);
    const std::size_t expected = oracle::window_count(static_cast<std::size_t>(n), win, step);
    if (expected == 0) {
      EXPECT_THROW(segment_windows(rec, window_ms, step_ms), EmptyInputError);
    } else {
      const auto windows = segment_windows(rec, window_ms, step_ms);
      ASSERT_EQ(windows.size(), expected) << "n=" << n << " win=" << win << " step=" << step;
      ASSERT_EQ(windows.front().rows(), static_cast<Eigen::Index>(win));
    }
  }
}

TEST(Mav, examples) {
  EXPECT_DOUBLE_EQ(mav(column({1, -1, 2, -2})).values(0), 1.5);
  EXPECT_EQ(mav(column({0, 0, 0})).values(0), 0.0);
  EXPECT_DOUBLE_EQ(mav(column({3, 4})).values(0), 3.5);
  EXPECT_EQ(mav(column({3, 4})).kind, FeatureKind::MAV);
  EXPECT_THROW(mav(MatXd(0, 2)), EmptyInputError);
}

TEST(Mav, works_on_blocks_and_float_windows) {
  Eigen::MatrixXf w(2, 2);
  w << 1, -2, -3, 4;
  const auto fv = mav(w);
  EXPECT_DOUBLE_EQ(fv.values(0), 2.0);
  EXPECT_DOUBLE_EQ(fv.values(1), 3.0);
  MatXd big = MatXd::Ones(10, 3);
  EXPECT_DOUBLE_EQ(mav(big.topRows(4)).values(2), 1.0);
}

TEST(ZeroCrossings, examples) {
  EXPECT_EQ(zero_crossings(column({1, -1, 1, -1}), 0.0).values(0), 3.0);
  EXPECT_EQ(zero_crossings(column({1, 2, 3, 4, 5})).values(0), 0.0);
  // |1 - (-1)| = 2 does not exceed 3
  EXPECT_EQ(zero_crossings(column({1, -1, 1}), 3.0).values(0), 0.0);
  EXPECT_THROW(zero_crossings(column({1, -1}), -1.0), std::invalid_argument);
}

TEST(SlopeSignChanges, examples) {
  EXPECT_EQ(slope_sign_changes(column({0, 1, 0, 1, 0}), 0.0).values(0), 3.0);
  EXPECT_EQ(slope_sign_changes(column({1, 2, 3, 4})).values(0), 0.0);
  EXPECT_EQ(slope_sign_changes(column({0, 1, 0}), 2.0).values(0), 0.0);
  EXPECT_THROW(slope_sign_changes(column({0, 1})), InsufficientSamplesError);
}

TEST(SlopeSignChanges, plateaus_are_not_extrema) {
  EXPECT_EQ(slope_sign_changes(column({0, 1, 1, 0})).values(0), 0.0);
}

TEST(WaveformLength, examples) {
  EXPECT_EQ(waveform_length(column({0, 1, 0})).values(0), 2.0);
  EXPECT_EQ(waveform_length(column({4, 4, 4, 4})).values(0), 0.0);
  EXPECT_EQ(waveform_length(column({1, -1, 2})).values(0), 5.0);
  EXPECT_THROW(waveform_length(column({1})), InsufficientSamplesError);
}

TEST(Features, scale_covariance_and_finiteness) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_real_distribution<double> scale(-5.0, 5.0);
  for (int trial = 0; trial < 200; ++trial) {
    MatXd w(40, 4);
    for (Eigen::Index i = 0; i < w.size(); ++i) w.data()[i] = g(rng);
    const double c = scale(rng);
    const MatXd scaled = c * w;
    EXPECT_TRUE(mav(scaled).values.isApprox(std::abs(c) * mav(w).values, 1e-12));
    EXPECT_TRUE(waveform_length(scaled).values.isApprox(std::abs(c) * waveform_length(w).values, 1e-12));
    if (c > 0.0) {
      EXPECT_EQ(zero_crossings(scaled).values, zero_crossings(w).values);
    }
    for (auto kind : {FeatureKind::MAV, FeatureKind::ZC, FeatureKind::SSC, FeatureKind::WL}) {
      const auto fv = extract_feature(w, kind);
      EXPECT_TRUE(fv.values.allFinite());
      EXPECT_GE(fv.values.minCoeff(), 0.0);
    }
  }
}

TEST(EmgCsv, round_trip_and_schema_errors) {
  const auto dir = std::filesystem::temp_directory_path() / "qmyo_signal_test";
  std::filesystem::create_directories(dir);
  EmgRecording rec(MatXd::Random(20, 3), 2048.0);
  write_emg_csv(dir / "rec.csv", rec);
  const auto back = read_emg_csv(dir / "rec.csv", 2048.0);
  EXPECT_EQ(back.samples, rec.samples);
  EXPECT_EQ(back.sample_rate, 2048.0);

  std::ofstream(dir / "bad.csv") << "ch1,ch2\n1,2\n3\n";
  EXPECT_THROW(read_emg_csv(dir / "bad.csv"), SchemaError);
  std::ofstream(dir / "noheader.csv") << "1,2\n";
  EXPECT_THROW(read_emg_csv(dir / "noheader.csv"), SchemaError);
  std::ofstream(dir / "nan.csv") << "ch1\nabc\n";
  EXPECT_THROW(read_emg_csv(dir / "nan.csv"), ParseError);
  std::filesystem::remove_all(dir);
}
