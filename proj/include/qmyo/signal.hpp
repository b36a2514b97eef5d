#pragma once

#include "qmyo/errors.hpp"
#include "qmyo/fwd.hpp"

#include <cmath>
#include <filesystem>
#include <string_view>
#include <vector>

namespace qmyo {

/// Raw surface EMG: rows are time samples, columns are electrode channels.
struct EmgRecording {
  MatXd samples;
  double sample_rate = 1024.0;

  EmgRecording() = default;
  EmgRecording(MatXd samples_, double sample_rate_);

  Eigen::Index n_channels() const { return samples.cols(); }
  Eigen::Index n_samples() const { return samples.rows(); }
};

enum class FeatureKind : std::uint8_t { MAV, ZC, SSC, WL };

std::string_view to_string(FeatureKind k);
FeatureKind parse_feature_kind(std::string_view text);

/// One value per channel. MAV and WL are non-negative reals, ZC and SSC are
/// counts stored as reals.
struct FeatureVector {
  VecXd values;
  FeatureKind kind = FeatureKind::MAV;
};

/// Number of rows covered by a duration at the given rate, floor-rounded.
Eigen::Index rows_for_duration(double duration_ms, double sample_rate);

/// Non-overlapping windows by default (step_ms == window_ms). The trailing
/// partial window is dropped.
std::vector<MatXd> segment_windows(const EmgRecording& rec, double window_ms,
                                   double step_ms);
inline std::vector<MatXd> segment_windows(const EmgRecording& rec, double window_ms) {
  return segment_windows(rec, window_ms, window_ms);
}

template <typename Derived>
FeatureVector mav(const Eigen::MatrixBase<Derived>& window) {
  if (window.rows() == 0 || window.cols() == 0) {
    throw EmptyInputError("mav: empty window");
  }
  FeatureVector out{VecXd(window.cols()), FeatureKind::MAV};
  for (Eigen::Index c = 0; c < window.cols(); ++c) {
    out.values(c) = window.col(c).template cast<double>().cwiseAbs().mean();
  }
  return out;
}

/// Sign changes between consecutive samples whose absolute difference
/// exceeds the deadband.
template <typename Derived>
FeatureVector zero_crossings(const Eigen::MatrixBase<Derived>& window,
                             double deadband = 0.0) {
  if (deadband < 0.0) throw std::invalid_argument("zero_crossings: negative deadband");
  FeatureVector out{VecXd::Zero(window.cols()), FeatureKind::ZC};
  for (Eigen::Index c = 0; c < window.cols(); ++c) {
    double count = 0.0;
    for (Eigen::Index t = 0; t + 1 < window.rows(); ++t) {
      const double a = window(t, c);
      const double b = window(t + 1, c);
      if (a * b < 0.0 && std::abs(a - b) > deadband) count += 1.0;
    }
    out.values(c) = count;
  }
  return out;
}

/// Interior strict local extrema where both neighbour differences exceed the
/// deadband in magnitude.
template <typename Derived>
FeatureVector slope_sign_changes(const Eigen::MatrixBase<Derived>& window,
                                 double deadband = 0.0) {
  if (deadband < 0.0) throw std::invalid_argument("slope_sign_changes: negative deadband");
  if (window.rows() < 3) {
    throw InsufficientSamplesError("slope_sign_changes: need at least 3 samples");
  }
  FeatureVector out{VecXd::Zero(window.cols()), FeatureKind::SSC};
  for (Eigen::Index c = 0; c < window.cols(); ++c) {
    double count = 0.0;
    for (Eigen::Index t = 1; t + 1 < window.rows(); ++t) {
      const double left = window(t, c) - window(t - 1, c);
      const double right = window(t, c) - window(t + 1, c);
      // both positive: peak, both negative: trough
      if (left * right > 0.0 && std::abs(left) > deadband && std::abs(right) > deadband) {
        count += 1.0;
      }
    }
    out.values(c) = count;
  }
  return out;
}

template <typename Derived>
FeatureVector waveform_length(const Eigen::MatrixBase<Derived>& window) {
  if (window.rows() < 2) {
    throw InsufficientSamplesError("waveform_length: need at least 2 samples");
  }
  const Eigen::Index n = window.rows();
  FeatureVector out{VecXd(window.cols()), FeatureKind::WL};
  for (Eigen::Index c = 0; c < window.cols(); ++c) {
    out.values(c) = (window.col(c).tail(n - 1) - window.col(c).head(n - 1))
                        .template cast<double>()
                        .cwiseAbs()
                        .sum();
  }
  return out;
}

FeatureVector extract_feature(const MatXd& window, FeatureKind kind, double deadband = 0.0);

/// Reads a raw recording CSV with a header row `ch1,...,chN`.
EmgRecording read_emg_csv(const std::filesystem::path& path, double sample_rate = 1024.0);
void write_emg_csv(const std::filesystem::path& path, const EmgRecording& rec);

}  // namespace qmyo
