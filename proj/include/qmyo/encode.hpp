#pragma once

#include "qmyo/errors.hpp"
#include "qmyo/fwd.hpp"
#include "qmyo/signal.hpp"

#include <cmath>

namespace qmyo {

inline constexpr double kUnitNormTolerance = 1e-12;

/// Real unit-norm amplitude vector, one amplitude per channel.
class QuantumState {
 public:
  QuantumState() = default;

  /// Takes amplitudes that are already unit norm; throws if they are not.
  static QuantumState from_unit(VecXd amplitudes);

  const VecXd& amplitudes() const { return amplitudes_; }
  Eigen::Index dim() const { return amplitudes_.size(); }
  double operator[](Eigen::Index i) const { return amplitudes_(i); }

  friend bool operator==(const QuantumState& a, const QuantumState& b) {
    return a.amplitudes_ == b.amplitudes_;
  }

 private:
  explicit QuantumState(VecXd a) : amplitudes_(std::move(a)) {}
  VecXd amplitudes_;
};

/// a / ||a||. Throws ZeroSignalError for the zero vector.
template <typename Derived>
Vec<typename Derived::Scalar> normalized_amplitudes(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  const Scalar norm = a.norm();
  if (!(norm > Scalar(0))) {
    throw ZeroSignalError("encode: feature vector has no nonzero entry");
  }
  if (!std::isfinite(static_cast<double>(norm))) {
    throw NumericError("encode: non-finite feature values");
  }
  return a / norm;
}

QuantumState encode(const FeatureVector& fv);
QuantumState encode(const VecXd& feature_values);

double inner_product(const QuantumState& a, const QuantumState& b);

}  // namespace qmyo
