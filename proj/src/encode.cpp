#include "qmyo/encode.hpp"

#include <string>

namespace qmyo {

QuantumState QuantumState::from_unit(VecXd amplitudes) {
  if (!amplitudes.allFinite()) throw NumericError("QuantumState: non-finite amplitude");
  const double norm2 = amplitudes.squaredNorm();
  if (std::abs(norm2 - 1.0) > kUnitNormTolerance) {
    throw NumericError("QuantumState: amplitudes not unit norm (|a|^2 = " +
                       std::to_string(norm2) + ")");
  }
  return QuantumState(std::move(amplitudes));
}

QuantumState encode(const VecXd& feature_values) {
  if (feature_values.size() == 0) throw DimensionError("encode: empty feature vector");
  return QuantumState::from_unit(normalized_amplitudes(feature_values));
}

QuantumState encode(const FeatureVector& fv) { return encode(fv.values); }

double inner_product(const QuantumState& a, const QuantumState& b) {
  if (a.dim() != b.dim()) {
    throw DimensionError("inner_product: dimensions " + std::to_string(a.dim()) + " and " +
                         std::to_string(b.dim()));
  }
  return a.amplitudes().dot(b.amplitudes());
}

}  // namespace qmyo
