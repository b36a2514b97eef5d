#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

namespace qmyo {

static constexpr auto DYN = Eigen::Dynamic;

template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, DYN, 1>;
template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, DYN, DYN>;

using VecXd = Vec<double>;
using MatXd = Mat<double>;

/// Wrist degrees of freedom. D1 flexion/extension, D2 radial/ulnar deviation,
/// D3 pronation/supination.
enum class Dof : std::uint8_t { D1 = 0, D2 = 1, D3 = 2 };
inline constexpr std::array<Dof, 3> kAllDofs{Dof::D1, Dof::D2, Dof::D3};
inline constexpr std::size_t kMaxDofs = 3;

/// Positive is flexion/radial/pronation, negative is extension/ulnar/supination.
enum class Direction : std::int8_t { Negative = -1, Rest = 0, Positive = 1 };

enum class MovementPhase : std::uint8_t { Direct, Return };

inline constexpr std::size_t index_of(Dof d) { return static_cast<std::size_t>(d); }

std::string_view to_string(Dof d);
std::string_view to_string(Direction d);
std::string_view to_string(MovementPhase p);

/// Accepts "D1".."D3" (case-insensitive) or "1".."3".
Dof parse_dof(std::string_view text);
MovementPhase parse_phase(std::string_view text);

inline Direction direction_of(double signed_value) {
  if (signed_value > 0.0) return Direction::Positive;
  if (signed_value < 0.0) return Direction::Negative;
  return Direction::Rest;
}

}  // namespace qmyo
