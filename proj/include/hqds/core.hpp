#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <string>

namespace hqds {

using Vec3 = Eigen::Vector3d;
using Matrix3 = Eigen::Matrix3d;

/// Numerical thresholds shared by every module. Residual and rank
/// thresholds are relative to the magnitude of the inputs they test.
namespace tol {
inline constexpr double residual = 1e-9;
inline constexpr double rank = 1e-9;
inline constexpr double dedup = 1e-6;
inline constexpr double certificate = 1e-8;
inline constexpr double geometry = 1e-12;
}  // namespace tol

struct SingularBasis : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SingularSpectrum : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IllConditioned : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PreconditionFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DegenerateVelocity : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace hqds
