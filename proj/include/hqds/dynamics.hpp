#pragma once

#include "hqds/algebra.hpp"
#include "hqds/classify.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hqds {

/// x' = x * x for the algebra with the given constants.
struct Hqds {
  StructureConstants constants;

  Vec3 field(const Vec3& x) const { return square(constants, x); }
};

/// The four canonical systems, k = 1..4, i.e. x' = x * x over A1..A4.
Hqds canonical_system(int k);

enum class CellKind {
  AxisPoint,      ///< singleton on a coordinate axis
  PlanePoint,     ///< singleton on a coordinate plane
  HalfPlane,      ///< open half-plane bounded by a coordinate axis
  HalfSpace       ///< open half-space bounded by a coordinate plane
};

std::string_view to_string(CellKind kind);

/// A cell of the partition by subalgebras. Pointwise cells carry the point
/// as anchor; half-planes carry their polar angle; half-spaces carry a sign.
struct CellId {
  CanonicalClass cls = CanonicalClass::A1;
  CellKind kind = CellKind::AxisPoint;
  std::string label;
  double angle = 0.0;
  Vec3 anchor = Vec3::Zero();
};

CellId cell_of(CanonicalClass cls, const Vec3& x);

/// True when both ids name the same cell; angles and anchors are compared
/// with the given tolerance.
bool same_cell(const CellId& a, const CellId& b, double tolerance = 1e-9);

/// Short text form, e.g. "half-plane(theta=0.785398)".
std::string describe(const CellId& id);

enum class Termination { TEndReached, BlowupGuard, StepUnderflow };

std::string_view to_string(Termination t);

struct Sample {
  double t = 0.0;
  Vec3 x = Vec3::Zero();
  double speed = 0.0;
  std::optional<double> curvature;
  std::optional<double> torsion;
  std::optional<CellId> cell;
};

struct Trajectory {
  std::vector<Sample> samples;
  Termination terminated = Termination::TEndReached;

  const Sample& back() const { return samples.back(); }
};

struct IntegrateOptions {
  double rel_tol = 1e-10;
  double blowup = 1e8;
  double min_step = 1e-14;
  /// When set, cells are tracked in the canonical coordinates to_canonical * x.
  std::optional<CanonicalClass> cell_class;
  Matrix3 to_canonical = Matrix3::Identity();
};

/// Classical RK4 with step-doubling error control. Throws
/// std::invalid_argument unless t_end > 0 and h0 > 0.
Trajectory integrate(const Hqds& sys, const Vec3& x0, double t_end, double h0,
                     const IntegrateOptions& options = {});

struct Derivatives {
  Vec3 first, second, third;
};

Derivatives analytic_derivatives(const Hqds& sys, const Vec3& x);

struct CurvatureTorsion {
  double curvature = 0.0;
  std::optional<double> torsion;
};

/// Throws DegenerateVelocity when |x'| <= tol::geometry.
CurvatureTorsion curvature_torsion(const Vec3& d1, const Vec3& d2, const Vec3& d3);

/// Covectors vanishing on A^2, one per row.
Eigen::Matrix<double, Eigen::Dynamic, 3> linear_first_integrals(const Hqds& sys);

struct PointCheck {
  Vec3 point = Vec3::Zero();
  double field_norm = 0.0;
  double drift = 0.0;
  bool passed = false;
};

struct CheckReport {
  std::vector<PointCheck> points;
  bool passed = true;
  double worst = 0.0;
};

/// Sampled cone points (plus the origin) must be stationary: |F(v)| within
/// tol::residual and integration over [0, 1] drifting by at most 1e-9.
CheckReport steady_states_check(const Hqds& sys, const NilconeDescriptor& descriptor);

/// For classes A2..A4, x(t) = x0 + t x0^2 solves the system exactly. Compares
/// the closed form against the integrator on [0, 10]. Throws
/// PreconditionFailed for other classes.
CheckReport affine_solution_check(const Hqds& sys, const std::vector<Vec3>& starts);

struct PropertyResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Runs the dictionary checks that apply to the class of A: steady states,
/// first-integral drift and ray solutions for every algebra; cell invariance
/// and the curvature, torsion and affine-solution claims for A1..A4, checked
/// in the coordinates of the classification certificate. Sorted by name.
std::vector<PropertyResult> verify_dictionary(const StructureConstants& A, std::uint64_t seed = 0);

/// CSV with header t,x1,x2,x3,speed,curvature,torsion,cell.
void write_csv(std::ostream& out, const Trajectory& trajectory);

}  // namespace hqds
