#include "hqds/dynamics.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace hqds {

Hqds canonical_system(int k) {
  switch (k) {
    case 1: return {canonical_table(CanonicalClass::A1)};
    case 2: return {canonical_table(CanonicalClass::A2)};
    case 3: return {canonical_table(CanonicalClass::A3)};
    case 4: return {canonical_table(CanonicalClass::A4)};
    default: throw std::invalid_argument("canonical_system: k must be 1..4");
  }
}

std::string_view to_string(CellKind kind) {
  switch (kind) {
    case CellKind::AxisPoint: return "axis-point";
    case CellKind::PlanePoint: return "plane-point";
    case CellKind::HalfPlane: return "half-plane";
    case CellKind::HalfSpace: return "half-space";
  }
  return "half-space";
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::TEndReached: return "t_end_reached";
    case Termination::BlowupGuard: return "blowup_guard";
    case Termination::StepUnderflow: return "step_underflow";
  }
  return "t_end_reached";
}

namespace {

CellId point_cell(CanonicalClass cls, CellKind kind, std::string label, const Vec3& x) {
  CellId id;
  id.cls = cls;
  id.kind = kind;
  id.label = std::move(label);
  id.anchor = x;
  return id;
}

CellId half_plane(CanonicalClass cls, std::string label, double angle) {
  CellId id;
  id.cls = cls;
  id.kind = CellKind::HalfPlane;
  id.label = std::move(label);
  id.angle = angle;
  return id;
}

CellId half_space(CanonicalClass cls, std::string label, double sign) {
  CellId id;
  id.cls = cls;
  id.kind = CellKind::HalfSpace;
  id.label = std::move(label);
  id.angle = sign;
  return id;
}

}  // namespace

CellId cell_of(CanonicalClass cls, const Vec3& x) {
  const double eps = tol::geometry * std::max(1.0, x.norm());
  const auto zero = [eps](double v) { return std::abs(v) <= eps; };
  switch (cls) {
    case CanonicalClass::A1:
      if (zero(x[0]) && zero(x[2])) return point_cell(cls, CellKind::AxisPoint, "axis Ox2", x);
      if (zero(x[0]) && zero(x[1])) return point_cell(cls, CellKind::AxisPoint, "axis Ox3", x);
      if (zero(x[1]))
        return x[0] > 0.0 ? half_plane(cls, "half-plane x2=0, x1>0", 0.0)
                          : half_plane(cls, "half-plane x2=0, x1<0", std::numbers::pi);
      return x[1] > 0.0 ? half_space(cls, "half-space x2>0", 2.0)
                        : half_space(cls, "half-space x2<0", -2.0);
    case CanonicalClass::A2:
      if (zero(x[2])) return point_cell(cls, CellKind::PlanePoint, "plane x1Ox2", x);
      return half_plane(cls, "half-plane about Ox2", std::atan2(x[2], x[0]));
    case CanonicalClass::A3:
      if (zero(x[1])) return point_cell(cls, CellKind::PlanePoint, "plane x1Ox3", x);
      if (zero(x[0])) return point_cell(cls, CellKind::PlanePoint, "plane x2Ox3", x);
      return half_plane(cls, "half-plane about Ox3", std::atan2(x[1], x[0]));
    case CanonicalClass::A4:
      if (zero(x[0]) && zero(x[1])) return point_cell(cls, CellKind::AxisPoint, "axis Ox3", x);
      return half_plane(cls, "half-plane about Ox3", std::atan2(x[1], x[0]));
    default:
      throw PreconditionFailed("cell_of: the partition is listed only for A1..A4");
  }
}

bool same_cell(const CellId& a, const CellId& b, double tolerance) {
  if (a.cls != b.cls || a.kind != b.kind || a.label != b.label) return false;
  switch (a.kind) {
    case CellKind::AxisPoint:
    case CellKind::PlanePoint:
      return (a.anchor - b.anchor).norm() <= tolerance * std::max(1.0, a.anchor.norm());
    case CellKind::HalfPlane:
      return std::abs(a.angle - b.angle) <= tolerance;
    case CellKind::HalfSpace:
      return a.angle == b.angle;
  }
  return false;
}

std::string describe(const CellId& id) {
  std::ostringstream out;
  out.precision(9);
  out << id.label;
  if (id.kind == CellKind::HalfPlane) out << " theta=" << id.angle;
  if (id.kind == CellKind::AxisPoint || id.kind == CellKind::PlanePoint)
    out << " (" << id.anchor[0] << " " << id.anchor[1] << " " << id.anchor[2] << ")";
  return out.str();
}

Derivatives analytic_derivatives(const Hqds& sys, const Vec3& x) {
  const auto& A = sys.constants;
  Derivatives d;
  d.first = square(A, x);
  d.second = 2.0 * product(A, x, d.first);
  d.third = 2.0 * (square(A, d.first) + product(A, x, d.second));
  return d;
}

CurvatureTorsion curvature_torsion(const Vec3& d1, const Vec3& d2, const Vec3& d3) {
  const double speed = d1.norm();
  if (speed <= tol::geometry) throw DegenerateVelocity("curvature_torsion: |x'| <= 1e-12");
  const Vec3 binormal = d1.cross(d2);
  const double b = binormal.norm();
  CurvatureTorsion ct;
  ct.curvature = b / (speed * speed * speed);
  if (b > tol::geometry) ct.torsion = binormal.dot(d3) / (b * b);
  return ct;
}

namespace {

Vec3 rk4_step(const Hqds& sys, const Vec3& x, double h) {
  const Vec3 k1 = sys.field(x);
  const Vec3 k2 = sys.field(x + 0.5 * h * k1);
  const Vec3 k3 = sys.field(x + 0.5 * h * k2);
  const Vec3 k4 = sys.field(x + h * k3);
  return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

Sample make_sample(const Hqds& sys, double t, const Vec3& x, const IntegrateOptions& options) {
  Sample s;
  s.t = t;
  s.x = x;
  const Derivatives d = analytic_derivatives(sys, x);
  s.speed = d.first.norm();
  if (s.speed > tol::geometry) {
    const CurvatureTorsion ct = curvature_torsion(d.first, d.second, d.third);
    s.curvature = ct.curvature;
    s.torsion = ct.torsion;
  }
  if (options.cell_class) s.cell = cell_of(*options.cell_class, options.to_canonical * x);
  return s;
}

}  // namespace

Trajectory integrate(const Hqds& sys, const Vec3& x0, double t_end, double h0,
                     const IntegrateOptions& options) {
  if (!(t_end > 0.0)) throw std::invalid_argument("integrate: t_end must be positive");
  if (!(h0 > 0.0)) throw std::invalid_argument("integrate: h0 must be positive");

  Trajectory traj;
  double t = 0.0;
  Vec3 x = x0;
  double h = std::min(h0, t_end);
  traj.samples.push_back(make_sample(sys, t, x, options));

  while (t < t_end) {
    const bool last = t + h >= t_end;
    const double step = last ? t_end - t : h;
    const Vec3 full = rk4_step(sys, x, step);
    const Vec3 halves = rk4_step(sys, rk4_step(sys, x, 0.5 * step), 0.5 * step);
    const double error = (halves - full).cwiseAbs().maxCoeff() / 15.0;
    const double allowed = options.rel_tol * std::max(x.cwiseAbs().maxCoeff(),
                                                      halves.cwiseAbs().maxCoeff());

    if (!(error <= allowed) || (!last && t + step == t)) {
      h = 0.5 * step;
      if (h < options.min_step) {
        traj.terminated = Termination::StepUnderflow;
        return traj;
      }
      continue;
    }

    t = last ? t_end : t + step;
    x = halves;
    traj.samples.push_back(make_sample(sys, t, x, options));
    if (x.norm() > options.blowup) {
      traj.terminated = Termination::BlowupGuard;
      return traj;
    }
    if (error < allowed / 64.0) h = 2.0 * step;
    else h = step;
  }
  traj.terminated = Termination::TEndReached;
  return traj;
}

Eigen::Matrix<double, Eigen::Dynamic, 3> linear_first_integrals(const Hqds& sys) {
  const Subspace covectors = orthogonal_complement(square_ideal(sys.constants));
  return covectors.basis.transpose();
}

CheckReport steady_states_check(const Hqds& sys, const NilconeDescriptor& descriptor) {
  std::vector<Vec3> points{Vec3::Zero()};
  for (const Vec3& v : descriptor.samples) points.push_back(v);

  const double scale = std::max(1.0, sys.constants.max_abs());
  CheckReport report;
  for (const Vec3& v : points) {
    PointCheck pc;
    pc.point = v;
    pc.field_norm = sys.field(v).norm();
    const Trajectory traj = integrate(sys, v, 1.0, 1e-2);
    for (const Sample& s : traj.samples) pc.drift = std::max(pc.drift, (s.x - v).norm());
    pc.passed = pc.field_norm <= tol::residual * scale && pc.drift <= 1e-9 &&
                traj.terminated == Termination::TEndReached;
    report.worst = std::max({report.worst, pc.field_norm, pc.drift});
    report.passed = report.passed && pc.passed;
    report.points.push_back(pc);
  }
  return report;
}

CheckReport affine_solution_check(const Hqds& sys, const std::vector<Vec3>& starts) {
  const ClassificationResult cls = classify(sys.constants);
  if (cls.cls != CanonicalClass::A2 && cls.cls != CanonicalClass::A3 &&
      cls.cls != CanonicalClass::A4)
    throw PreconditionFailed("affine_solution_check: requires class A2, A3 or A4");

  const double scale = std::max(1.0, sys.constants.max_abs());
  CheckReport report;
  for (const Vec3& x0 : starts) {
    PointCheck pc;
    pc.point = x0;
    const Vec3 v = sys.field(x0);
    const Trajectory traj = integrate(sys, x0, 10.0, 1e-2);
    for (const Sample& s : traj.samples) {
      const Vec3 closed = x0 + s.t * v;
      const double reference = std::max(1.0, closed.norm());
      pc.field_norm =
          std::max(pc.field_norm, (sys.field(closed) - v).norm() / (scale * reference * reference));
      pc.drift = std::max(pc.drift, (s.x - closed).norm() / reference);
    }
    pc.passed = pc.field_norm <= tol::residual && pc.drift <= 1e-9 &&
                traj.terminated == Termination::TEndReached;
    report.worst = std::max({report.worst, pc.field_norm, pc.drift});
    report.passed = report.passed && pc.passed;
    report.points.push_back(pc);
  }
  return report;
}

namespace {

void put(std::ostream& out, double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", v);
  out << buffer;
}

}  // namespace

void write_csv(std::ostream& out, const Trajectory& trajectory) {
  out << "t,x1,x2,x3,speed,curvature,torsion,cell\n";
  for (const Sample& s : trajectory.samples) {
    put(out, s.t);
    for (int i = 0; i < 3; ++i) {
      out << ',';
      put(out, s.x[i]);
    }
    out << ',';
    put(out, s.speed);
    out << ',';
    if (s.curvature) put(out, *s.curvature);
    out << ',';
    if (s.torsion) put(out, *s.torsion);
    out << ',';
    if (s.cell) {
      std::string text = describe(*s.cell);
      std::replace(text.begin(), text.end(), ',', ';');
      out << text;
    }
    out << '\n';
  }
}

namespace {

std::string format_value(const char* name, double value) {
  char buffer[96];
  std::snprintf(buffer, sizeof buffer, "%s = %.3g", name, value);
  return buffer;
}

PropertyResult property(std::string name, bool passed, std::string detail) {
  return {std::move(name), passed, std::move(detail)};
}

std::vector<Vec3> random_starts(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  std::vector<Vec3> starts;
  while (static_cast<int>(starts.size()) < count) {
    const Vec3 v(coord(rng), coord(rng), coord(rng));
    if (v.norm() <= 1.0) starts.push_back(v);
  }
  return starts;
}

}  // namespace

std::vector<PropertyResult> verify_dictionary(const StructureConstants& A, std::uint64_t seed) {
  const Hqds sys{A};
  std::vector<PropertyResult> results;
  const std::vector<Vec3> starts = random_starts(seed, 10);

  const CheckReport steady = steady_states_check(sys, nilpotent_cone(A));
  results.push_back(property("steady_states", steady.passed,
                             format_value("worst drift or field norm", steady.worst)));

  const auto integrals = linear_first_integrals(sys);
  double drift = 0.0;
  std::vector<Trajectory> trajectories;
  for (const Vec3& x0 : starts) {
    trajectories.push_back(integrate(sys, x0, 1.0, 1e-2));
    for (const Sample& s : trajectories.back().samples)
      drift = std::max(drift, (integrals * (s.x - x0)).cwiseAbs().maxCoeff() /
                                  std::max(1.0, s.x.norm()));
  }
  results.push_back(property("first_integrals", drift < 1e-8,
                             std::to_string(integrals.rows()) + " covectors, " +
                                 format_value("max drift", drift)));

  const std::vector<Vec3> idems = idempotents(A);
  double ray_error = 0.0;
  for (const Vec3& e : idems) {
    const Trajectory traj = integrate(sys, e, 0.9, 1e-2);
    for (const Sample& s : traj.samples) {
      const Vec3 exact = e / (1.0 - s.t);
      ray_error = std::max(ray_error, (s.x - exact).norm() / exact.norm());
    }
  }
  results.push_back(property("ray_solutions", ray_error < 1e-6,
                             std::to_string(idems.size()) + " idempotents, " +
                                 format_value("max relative error", ray_error)));

  const ClassificationResult cls = classify(A, seed);
  if (is_canonical(cls.cls)) {
    const Matrix3 to_canonical = cls.basis_change->inverse();
    const Hqds canonical{canonical_table(cls.cls)};

    bool cells_kept = true;
    double worst_curvature = 0.0;
    double worst_torsion = 0.0;
    for (const Trajectory& traj : trajectories) {
      const CellId first = cell_of(cls.cls, to_canonical * traj.samples.front().x);
      for (const Sample& s : traj.samples) {
        const Vec3 y = to_canonical * s.x;
        if (!same_cell(first, cell_of(cls.cls, y))) cells_kept = false;
        const Derivatives d = analytic_derivatives(canonical, y);
        if (d.first.norm() <= tol::geometry) continue;
        const CurvatureTorsion ct = curvature_torsion(d.first, d.second, d.third);
        worst_curvature = std::max(worst_curvature, ct.curvature);
        if (ct.torsion) worst_torsion = std::max(worst_torsion, std::abs(*ct.torsion));
      }
    }
    results.push_back(property("cell_invariance", cells_kept,
                               std::string("class ") + std::string(to_string(cls.cls))));
    if (cls.cls == CanonicalClass::A1) {
      results.push_back(property("zero_torsion", worst_torsion < 1e-6,
                                 format_value("max |torsion|", worst_torsion)));
    } else {
      results.push_back(property("zero_curvature", worst_curvature < 1e-9,
                                 format_value("max curvature", worst_curvature)));
      const CheckReport affine = affine_solution_check(sys, starts);
      results.push_back(property("affine_solutions", affine.passed,
                                 format_value("worst residual", affine.worst)));
    }
  }

  std::sort(results.begin(), results.end(),
            [](const PropertyResult& a, const PropertyResult& b) { return a.name < b.name; });
  return results;
}

}  // namespace hqds
