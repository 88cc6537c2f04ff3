#include "hqds/algebra.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace hqds {

std::string_view to_string(NilconeKind kind) {
  switch (kind) {
    case NilconeKind::OriginOnly: return "origin-only";
    case NilconeKind::OneLine: return "one-line";
    case NilconeKind::TwoLines: return "two-lines";
    case NilconeKind::Plane: return "plane";
    case NilconeKind::TwoPlanes: return "two-planes";
    case NilconeKind::WholeSpace: return "whole-space";
    case NilconeKind::Other: return "other";
  }
  return "other";
}

Subspace product_space(const StructureConstants& A, const Subspace& S, const Subspace& T) {
  std::vector<Vec3> products;
  for (int i = 0; i < S.dim(); ++i)
    for (int j = 0; j < T.dim(); ++j) products.push_back(product(A, S.vector(i), T.vector(j)));
  return span_of(products, tol::rank, A.max_abs());
}

Subspace annihilator(const StructureConstants& A) {
  Eigen::Matrix<double, 9, 3> stacked;
  for (int i = 0; i < 3; ++i) stacked.middleRows<3>(3 * i) = A.left_multiplication(Vec3::Unit(i));
  return null_space(stacked, tol::rank, A.max_abs());
}

Subspace square_ideal(const StructureConstants& A) {
  std::vector<Vec3> products;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) products.push_back(A.basis_product(i, j));
  return span_of(products, tol::rank, A.max_abs());
}

SubspaceCheck subspace_check(const StructureConstants& A, const Subspace& S) {
  const double bound = tol::residual * std::max(A.max_abs(), 1e-300);
  const Matrix3 P = S.projector();
  auto inside = [&](const Vec3& w) { return (w - P * w).norm() <= bound; };

  SubspaceCheck out{true, true};
  for (int i = 0; i < S.dim(); ++i) {
    for (int j = i; j < S.dim(); ++j)
      if (!inside(product(A, S.vector(i), S.vector(j)))) out.closed = false;
    for (int k = 0; k < 3; ++k)
      if (!inside(product(A, Vec3::Unit(k), S.vector(i)))) out.ideal = false;
  }
  return out;
}

double max_associator(const StructureConstants& A) {
  double worst = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        const Vec3 left = product(A, A.basis_product(i, j), Vec3::Unit(k));
        const Vec3 right = product(A, Vec3::Unit(i), A.basis_product(j, k));
        worst = std::max(worst, (left - right).norm());
      }
  return worst;
}

double power_associator_residual(const StructureConstants& A, const Vec3& x) {
  const double s = A.max_abs();
  const double scale = s * s * s * std::pow(x.norm(), 4);
  if (scale == 0.0) return 0.0;
  const Vec3 x2 = square(A, x);
  const Vec3 lhs = square(A, x2);
  const Vec3 rhs = product(A, product(A, x2, x), x);
  return (lhs - rhs).norm() / scale;
}

StructureFlags structure_flags(const StructureConstants& A) {
  StructureFlags flags;
  const Subspace whole = Subspace::whole();

  Subspace derived = square_ideal(A);
  for (int step = 0; step < 4 && !flags.solvable; ++step) {
    if (derived.dim() == 0) flags.solvable = true;
    else derived = product_space(A, derived, derived);
  }

  Subspace central = whole;
  for (int step = 0; step < 4 && !flags.nilpotent; ++step) {
    central = product_space(A, whole, central);
    if (central.dim() == 0) flags.nilpotent = true;
  }

  const double s = A.max_abs();
  flags.associative = max_associator(A) <= tol::residual * s * s;

  // (x^2)x^2 - ((x^2)x)x is a homogeneous quartic in three variables (15
  // monomials); it vanishes identically iff it vanishes on enough generic points.
  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  flags.power_associative = true;
  for (int n = 0; n < 24; ++n) {
    const Vec3 x(coord(rng), coord(rng), coord(rng));
    if (power_associator_residual(A, x) > tol::residual) {
      flags.power_associative = false;
      break;
    }
  }
  return flags;
}

bool is_nilpotent_element(const StructureConstants& A, const Vec3& v, double tolerance) {
  return square(A, v).norm() <= tolerance * A.max_abs() * (1.0 + v.squaredNorm());
}

namespace {

// Deterministic, nearly uniform points on the unit sphere.
std::vector<Vec3> fibonacci_sphere(int count) {
  std::vector<Vec3> points;
  points.reserve(static_cast<std::size_t>(count));
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < count; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / count;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * i;
    points.emplace_back(r * std::cos(phi), r * std::sin(phi), z);
  }
  return points;
}

Vec3 canonical_direction(Vec3 v) {
  v.normalize();
  Eigen::Index imax = 0;
  v.cwiseAbs().maxCoeff(&imax);
  return v[imax] < 0 ? Vec3(-v) : v;
}

// Minimum-norm Gauss-Newton on v -> v*v restricted to the unit sphere. Returns the
// final unit vector; the caller checks the residual.
Vec3 polish_on_cone(const StructureConstants& unit, Vec3 v) {
  double residual = square(unit, v).norm();
  for (int it = 0; it < 120 && residual > 1e-24; ++it) {
    const Vec3 F = square(unit, v);
    const Matrix3 J = 2.0 * unit.left_multiplication(v);
    Eigen::JacobiSVD<Matrix3> svd(J, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const double top = svd.singularValues()[0];
    if (top <= 1e-11) break;
    svd.setThreshold(std::max(1e-14, 1e-11 / top));
    const Vec3 step = -svd.solve(F);
    if (!step.allFinite() || step.norm() < 1e-17) break;

    double t = 1.0;
    bool improved = false;
    for (int backtrack = 0; backtrack < 12; ++backtrack, t *= 0.5) {
      const Vec3 candidate = (v + t * step).normalized();
      const double r = square(unit, candidate).norm();
      if (r < residual) {
        v = candidate;
        residual = r;
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  return v;
}

struct ComponentVerifier {
  const StructureConstants& unit;
  std::mt19937_64 rng{0xc0e};
  std::uniform_real_distribution<double> coord{-1.0, 1.0};

  bool plane(const Vec3& u1, const Vec3& u2) {
    for (int n = 0; n < 10; ++n) {
      const Vec3 w = coord(rng) * u1 + coord(rng) * u2;
      if (square(unit, w).norm() > tol::residual * (1.0 + w.squaredNorm())) return false;
    }
    return true;
  }

  bool line(const Vec3& u) {
    for (int n = 0; n < 10; ++n) {
      const Vec3 w = 4.0 * coord(rng) * u;
      if (square(unit, w).norm() > tol::residual * (1.0 + w.squaredNorm())) return false;
    }
    return true;
  }
};

}  // namespace

NilconeDescriptor nilpotent_cone(const StructureConstants& A) {
  NilconeDescriptor out;
  const double s = A.max_abs();
  if (s == 0.0) {
    out.kind = NilconeKind::WholeSpace;
    out.planes.push_back(Subspace::whole());
    return out;
  }
  StructureConstants unit = A;
  for (auto& c : unit.data()) c /= s;

  // Sample, keep the best-scoring fifth of the sphere, polish those.
  constexpr int kSamples = 10000;
  constexpr int kPolished = 2000;
  std::vector<Vec3> sphere = fibonacci_sphere(kSamples);
  std::vector<std::pair<double, int>> scored;
  scored.reserve(sphere.size());
  for (int i = 0; i < kSamples; ++i) scored.emplace_back(square(unit, sphere[i]).norm(), i);
  std::nth_element(scored.begin(), scored.begin() + kPolished, scored.end());
  scored.resize(kPolished);
  std::sort(scored.begin(), scored.end());

  std::vector<Vec3> roots;
  for (const auto& [score, index] : scored) {
    const Vec3 v = polish_on_cone(unit, sphere[static_cast<std::size_t>(index)]);
    if (square(unit, v).norm() <= 1e-14) roots.push_back(canonical_direction(v));
  }

  ComponentVerifier verify{unit};
  std::vector<bool> used(roots.size(), false);
  for (std::size_t first = 0; first < roots.size(); ++first) {
    if (used[first]) continue;
    const Vec3 r0 = roots[first];

    bool found_plane = false;
    int attempts = 0;
    for (std::size_t j = first + 1; j < roots.size() && attempts < 30; ++j) {
      if (used[j] || r0.cross(roots[j]).norm() < 0.1) continue;
      ++attempts;
      const Vec3 normal = r0.cross(roots[j]).normalized();
      const Vec3 u2 = normal.cross(r0).normalized();
      if (!verify.plane(r0, u2)) continue;
      Subspace plane;
      plane.basis.resize(3, 2);
      plane.basis << r0, u2;
      for (std::size_t k = first; k < roots.size(); ++k)
        if (std::abs(normal.dot(roots[k])) <= tol::dedup) used[k] = true;
      out.planes.push_back(plane);
      found_plane = true;
      break;
    }
    if (found_plane) continue;

    for (std::size_t k = first; k < roots.size(); ++k)
      if (!used[k] && r0.cross(roots[k]).norm() <= tol::dedup) used[k] = true;
    if (!verify.line(r0)) continue;
    Subspace line;
    line.basis = r0;
    out.lines.push_back(line);
  }

  for (const auto& plane : out.planes) {
    out.samples.push_back(plane.vector(0));
    out.samples.push_back(plane.vector(1));
    out.samples.push_back((plane.vector(0) + plane.vector(1)).normalized());
  }
  for (const auto& line : out.lines) out.samples.push_back(line.vector(0));

  const std::size_t n_lines = out.lines.size();
  const std::size_t n_planes = out.planes.size();
  if (n_lines == 0 && n_planes == 0) out.kind = NilconeKind::OriginOnly;
  else if (n_planes == 0 && n_lines == 1) out.kind = NilconeKind::OneLine;
  else if (n_planes == 0 && n_lines == 2) out.kind = NilconeKind::TwoLines;
  else if (n_planes == 1 && n_lines == 0) out.kind = NilconeKind::Plane;
  else if (n_planes == 2 && n_lines == 0) out.kind = NilconeKind::TwoPlanes;
  else out.kind = NilconeKind::Other;
  return out;
}

std::vector<Vec3> idempotents(const StructureConstants& A) {
  std::vector<Vec3> found;
  const double s = A.max_abs();
  if (s == 0.0) return found;
  StructureConstants unit = A;
  for (auto& c : unit.data()) c /= s;

  constexpr int kPerAxis = 10;
  for (int a = 0; a < kPerAxis; ++a)
    for (int b = 0; b < kPerAxis; ++b)
      for (int c = 0; c < kPerAxis; ++c) {
        auto grid = [](int i) { return -2.0 + 4.0 * i / (kPerAxis - 1); };
        Vec3 v(grid(a), grid(b), grid(c));
        for (int it = 0; it < 60; ++it) {
          const Vec3 G = square(unit, v) - v;
          if (G.norm() <= 1e-15 * (1.0 + v.norm())) break;
          const Matrix3 J = 2.0 * unit.left_multiplication(v) - Matrix3::Identity();
          const Eigen::FullPivLU<Matrix3> lu(J);
          Vec3 step;
          if (lu.isInvertible()) {
            step = -lu.solve(G);
          } else {
            const Matrix3 JtJ = J.transpose() * J;
            step = -(JtJ + (1e-10 * JtJ.trace() + 1e-300) * Matrix3::Identity())
                        .ldlt()
                        .solve(J.transpose() * G);
          }
          v += step;
          if (!v.allFinite() || v.norm() > 1e6) break;
        }
        if (!v.allFinite() || v.norm() <= tol::dedup) continue;
        if ((square(unit, v) - v).norm() > tol::residual * std::max(1.0, v.squaredNorm())) continue;
        const Vec3 idem = v / s;
        const bool duplicate = std::any_of(found.begin(), found.end(), [&](const Vec3& w) {
          return (w - idem).norm() <= tol::dedup * std::max(1.0, w.norm());
        });
        if (!duplicate) found.push_back(idem);
      }

  std::sort(found.begin(), found.end(), [](const Vec3& x, const Vec3& y) {
    return std::lexicographical_compare(x.data(), x.data() + 3, y.data(), y.data() + 3);
  });
  return found;
}

}  // namespace hqds
