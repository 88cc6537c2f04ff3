#pragma once

#include "hqds/core.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <vector>

namespace hqds {

/// Linear subspace of R^3 held by an orthonormal basis (columns of `basis`).
struct Subspace {
  Eigen::Matrix<double, 3, Eigen::Dynamic> basis{3, 0};

  int dim() const { return static_cast<int>(basis.cols()); }
  Vec3 vector(int i) const { return basis.col(i); }

  /// Orthogonal projection onto the subspace.
  Matrix3 projector() const { return basis * basis.transpose(); }

  /// Distance of v from the subspace.
  double distance(const Vec3& v) const { return (v - projector() * v).norm(); }

  bool contains(const Vec3& v, double tolerance = tol::dedup) const {
    return distance(v) <= tolerance * std::max(1.0, v.norm());
  }

  static Subspace zero() { return {}; }
  static Subspace whole() { return {Matrix3::Identity()}; }
};

/// Span of the given columns. A singular value counts toward the rank when it
/// exceeds rank_tol * max(largest singular value, reference); pass the
/// magnitude of the generating data as `reference` so that pure round-off
/// does not register as a direction.
Subspace span_of(const Eigen::Ref<const Eigen::Matrix<double, 3, Eigen::Dynamic>>& columns,
                 double rank_tol = tol::rank, double reference = 0.0);
Subspace span_of(const std::vector<Vec3>& vectors, double rank_tol = tol::rank,
                 double reference = 0.0);

/// Right nullspace {x in R^3 : M x = 0} of an n x 3 matrix, same threshold rule.
Subspace null_space(const Eigen::Ref<const Eigen::Matrix<double, Eigen::Dynamic, 3>>& M,
                    double rank_tol = tol::rank, double reference = 0.0);

Subspace orthogonal_complement(const Subspace& S);

/// S is contained in T (each basis vector of S lies in T within tolerance).
bool is_contained(const Subspace& S, const Subspace& T, double tolerance = tol::dedup);

/// Sum S + T.
Subspace sum(const Subspace& S, const Subspace& T);

/// Numerical rank of a dense matrix by singular-value thresholding.
int numerical_rank(const Eigen::Ref<const Eigen::MatrixXd>& M, double rank_tol = tol::rank);

}  // namespace hqds
