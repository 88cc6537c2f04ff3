#include "hqds/subspace.hpp"

#include <Eigen/SVD>

namespace hqds {

namespace {

int rank_from(const Eigen::VectorXd& sv, double rank_tol, double reference) {
  if (sv.size() == 0) return 0;
  const double threshold = rank_tol * std::max(sv[0], reference);
  if (sv[0] == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv[i] > threshold) ++rank;
  return rank;
}

}  // namespace

int numerical_rank(const Eigen::Ref<const Eigen::MatrixXd>& M, double rank_tol) {
  if (M.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
  return rank_from(svd.singularValues(), rank_tol, 0.0);
}

Subspace span_of(const Eigen::Ref<const Eigen::Matrix<double, 3, Eigen::Dynamic>>& columns,
                 double rank_tol, double reference) {
  Subspace S;
  if (columns.cols() == 0) return S;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(Eigen::MatrixXd(columns), Eigen::ComputeFullU);
  const int rank = rank_from(svd.singularValues(), rank_tol, reference);
  S.basis = svd.matrixU().leftCols(rank);
  return S;
}

Subspace span_of(const std::vector<Vec3>& vectors, double rank_tol, double reference) {
  Eigen::Matrix<double, 3, Eigen::Dynamic> columns(3, static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t i = 0; i < vectors.size(); ++i) columns.col(static_cast<Eigen::Index>(i)) = vectors[i];
  return span_of(columns, rank_tol, reference);
}

Subspace null_space(const Eigen::Ref<const Eigen::Matrix<double, Eigen::Dynamic, 3>>& M,
                    double rank_tol, double reference) {
  Subspace S;
  Eigen::MatrixXd padded = Eigen::MatrixXd::Zero(std::max<Eigen::Index>(M.rows(), 3), 3);
  padded.topRows(M.rows()) = M;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(padded, Eigen::ComputeFullV);
  const int rank = rank_from(svd.singularValues(), rank_tol, reference);
  S.basis = svd.matrixV().rightCols(3 - rank);
  return S;
}

Subspace orthogonal_complement(const Subspace& S) {
  if (S.dim() == 0) return Subspace::whole();
  Eigen::Matrix<double, Eigen::Dynamic, 3> rows = S.basis.transpose();
  return null_space(rows);
}

bool is_contained(const Subspace& S, const Subspace& T, double tolerance) {
  const Matrix3 P = T.projector();
  for (int i = 0; i < S.dim(); ++i)
    if ((S.vector(i) - P * S.vector(i)).norm() > tolerance) return false;
  return true;
}

Subspace sum(const Subspace& S, const Subspace& T) {
  Eigen::Matrix<double, 3, Eigen::Dynamic> columns(3, S.dim() + T.dim());
  columns << S.basis, T.basis;
  return span_of(columns);
}

}  // namespace hqds
