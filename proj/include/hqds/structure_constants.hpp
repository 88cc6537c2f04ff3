#pragma once

#include "hqds/core.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hqds {

/// Structure constants c(i,j,k) of a commutative algebra on a 3-dimensional
/// space: e_i * e_j = sum_k c(i,j,k) e_k. Indices are 0-based.
///
/// The same tensor defines the quadratic vector field x' = x * x, whose k-th
/// component is c(i,j,k) x_i x_j.
template <typename Scalar>
class StructureTensor {
 public:
  using Vector = Eigen::Matrix<Scalar, 3, 1>;
  using Matrix = Eigen::Matrix<Scalar, 3, 3>;

  StructureTensor() { data_.fill(Scalar(0)); }

  Scalar& operator()(int i, int j, int k) { return data_[index(i, j, k)]; }
  const Scalar& operator()(int i, int j, int k) const { return data_[index(i, j, k)]; }

  /// Sets c(i,j,k) and c(j,i,k) together.
  void set(int i, int j, int k, Scalar value) {
    (*this)(i, j, k) = value;
    (*this)(j, i, k) = value;
  }

  /// Sets the whole product e_i * e_j (and e_j * e_i).
  void set_product(int i, int j, const Vector& value) {
    for (int k = 0; k < 3; ++k) set(i, j, k, value[k]);
  }

  Vector basis_product(int i, int j) const {
    return Vector((*this)(i, j, 0), (*this)(i, j, 1), (*this)(i, j, 2));
  }

  bool is_symmetric() const {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          if ((*this)(i, j, k) != (*this)(j, i, k)) return false;
    return true;
  }

  /// Largest absolute constant; the natural magnitude of the algebra.
  Scalar max_abs() const {
    using std::abs;
    Scalar m(0);
    for (const auto& c : data_) m = abs(c) > m ? abs(c) : m;
    return m;
  }

  /// Matrix of the left multiplication u -> v * u.
  Matrix left_multiplication(const Vector& v) const {
    Matrix L = Matrix::Zero();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) L(k, j) += (*this)(i, j, k) * v[i];
    return L;
  }

  const std::array<Scalar, 27>& data() const { return data_; }
  std::array<Scalar, 27>& data() { return data_; }

  friend bool operator==(const StructureTensor&, const StructureTensor&) = default;

 private:
  static constexpr int index(int i, int j, int k) { return (i * 3 + j) * 3 + k; }
  std::array<Scalar, 27> data_;
};

using StructureConstants = StructureTensor<double>;

/// Bilinear product u * v.
template <typename Scalar>
Eigen::Matrix<Scalar, 3, 1> product(const StructureTensor<Scalar>& A,
                                    const Eigen::Matrix<Scalar, 3, 1>& u,
                                    const Eigen::Matrix<Scalar, 3, 1>& v) {
  Eigen::Matrix<Scalar, 3, 1> w = Eigen::Matrix<Scalar, 3, 1>::Zero();
  for (int i = 0; i < 3; ++i) {
    if (u[i] == Scalar(0)) continue;
    for (int j = 0; j < 3; ++j) {
      const Scalar uv = u[i] * v[j];
      for (int k = 0; k < 3; ++k) w[k] += A(i, j, k) * uv;
    }
  }
  return w;
}

/// Square x * x, i.e. the value of the quadratic vector field at x.
template <typename Scalar>
Eigen::Matrix<Scalar, 3, 1> square(const StructureTensor<Scalar>& A,
                                   const Eigen::Matrix<Scalar, 3, 1>& x) {
  return product(A, x, x);
}

inline Vec3 product(const StructureConstants& A, const Vec3& u, const Vec3& v) {
  return product<double>(A, u, v);
}

inline Vec3 square(const StructureConstants& A, const Vec3& x) { return product<double>(A, x, x); }

/// Re-expresses A in the basis whose j-th vector has old coordinates
/// `basis.col(j)`. Throws SingularBasis when the columns are numerically
/// dependent (|det| small relative to the product of column norms).
template <typename Scalar>
StructureTensor<Scalar> change_of_basis(const StructureTensor<Scalar>& A,
                                        const Eigen::Matrix<Scalar, 3, 3>& basis) {
  using std::abs;
  const Scalar det = basis.determinant();
  const Scalar volume = basis.col(0).norm() * basis.col(1).norm() * basis.col(2).norm();
  if (!(abs(det) > Scalar(tol::rank) * volume))
    throw SingularBasis("change_of_basis: basis matrix is singular");

  const Eigen::Matrix<Scalar, 3, 3> inverse = basis.inverse();
  StructureTensor<Scalar> out;
  for (int a = 0; a < 3; ++a)
    for (int b = a; b < 3; ++b) {
      const Eigen::Matrix<Scalar, 3, 1> fab = product<Scalar>(A, basis.col(a), basis.col(b));
      out.set_product(a, b, inverse * fab);
    }
  return out;
}

inline StructureConstants change_of_basis(const StructureConstants& A, const Matrix3& basis) {
  return change_of_basis<double>(A, basis);
}

/// Largest entrywise difference between two tables.
template <typename Scalar>
Scalar max_difference(const StructureTensor<Scalar>& A, const StructureTensor<Scalar>& B) {
  using std::abs;
  Scalar m(0);
  for (std::size_t n = 0; n < 27; ++n) {
    const Scalar d = abs(A.data()[n] - B.data()[n]);
    m = d > m ? d : m;
  }
  return m;
}

/// Slot of one of the eighteen letter-named constants a..v used for
/// 3-dimensional commutative tables (i <= j, 0-based).
struct NamedSlot {
  char name;
  int i, j, k;
};

// clang-format off
inline constexpr std::array<NamedSlot, 18> kNamedSlots{{
    {'a', 0, 0, 0}, {'b', 0, 0, 1}, {'c', 0, 0, 2},
    {'k', 0, 1, 0}, {'m', 0, 1, 1}, {'n', 0, 1, 2},
    {'d', 1, 1, 0}, {'e', 1, 1, 1}, {'f', 1, 1, 2},
    {'p', 0, 2, 0}, {'q', 0, 2, 1}, {'r', 0, 2, 2},
    {'g', 2, 2, 0}, {'h', 2, 2, 1}, {'j', 2, 2, 2},
    {'s', 1, 2, 0}, {'t', 1, 2, 1}, {'v', 1, 2, 2},
}};
// clang-format on

/// Looks up a letter-named slot; throws std::invalid_argument for unknown names.
inline const NamedSlot& named_slot(char name) {
  for (const auto& slot : kNamedSlots)
    if (slot.name == name) return slot;
  throw std::invalid_argument(std::string("unknown structure constant name: ") + name);
}

}  // namespace hqds
