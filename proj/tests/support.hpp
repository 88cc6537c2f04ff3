#pragma once

#include "hqds/structure_constants.hpp"

#include <Eigen/Dense>

#include <initializer_list>
#include <random>
#include <tuple>

namespace hqds::testing {

struct Entry {
  int i, j, k;
  double value;
};

/// Table from 1-based entries (i, j, k, value) meaning e_i e_j += value e_k.
inline StructureConstants table(std::initializer_list<Entry> entries) {
  StructureConstants A;
  for (const auto& e : entries) A.set(e.i - 1, e.j - 1, e.k - 1, e.value);
  return A;
}

inline Matrix3 random_matrix(std::mt19937_64& rng, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Matrix3 M;
  for (int n = 0; n < 9; ++n) M.data()[n] = u(rng);
  return M;
}

inline double condition_number(const Matrix3& M) {
  Eigen::JacobiSVD<Matrix3> svd(M);
  return svd.singularValues()[0] / svd.singularValues()[2];
}

/// Random matrix with 2-norm condition number below the bound.
inline Matrix3 random_conditioned(std::mt19937_64& rng, double bound = 100.0) {
  for (;;) {
    const Matrix3 M = random_matrix(rng);
    if (condition_number(M) < bound) return M;
  }
}

inline StructureConstants random_table(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  StructureConstants A;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j)
      for (int k = 0; k < 3; ++k) A.set(i, j, k, u(rng));
  return A;
}

/// Plain triple-loop conjugation, written independently of the library:
/// c'(a, b, k) = sum M^{-1}(k, r) M(i, a) M(j, b) c(i, j, r).
inline StructureConstants conjugate_by_loops(const StructureConstants& A, const Matrix3& M) {
  const Matrix3 inv = M.inverse();
  StructureConstants out;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int k = 0; k < 3; ++k) {
        double sum = 0.0;
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j)
            for (int r = 0; r < 3; ++r) sum += inv(k, r) * M(i, a) * M(j, b) * A(i, j, r);
        out(a, b, k) = sum;
      }
  return out;
}

}  // namespace hqds::testing
