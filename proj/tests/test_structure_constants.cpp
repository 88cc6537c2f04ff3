#include "hqds/structure_constants.hpp"

#include "support.hpp"

#include <doctest.h>

#include <set>
#include <utility>

using namespace hqds;
using hqds::testing::table;

TEST_CASE("named slots cover the 18 independent constants") {
  std::set<std::tuple<int, int, int>> slots;
  std::set<char> names;
  for (const auto& s : kNamedSlots) {
    CHECK(s.i <= s.j);
    slots.insert({s.i, s.j, s.k});
    names.insert(s.name);
  }
  CHECK(slots.size() == 18);
  CHECK(names.size() == 18);
  CHECK(named_slot('a').k == 0);
  CHECK(named_slot('s').i == 1);
  CHECK(named_slot('s').j == 2);
  CHECK(named_slot('s').k == 0);
  CHECK_THROWS_AS(named_slot('z'), std::invalid_argument);
}

TEST_CASE("set keeps the table symmetric") {
  StructureConstants A;
  A.set(0, 2, 1, 3.5);
  CHECK(A(2, 0, 1) == 3.5);
  CHECK(A.is_symmetric());
  A(1, 0, 0) = 1.0;
  CHECK_FALSE(A.is_symmetric());
}

TEST_CASE("product is bilinear and commutative") {
  std::mt19937_64 rng(11);
  const StructureConstants A = testing::random_table(rng);
  for (int n = 0; n < 20; ++n) {
    const Matrix3 V = testing::random_matrix(rng);
    const Vec3 u = V.col(0), v = V.col(1), w = V.col(2);
    CHECK((product(A, u, v) - product(A, v, u)).norm() < 1e-14);
    CHECK((product(A, Vec3(2.0 * u + w), v) - 2.0 * product(A, u, v) - product(A, w, v)).norm() <
          1e-13);
    // e_i e_j read off directly from the tensor
    CHECK((product(A, Vec3::Unit(0), Vec3::Unit(2)) - A.basis_product(0, 2)).norm() == 0.0);
  }
}

TEST_CASE("left multiplication matrix applies the product") {
  std::mt19937_64 rng(12);
  const StructureConstants A = testing::random_table(rng);
  const Matrix3 V = testing::random_matrix(rng);
  CHECK((A.left_multiplication(V.col(0)) * V.col(1) - product(A, V.col(0), V.col(1))).norm() <
        1e-14);
}

TEST_CASE("change of basis matches the index formula") {
  std::mt19937_64 rng(13);
  for (int n = 0; n < 25; ++n) {
    const StructureConstants A = testing::random_table(rng);
    const Matrix3 M = testing::random_conditioned(rng);
    CHECK(max_difference(change_of_basis(A, M), testing::conjugate_by_loops(A, M)) < 1e-11);
  }
}

TEST_CASE("change of basis composes and inverts") {
  std::mt19937_64 rng(14);
  const StructureConstants A = testing::random_table(rng);
  const Matrix3 M = testing::random_conditioned(rng);
  const Matrix3 N = testing::random_conditioned(rng);
  CHECK(max_difference(change_of_basis(A, Matrix3(M * N)),
                       change_of_basis(change_of_basis(A, M), N)) < 1e-10);
  CHECK(max_difference(change_of_basis(change_of_basis(A, M), Matrix3(M.inverse())), A) < 1e-11);
  CHECK(change_of_basis(A, Matrix3::Identity()) == A);
}

TEST_CASE("a singular basis is rejected") {
  const StructureConstants A = table({{1, 1, 3, 1.0}});
  Matrix3 M = Matrix3::Identity();
  M.col(2) = M.col(0) + M.col(1);
  CHECK_THROWS_AS(change_of_basis(A, M), SingularBasis);
}

TEST_CASE("tensor works with other scalar types") {
  StructureTensor<float> A;
  A.set(0, 1, 2, 2.0f);
  const Eigen::Vector3f x(1.0f, 1.0f, 0.0f);
  CHECK(square(A, x)[2] == doctest::Approx(4.0f));
}
