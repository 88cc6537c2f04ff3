#include "hqds/classify.hpp"

#include "support.hpp"

#include <doctest.h>

#include <string>

using namespace hqds;
using hqds::testing::table;

namespace {

constexpr CanonicalClass kClasses[] = {CanonicalClass::A1, CanonicalClass::A2, CanonicalClass::A3,
                                       CanonicalClass::A4};

}  // namespace

TEST_CASE("class names round trip") {
  for (auto c : {CanonicalClass::A1, CanonicalClass::A2, CanonicalClass::A3, CanonicalClass::A4,
                 CanonicalClass::NullAlgebra, CanonicalClass::NotInFamily})
    CHECK(parse_canonical_class(to_string(c)) == c);
  CHECK_FALSE(parse_canonical_class("A5").has_value());
  CHECK_THROWS_AS(canonical_table(CanonicalClass::NullAlgebra), std::invalid_argument);
}

TEST_CASE("canonical tables classify to themselves") {
  for (auto c : kClasses) {
    const auto A = canonical_table(c);
    const auto r = classify(A);
    CHECK(r.cls == c);
    REQUIRE(r.basis_change.has_value());
    CHECK(r.residual <= 1e-15);
    CHECK(certificate_residual(A, *r.basis_change, c) == r.residual);
    CHECK(r.ssnd_certificate.has_value());
    CHECK(classify_via_derivation(A).cls == c);
  }
}

TEST_CASE("canonical fingerprints") {
  const auto f1 = fingerprint(canonical_table(CanonicalClass::A1));
  CHECK(f1.dim_ann == 0);
  CHECK(f1.dim_sq == 2);
  CHECK(f1.nilcone_kind == NilconeKind::TwoLines);
  CHECK(f1.dim_der == 1);

  const auto f3 = fingerprint(canonical_table(CanonicalClass::A3));
  const auto f4 = fingerprint(canonical_table(CanonicalClass::A4));
  CHECK(f3.induced_form_sign == FormSign::Indefinite);
  CHECK(f4.induced_form_sign == FormSign::Definite);
  CHECK(f3.nilcone_kind == NilconeKind::TwoPlanes);
  CHECK(f4.nilcone_kind == NilconeKind::OneLine);
  CHECK_FALSE(f3 == f4);
}

TEST_CASE("induced form of A4 is the identity") {
  const auto B = induced_form(canonical_table(CanonicalClass::A4));
  REQUIRE(B.has_value());
  CHECK(B->determinant() == doctest::Approx(1.0));
  CHECK_FALSE(induced_form(canonical_table(CanonicalClass::A1)).has_value());
}

TEST_CASE("conjugated algebras classify with verified certificates") {
  std::mt19937_64 rng(51);
  for (auto c : kClasses)
    for (int n = 0; n < 10; ++n) {
      const Matrix3 M = testing::random_conditioned(rng);
      const auto A = change_of_basis(canonical_table(c), M);
      const auto r = classify(A, n);
      CHECK(r.cls == c);
      REQUIRE(r.basis_change.has_value());
      CHECK(certificate_residual(A, *r.basis_change, c) < 1e-8);
      const auto v = classify_via_derivation(A, n);
      CHECK(v.cls == c);
      if (v.basis_change) CHECK(certificate_residual(A, *v.basis_change, c) < 1e-8);
    }
}

TEST_CASE("algebras outside the family") {
  CHECK(classify(StructureConstants{}).cls == CanonicalClass::NullAlgebra);
  CHECK(classify_via_derivation(StructureConstants{}).cls == CanonicalClass::NullAlgebra);

  const auto idem = table({{1, 1, 1, 1.0}});
  const auto r = classify(idem);
  CHECK(r.cls == CanonicalClass::NotInFamily);
  CHECK_FALSE(r.basis_change.has_value());
  CHECK(r.fingerprint.has_idempotent);
  CHECK(classify_via_derivation(idem).cls == CanonicalClass::NotInFamily);

  // corrupting A2 with e1 e2 = e1 breaks A^2 inside Ann
  const auto corrupted = table({{3, 3, 2, 1.0}, {1, 2, 1, 1.0}});
  CHECK(classify(corrupted).cls == CanonicalClass::NotInFamily);
  CHECK_FALSE(classify(corrupted).fingerprint.sq_in_ann);

  std::mt19937_64 rng(52);
  for (int n = 0; n < 10; ++n) {
    const auto A = testing::random_table(rng);
    CHECK(classify(A).cls == CanonicalClass::NotInFamily);
    CHECK(classify_via_derivation(A).cls == CanonicalClass::NotInFamily);
  }
}

TEST_CASE("the chain algebra has an SSND but matches no canonical class") {
  const auto chain = table({{1, 1, 2, 1.0}, {1, 2, 3, 1.0}});
  const auto fp = fingerprint(chain);
  CHECK(fp.dim_ann == 1);
  CHECK(fp.dim_sq == 2);
  const auto r = classify(chain);
  CHECK(r.cls == CanonicalClass::NotInFamily);
  const auto v = classify_via_derivation(chain);
  CHECK(v.cls == CanonicalClass::NotInFamily);
  CHECK(v.ssnd_certificate.has_value());
}

TEST_CASE("explicit reductions of the (1, -1, 2) table") {
  // e1^2 = p e3, e2 e3 = q e1
  const auto both = table({{1, 1, 3, 2.0}, {2, 3, 1, 3.0}});
  const auto r = classify_via_derivation(both);
  CHECK(r.cls == CanonicalClass::A1);
  CHECK(r.route.find("pq != 0") != std::string::npos);
  CHECK(r.residual < 1e-12);

  const auto only_p = table({{1, 1, 3, 2.0}});
  CHECK(classify_via_derivation(only_p).cls == CanonicalClass::A2);
}

TEST_CASE("explicit reductions of the (1, 1, 2) table") {
  const auto prime = [](double lambda) {
    return table({{1, 1, 3, 1.0}, {1, 2, 3, 1.0}, {2, 2, 3, lambda}});
  };
  CHECK(classify_via_derivation(prime(1.0)).cls == CanonicalClass::A2);
  CHECK(classify_via_derivation(prime(-1.0)).cls == CanonicalClass::A3);
  CHECK(classify_via_derivation(prime(0.5)).cls == CanonicalClass::A3);
  CHECK(classify_via_derivation(prime(5.0)).cls == CanonicalClass::A4);

  CHECK(classify_via_derivation(table({{2, 2, 3, 2.0}})).cls == CanonicalClass::A2);
  CHECK(classify_via_derivation(table({{1, 2, 3, 2.0}})).cls == CanonicalClass::A3);
  CHECK(classify_via_derivation(table({{2, 2, 3, 2.0}, {1, 2, 3, 1.0}})).cls ==
        CanonicalClass::A3);
  CHECK(classify_via_derivation(table({{1, 1, 3, 3.0}})).cls == CanonicalClass::A2);
  CHECK(classify_via_derivation(table({{1, 1, 3, 3.0}, {1, 2, 3, 1.0}})).cls ==
        CanonicalClass::A3);
  CHECK(classify_via_derivation(table({{1, 1, 3, 3.0}, {2, 2, 3, 2.0}})).cls ==
        CanonicalClass::A4);
  CHECK(classify_via_derivation(table({{1, 1, 3, 3.0}, {2, 2, 3, -2.0}})).cls ==
        CanonicalClass::A3);
}

TEST_CASE("non-isomorphism witnesses") {
  for (auto a : kClasses)
    for (auto b : kClasses) {
      if (a == b) continue;
      const std::string w = pairwise_noniso_witness(a, b);
      CHECK_FALSE(w.empty());
      CHECK(w.find(" vs ") != std::string::npos);
    }
  CHECK(pairwise_noniso_witness(CanonicalClass::A1, CanonicalClass::A2) == "dim Ann: 0 vs 2");
  CHECK(pairwise_noniso_witness(CanonicalClass::A3, CanonicalClass::A4) ==
        "nilcone: two-planes vs one-line");
  CHECK_THROWS_AS(pairwise_noniso_witness(CanonicalClass::A1, CanonicalClass::A1),
                  std::invalid_argument);
}
