#pragma once

#include "hqds/algebra.hpp"
#include "hqds/derivations.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace hqds {

enum class CanonicalClass { A1, A2, A3, A4, NullAlgebra, NotInFamily };

std::string_view to_string(CanonicalClass c);
std::optional<CanonicalClass> parse_canonical_class(std::string_view name);

inline bool is_canonical(CanonicalClass c) {
  return c == CanonicalClass::A1 || c == CanonicalClass::A2 || c == CanonicalClass::A3 ||
         c == CanonicalClass::A4;
}

/// Sign type of the form B on A/Ann with u*v = B(u,v) m, m spanning A^2.
enum class FormSign { Indefinite, Definite, Degenerate, NotApplicable };

std::string_view to_string(FormSign s);

struct InvariantFingerprint {
  int dim_ann = 0;
  int dim_sq = 0;
  bool sq_in_ann = false;
  NilconeKind nilcone_kind = NilconeKind::OriginOnly;
  FormSign induced_form_sign = FormSign::NotApplicable;
  bool has_idempotent = false;
  StructureFlags flags;
  int dim_der = 0;

  friend bool operator==(const InvariantFingerprint&, const InvariantFingerprint&) = default;
};

struct ClassificationResult {
  CanonicalClass cls = CanonicalClass::NotInFamily;
  /// Columns are the new basis vectors in input coordinates; present iff cls is A1..A4.
  std::optional<Matrix3> basis_change;
  double residual = 0.0;
  InvariantFingerprint fingerprint;
  std::optional<Matrix3> ssnd_certificate;
  /// Short description of the route that produced the answer.
  std::string route;
};

/// Exact constants of the four canonical algebras:
///   A1: e1^2 = e3, e2 e3 = e1     A2: e3^2 = e2
///   A3: e1 e2 = e3                A4: e1^2 = e2^2 = e3
/// Throws std::invalid_argument for NullAlgebra / NotInFamily.
StructureConstants canonical_table(CanonicalClass c);

InvariantFingerprint fingerprint(const StructureConstants& A);

/// Gram matrix of the induced quotient form in the basis of the orthogonal
/// complement of Ann; only defined when dim Ann = dim A^2 = 1 and A^2 lies in Ann.
std::optional<Eigen::Matrix2d> induced_form(const StructureConstants& A);

/// Fingerprint-routed constructive classification. Membership is only
/// reported when an explicit basis change reproduces the canonical table.
ClassificationResult classify(const StructureConstants& A, std::uint64_t seed = 0);

/// Reduction through a real semisimple nonsingular derivation: eigenbasis,
/// spectrum normalisation, then the explicit case-by-case basis changes.
ClassificationResult classify_via_derivation(const StructureConstants& A, std::uint64_t seed = 0);

/// Name and values of a fingerprint field separating two canonical classes,
/// e.g. "dim Ann: 0 vs 2". Throws std::invalid_argument unless a and b are
/// distinct classes among A1..A4.
std::string pairwise_noniso_witness(CanonicalClass a, CanonicalClass b);

/// Entrywise distance between the table of A in the given basis and the
/// canonical table of c.
double certificate_residual(const StructureConstants& A, const Matrix3& basis, CanonicalClass c);

}  // namespace hqds
