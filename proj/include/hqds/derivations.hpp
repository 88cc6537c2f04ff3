#pragma once

#include "hqds/structure_constants.hpp"

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

namespace hqds {

/// Basis of the Lie algebra of derivations.
struct DerivationSpace {
  std::vector<Matrix3> basis;
  int dim() const { return static_cast<int>(basis.size()); }
};

struct SpectralReport {
  /// Monic characteristic polynomial x^3 + c[2] x^2 + c[1] x + c[0].
  std::array<double, 3> char_poly{};
  std::array<std::complex<double>, 3> eigenvalues{};
  bool all_real = false;
  bool semisimple = false;
  bool nonsingular = false;
  /// Ascending real spectrum, meaningful only when all_real.
  std::array<double, 3> spectrum{};
  /// Number of distinct eigenvalues after clustering repeated roots.
  int distinct = 3;
};

struct JordanChevalley {
  Matrix3 semisimple;
  Matrix3 nilpotent;
};

struct SsndCertificate {
  Matrix3 derivation;
  SpectralReport report;
};

/// Leibniz-rule residual max |M(e_i e_j) - (M e_i) e_j - e_i (M e_j)|,
/// relative to the largest entries of M and of the structure constants.
double derivation_residual(const StructureConstants& A, const Matrix3& M);

/// Homomorphism residual max |phi(e_i e_j) - phi(e_i) phi(e_j)| relative to
/// |phi| and the structure constants.
double automorphism_residual(const StructureConstants& A, const Matrix3& phi);

/// Nullspace of the 18 x 9 Leibniz system.
DerivationSpace derivation_space(const StructureConstants& A);

/// Characteristic polynomial, closed-form cubic roots and the
/// diagonalizability / invertibility verdicts.
SpectralReport spectral_analysis(const Matrix3& M);

/// M = S + N with S semisimple, N nilpotent and SN = NS. Throws
/// IllConditioned when the spectral projector would be built from nearly
/// colliding eigenvalues.
JordanChevalley jordan_chevalley(const Matrix3& M);

/// Replaces every eigenvalue of a semisimple operator by its real part.
/// For a semisimple derivation the result is again a derivation.
Matrix3 real_part(const Matrix3& semisimple);

/// Searches Der A for a real-diagonalizable nonsingular element.
std::optional<SsndCertificate> find_real_ssnd(const StructureConstants& A,
                                              std::uint64_t seed = 0);

}  // namespace hqds
