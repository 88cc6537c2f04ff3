#pragma once

#include "hqds/structure_constants.hpp"
#include "hqds/subspace.hpp"

#include <cstdint>
#include <string_view>
#include <vector>

namespace hqds {

struct SubspaceCheck {
  bool closed = false;  ///< S * S is contained in S
  bool ideal = false;   ///< A * S is contained in S
};

struct StructureFlags {
  bool solvable = false;
  bool nilpotent = false;
  bool associative = false;
  bool power_associative = false;

  friend bool operator==(const StructureFlags&, const StructureFlags&) = default;
};

enum class NilconeKind { OriginOnly, OneLine, TwoLines, Plane, TwoPlanes, WholeSpace, Other };

std::string_view to_string(NilconeKind kind);

/// Description of the set of elements with v * v = 0.
struct NilconeDescriptor {
  NilconeKind kind = NilconeKind::OriginOnly;
  std::vector<Subspace> lines;
  std::vector<Subspace> planes;
  std::vector<Vec3> samples;  ///< unit vectors on the cone
};

/// Span of all products s * t with s in S and t in T.
Subspace product_space(const StructureConstants& A, const Subspace& S, const Subspace& T);

/// {v : v * w = 0 for all w}.
Subspace annihilator(const StructureConstants& A);

/// A^2, the span of the six basis products.
Subspace square_ideal(const StructureConstants& A);

SubspaceCheck subspace_check(const StructureConstants& A, const Subspace& S);

StructureFlags structure_flags(const StructureConstants& A);

/// Relative residual of (x^2)x^2 - ((x^2)x)x at x.
double power_associator_residual(const StructureConstants& A, const Vec3& x);

/// Largest basis associator |(e_i e_j) e_k - e_i (e_j e_k)|.
double max_associator(const StructureConstants& A);

/// Nilcone by sphere sampling, Gauss-Newton polishing and clustering into
/// lines and planes. Every reported component is re-verified.
NilconeDescriptor nilpotent_cone(const StructureConstants& A);

/// Nonzero solutions of v * v = v, deduplicated.
std::vector<Vec3> idempotents(const StructureConstants& A);

/// |v * v| within the residual threshold for a vector of norm |v|.
bool is_nilpotent_element(const StructureConstants& A, const Vec3& v,
                          double tolerance = tol::residual);

}  // namespace hqds
