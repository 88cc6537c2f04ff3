#include "hqds/classify.hpp"

#include "hqds/spectrum.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace hqds {

std::string_view to_string(CanonicalClass c) {
  switch (c) {
    case CanonicalClass::A1: return "A1";
    case CanonicalClass::A2: return "A2";
    case CanonicalClass::A3: return "A3";
    case CanonicalClass::A4: return "A4";
    case CanonicalClass::NullAlgebra: return "NullAlgebra";
    case CanonicalClass::NotInFamily: return "NotInFamily";
  }
  return "NotInFamily";
}

std::optional<CanonicalClass> parse_canonical_class(std::string_view name) {
  for (auto c : {CanonicalClass::A1, CanonicalClass::A2, CanonicalClass::A3, CanonicalClass::A4,
                 CanonicalClass::NullAlgebra, CanonicalClass::NotInFamily})
    if (to_string(c) == name) return c;
  return std::nullopt;
}

std::string_view to_string(FormSign s) {
  switch (s) {
    case FormSign::Indefinite: return "indefinite";
    case FormSign::Definite: return "definite";
    case FormSign::Degenerate: return "degenerate";
    case FormSign::NotApplicable: return "n/a";
  }
  return "n/a";
}

StructureConstants canonical_table(CanonicalClass c) {
  StructureConstants A;
  switch (c) {
    case CanonicalClass::A1:
      A.set(0, 0, 2, 1.0);
      A.set(1, 2, 0, 1.0);
      break;
    case CanonicalClass::A2:
      A.set(2, 2, 1, 1.0);
      break;
    case CanonicalClass::A3:
      A.set(0, 1, 2, 1.0);
      break;
    case CanonicalClass::A4:
      A.set(0, 0, 2, 1.0);
      A.set(1, 1, 2, 1.0);
      break;
    default:
      throw std::invalid_argument("canonical_table: class has no canonical table");
  }
  return A;
}

double certificate_residual(const StructureConstants& A, const Matrix3& basis, CanonicalClass c) {
  try {
    return max_difference(change_of_basis(A, basis), canonical_table(c));
  } catch (const SingularBasis&) {
    return std::numeric_limits<double>::infinity();
  }
}

namespace {

bool is_null(const StructureConstants& A) { return A.max_abs() <= tol::residual; }

struct QuotientForm {
  Eigen::Matrix2d gram;
  Eigen::Matrix<double, 3, 2> complement;  // orthonormal lift of A / Ann
  Vec3 generator;                           // unit vector spanning A^2
};

std::optional<QuotientForm> quotient_form(const StructureConstants& A, const Subspace& ann,
                                          const Subspace& sq) {
  if (ann.dim() != 1 || sq.dim() != 1 || !is_contained(sq, ann)) return std::nullopt;
  const Subspace complement = orthogonal_complement(ann);
  QuotientForm q;
  q.complement = complement.basis;
  q.generator = sq.vector(0);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      q.gram(i, j) = q.generator.dot(product(A, complement.vector(i), complement.vector(j)));
  return q;
}

FormSign form_sign(const Eigen::Matrix2d& B) {
  const double det = B.determinant();
  const double size = B.squaredNorm();
  if (std::abs(det) <= tol::rank * size) return FormSign::Degenerate;
  return det < 0.0 ? FormSign::Indefinite : FormSign::Definite;
}

struct Invariants {
  Subspace ann;
  Subspace sq;
  NilconeDescriptor nilcone;
  InvariantFingerprint fp;
};

Invariants compute_invariants(const StructureConstants& A) {
  Invariants inv;
  inv.ann = annihilator(A);
  inv.sq = square_ideal(A);
  inv.nilcone = nilpotent_cone(A);
  auto& fp = inv.fp;
  fp.dim_ann = inv.ann.dim();
  fp.dim_sq = inv.sq.dim();
  fp.sq_in_ann = is_contained(inv.sq, inv.ann);
  fp.nilcone_kind = inv.nilcone.kind;
  if (auto q = quotient_form(A, inv.ann, inv.sq)) fp.induced_form_sign = form_sign(q->gram);
  fp.has_idempotent = !idempotents(A).empty();
  fp.flags = structure_flags(A);
  fp.dim_der = derivation_space(A).dim();
  return inv;
}

Matrix3 columns(const Vec3& f1, const Vec3& f2, const Vec3& f3) {
  Matrix3 M;
  M << f1, f2, f3;
  return M;
}

std::optional<Matrix3> recipe_a2(const StructureConstants& A, const Subspace& ann) {
  const Vec3 f3 = orthogonal_complement(ann).vector(0);
  const Vec3 f2 = square(A, f3);
  if (f2.norm() <= tol::rank * A.max_abs()) return std::nullopt;
  const Vec3 along = f2.normalized();
  Vec3 f1 = Vec3::Zero();
  for (int i = 0; i < ann.dim(); ++i) {
    const Vec3 candidate = ann.vector(i) - along.dot(ann.vector(i)) * along;
    if (candidate.norm() > f1.norm()) f1 = candidate;
  }
  if (f1.norm() <= tol::dedup) return std::nullopt;
  return columns(f1.normalized(), f2, f3);
}

std::optional<Matrix3> recipe_a3_a4(const StructureConstants& A, const QuotientForm& q,
                                    FormSign sign) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(q.gram);
  const Eigen::Vector2d d = eig.eigenvalues();
  if (std::abs(d[0]) <= tol::rank * d.cwiseAbs().maxCoeff() ||
      std::abs(d[1]) <= tol::rank * d.cwiseAbs().maxCoeff())
    return std::nullopt;
  const Vec3 u0 = q.complement * eig.eigenvectors().col(0) / std::sqrt(std::abs(d[0]));
  const Vec3 u1 = q.complement * eig.eigenvectors().col(1) / std::sqrt(std::abs(d[1]));

  if (sign == FormSign::Indefinite) {
    // Eigenvalues ascend: d[0] < 0 < d[1]; u1 +- u0 are the isotropic lines.
    const Vec3 f1 = u1 + u0;
    const Vec3 f2 = u1 - u0;
    return columns(f1, f2, product(A, f1, f2));
  }
  return columns(u0, u1, square(A, u0));
}

// In A1, A^2 A^2 is the line R e3, L(e3) has image R e1, and ker L(e1) is the
// plane of e2, e3, whose second nilpotent line is R e2.
std::optional<Matrix3> recipe_a1(const StructureConstants& A, const Subspace& sq) {
  if (sq.dim() != 2) return std::nullopt;
  const double s = A.max_abs();
  const Subspace sq_sq = product_space(A, sq, sq);
  if (sq_sq.dim() != 1) return std::nullopt;
  Vec3 f3 = sq_sq.vector(0);

  const Subspace image = span_of(Eigen::Matrix<double, 3, 3>(A.left_multiplication(f3)),
                                 tol::rank, s);
  if (image.dim() != 1) return std::nullopt;
  const Subspace kernel = null_space(A.left_multiplication(image.vector(0)), tol::rank, s);
  if (kernel.dim() != 2) return std::nullopt;

  // w + t f3 is nilpotent when w^2 + 2 t (w f3) = 0.
  Vec3 w = kernel.vector(0) - f3.dot(kernel.vector(0)) * f3;
  if (w.norm() < 0.5) w = kernel.vector(1) - f3.dot(kernel.vector(1)) * f3;
  w.normalize();
  const Vec3 cross = 2.0 * product(A, w, f3);
  const double denom = cross.squaredNorm();
  if (denom <= tol::rank * s * s) return std::nullopt;
  Vec3 f2 = w - (cross.dot(square(A, w)) / denom) * f3;

  const Vec3 f1 = product(A, f2, f3);
  const double c = square(A, f1).dot(f3);
  if (std::abs(c) <= tol::rank * s * std::pow(f1.norm(), 2)) return std::nullopt;
  f3 *= c;
  f2 /= c;

  // Rescale by the automorphism diag(x, 1/x, x^2) to balance the column norms.
  const double a = std::log(f1.norm()), b = std::log(f2.norm()), g = std::log(f3.norm());
  double best = 0.0, spread = std::numeric_limits<double>::infinity();
  for (double l : {0.0, 0.5 * (b - a), (b - g) / 3.0, a - g}) {
    const double lo = std::min({a + l, b - l, g + 2.0 * l});
    const double hi = std::max({a + l, b - l, g + 2.0 * l});
    if (hi - lo < spread) {
      spread = hi - lo;
      best = l;
    }
  }
  const double x = std::exp(best);
  return columns(x * f1, f2 / x, x * x * f3);
}

ClassificationResult finish(ClassificationResult result, const StructureConstants& A,
                            std::optional<Matrix3> basis, CanonicalClass target,
                            std::uint64_t seed, bool attach_ssnd) {
  if (!basis) {
    result.cls = CanonicalClass::NotInFamily;
    result.route += "; recipe not applicable";
    return result;
  }
  const double residual = certificate_residual(A, *basis, target);
  if (!(residual <= tol::certificate)) {
    result.cls = CanonicalClass::NotInFamily;
    result.residual = residual;
    result.route += "; certificate rejected";
    return result;
  }
  result.cls = target;
  result.basis_change = *basis;
  result.residual = residual;
  if (attach_ssnd)
    if (auto ssnd = find_real_ssnd(A, seed)) result.ssnd_certificate = ssnd->derivation;
  return result;
}

ClassificationResult classify_with(const StructureConstants& A, const Invariants& inv,
                                   std::uint64_t seed, bool attach_ssnd) {
  ClassificationResult result;
  result.fingerprint = inv.fp;
  const auto& fp = inv.fp;

  if (is_null(A)) {
    result.cls = CanonicalClass::NullAlgebra;
    result.route = "all constants vanish";
    return result;
  }
  if (fp.dim_ann == 2 && fp.dim_sq == 1 && fp.sq_in_ann) {
    result.route = "recipe A2";
    return finish(result, A, recipe_a2(A, inv.ann), CanonicalClass::A2, seed, attach_ssnd);
  }
  if (fp.dim_ann == 1 && fp.dim_sq == 1 && fp.sq_in_ann &&
      (fp.induced_form_sign == FormSign::Indefinite || fp.induced_form_sign == FormSign::Definite)) {
    const auto q = quotient_form(A, inv.ann, inv.sq);
    const bool indefinite = fp.induced_form_sign == FormSign::Indefinite;
    result.route = indefinite ? "recipe A3" : "recipe A4";
    return finish(result, A, recipe_a3_a4(A, *q, fp.induced_form_sign),
                  indefinite ? CanonicalClass::A3 : CanonicalClass::A4, seed, attach_ssnd);
  }
  if (fp.dim_ann == 0 && fp.dim_sq == 2 && fp.nilcone_kind == NilconeKind::TwoLines) {
    result.route = "recipe A1";
    return finish(result, A, recipe_a1(A, inv.sq), CanonicalClass::A1, seed,
                  attach_ssnd);
  }
  result.cls = CanonicalClass::NotInFamily;
  result.route = "fingerprint matches no canonical class";
  return result;
}

}  // namespace

std::optional<Eigen::Matrix2d> induced_form(const StructureConstants& A) {
  if (auto q = quotient_form(A, annihilator(A), square_ideal(A))) return q->gram;
  return std::nullopt;
}

InvariantFingerprint fingerprint(const StructureConstants& A) { return compute_invariants(A).fp; }

ClassificationResult classify(const StructureConstants& A, std::uint64_t seed) {
  return classify_with(A, compute_invariants(A), seed, true);
}

namespace {

// Basis changes of the two explicit spectrum cases, applied in the
// eigenbasis of the derivation. Each returns the local basis and its target.
struct Reduction {
  Matrix3 basis;
  CanonicalClass target;
  std::string step;
};

bool negligible(double x, double scale) { return std::abs(x) <= 1e-8 * scale; }

std::optional<Reduction> reduce_case_1_minus1_2(const StructureConstants& T) {
  // e1^2 = p e3, e2 e3 = q e1
  const double scale = T.max_abs();
  const double p = T(0, 0, 2);
  const double q = T(1, 2, 0);
  const bool has_p = !negligible(p, scale);
  const bool has_q = !negligible(q, scale);
  if (has_p && has_q)
    return Reduction{Vec3(1.0 / p, 1.0 / q, 1.0 / p).asDiagonal(), CanonicalClass::A1,
                     "(1,-1,2), pq != 0: basis (e1/p, e2/q, e3/p)"};
  if (has_p) {
    // (e1, e2, p e3) gives e1^2 = e3; relabel (e2, e3, e1).
    const Matrix3 scale_step = Vec3(1.0, 1.0, p).asDiagonal();
    const Matrix3 relabel = columns(Vec3::UnitY(), Vec3::UnitZ(), Vec3::UnitX());
    return Reduction{scale_step * relabel, CanonicalClass::A2, "(1,-1,2), q = 0: relabel to A2"};
  }
  if (has_q) {
    const Matrix3 scale_step = Vec3(1.0, 1.0 / q, 1.0).asDiagonal();
    const Matrix3 relabel = columns(Vec3::UnitZ(), Vec3::UnitY(), Vec3::UnitX());
    return Reduction{scale_step * relabel, CanonicalClass::A3,
                     "(1,-1,2), p = 0: basis (e1, e2/q, e3) then (e3, e2, e1)"};
  }
  return std::nullopt;
}

std::optional<Reduction> reduce_case_1_1_2(const StructureConstants& T) {
  // e1^2 = p e3, e2^2 = q e3, e1 e2 = r e3
  const double scale = T.max_abs();
  const double p = T(0, 0, 2);
  const double q = T(1, 1, 2);
  const double r = T(0, 1, 2);
  const bool hp = !negligible(p, scale), hq = !negligible(q, scale), hr = !negligible(r, scale);
  const Vec3 e1 = Vec3::UnitX(), e2 = Vec3::UnitY(), e3 = Vec3::UnitZ();

  if (hp && hq && hr) {
    // (e1, (p/r) e2, p e3) gives e1^2 = e3, e1 e2 = e3, e2^2 = lambda e3.
    const Matrix3 to_prime = columns(e1, (p / r) * e2, p * e3);
    const double lambda = p * q / (r * r);
    if (std::abs(lambda - 1.0) <= 1e-7) {
      // e1 - e2 annihilates; (e1 - e2, e3, e1) has only e3^2 = e2.
      return Reduction{to_prime * columns(e1 - e2, e3, e1), CanonicalClass::A2,
                       "(1,1,2), lambda = 1"};
    }
    if (lambda < 1.0) {
      const double disc = std::sqrt(4.0 - 4.0 * lambda);
      const double s1 = (-2.0 + disc) / (2.0 * lambda);
      const double s2 = (-2.0 - disc) / (2.0 * lambda);
      const Matrix3 step = columns(e1 + s1 * e2, e1 + s2 * e2, 2.0 * (lambda - 1.0) / lambda * e3);
      return Reduction{to_prime * step, CanonicalClass::A3, "(1,1,2), lambda < 1"};
    }
    const Matrix3 step = columns(std::sqrt(lambda - 1.0) * e1, e1 - e2, (lambda - 1.0) * e3);
    return Reduction{to_prime * step, CanonicalClass::A4, "(1,1,2), lambda > 1"};
  }
  if (!hp && hq && !hr)
    return Reduction{columns(e1, q * e3, e2), CanonicalClass::A2, "(1,1,2) case (1)"};
  if (!hp && !hq && hr)
    return Reduction{columns(e1, e2, r * e3), CanonicalClass::A3, "(1,1,2) case (2)"};
  if (!hp && hq && hr)
    return Reduction{columns(e1, q * e1 - 2.0 * r * e2, -2.0 * r * r * e3), CanonicalClass::A3,
                     "(1,1,2) case (3)"};
  if (hp && !hq && !hr)
    return Reduction{columns(e2, p * e3, e1), CanonicalClass::A2, "(1,1,2) case (4)"};
  if (hp && !hq && hr) {
    const Matrix3 first = columns((r / p) * e1, e2, (r * r / p) * e3);
    const Matrix3 second = columns(2.0 * e1 - e2, e2, 2.0 * e3);
    return Reduction{first * second, CanonicalClass::A3, "(1,1,2) case (5)"};
  }
  if (hp && hq && !hr) {
    const Matrix3 unit = columns(e1 / std::sqrt(std::abs(p)), e2 / std::sqrt(std::abs(q)),
                                 std::copysign(1.0, p) * e3);
    if (p * q > 0.0) return Reduction{unit, CanonicalClass::A4, "(1,1,2) case (6), pq > 0"};
    // unit basis yields e1^2 = e3, e2^2 = -e3; then the isotropic basis.
    const Matrix3 isotropic = columns(0.5 * (e1 + e2), 0.5 * (e1 - e2), 0.5 * e3);
    return Reduction{unit * isotropic, CanonicalClass::A3, "(1,1,2) case (6), pq < 0"};
  }
  return std::nullopt;
}

// Eigenbasis of a real-diagonalizable matrix, paired with eigenvalues.
std::optional<std::pair<Matrix3, std::array<double, 3>>> eigenbasis(const Matrix3& D,
                                                                    const SpectralReport& r) {
  std::vector<double> values;
  for (double x : r.spectrum)
    if (values.empty() || std::abs(x - values.back()) > 1e-6 * D.norm()) values.push_back(x);
  Matrix3 P;
  std::array<double, 3> spectrum{};
  int filled = 0;
  for (double value : values) {
    const Matrix3 shifted = D - value * Matrix3::Identity();
    const Subspace eigenspace = null_space(shifted, 1e-7);
    for (int i = 0; i < eigenspace.dim() && filled < 3; ++i, ++filled) {
      P.col(filled) = eigenspace.vector(i);
      spectrum[static_cast<std::size_t>(filled)] = value;
    }
  }
  if (filled != 3 || std::abs(P.determinant()) <= 1e-9) return std::nullopt;
  return std::make_pair(P, spectrum);
}

}  // namespace

ClassificationResult classify_via_derivation(const StructureConstants& A, std::uint64_t seed) {
  ClassificationResult result;
  if (is_null(A)) {
    result.cls = CanonicalClass::NullAlgebra;
    result.fingerprint = fingerprint(A);
    result.route = "all constants vanish";
    return result;
  }
  const auto ssnd = find_real_ssnd(A, seed);
  if (!ssnd) {
    result.cls = CanonicalClass::NotInFamily;
    result.fingerprint = fingerprint(A);
    result.route = "no real semisimple nonsingular derivation found";
    return result;
  }
  const Matrix3& D = ssnd->derivation;

  auto basis = eigenbasis(D, ssnd->report);
  if (!basis) {
    result.cls = CanonicalClass::NotInFamily;
    result.fingerprint = fingerprint(A);
    result.ssnd_certificate = D;
    result.route = "derivation eigenbasis could not be assembled";
    return result;
  }
  const SpectrumCase spectrum_case = normalize_spectrum(basis->second);
  Matrix3 P;
  for (int i = 0; i < 3; ++i) P.col(i) = basis->first.col(spectrum_case.permutation[static_cast<std::size_t>(i)]);
  const StructureConstants T = change_of_basis(A, P);

  std::ostringstream route;
  route << "derivation spectrum (1, " << spectrum_case.lambda << ", " << spectrum_case.mu
        << "), family " << to_string(spectrum_case.family);

  // The rewritten table must respect the vanishing pattern of the spectrum.
  const ConstantMask mask = admissible_mask(spectrum_case.lambda, spectrum_case.mu);
  double violation = 0.0;
  for (const auto& slot : kNamedSlots)
    if (!mask.allows(slot.name)) violation = std::max(violation, std::abs(T(slot.i, slot.j, slot.k)));
  if (violation > 1e-7 * T.max_abs()) {
    result.cls = CanonicalClass::NotInFamily;
    result.fingerprint = fingerprint(A);
    result.ssnd_certificate = D;
    result.route = route.str() + "; eigenbasis table violates the admissible mask";
    return result;
  }

  std::optional<Reduction> reduction;
  const auto& rep = spectrum_case.representative;
  const bool explicit_case = spectrum_case.family == SpectrumFamily::F1 ||
                             spectrum_case.family == SpectrumFamily::F3;
  if (spectrum_case.family == SpectrumFamily::F1 && rep[1] == -1.0 && rep[2] == 2.0)
    reduction = reduce_case_1_minus1_2(T);
  else if (spectrum_case.family == SpectrumFamily::F3 && rep[1] == 1.0 && rep[2] == 2.0)
    reduction = reduce_case_1_1_2(T);

  if (!explicit_case) {
    ClassificationResult delegated = classify_with(A, compute_invariants(A), seed, false);
    delegated.ssnd_certificate = D;
    delegated.route = route.str() + "; invariant recipes: " + delegated.route;
    return delegated;
  }

  result.fingerprint = fingerprint(A);
  result.ssnd_certificate = D;
  if (!reduction) {
    result.cls = CanonicalClass::NotInFamily;
    result.route = route.str() + "; no reduction applies";
    return result;
  }
  result.route = route.str() + "; " + reduction->step;
  return finish(result, A, Matrix3(P * reduction->basis), reduction->target, seed, false);
}

std::string pairwise_noniso_witness(CanonicalClass a, CanonicalClass b) {
  if (!is_canonical(a) || !is_canonical(b) || a == b)
    throw std::invalid_argument("pairwise_noniso_witness: need two distinct classes among A1..A4");
  static const std::array<InvariantFingerprint, 4> prints = {
      fingerprint(canonical_table(CanonicalClass::A1)),
      fingerprint(canonical_table(CanonicalClass::A2)),
      fingerprint(canonical_table(CanonicalClass::A3)),
      fingerprint(canonical_table(CanonicalClass::A4))};
  const auto& fa = prints[static_cast<std::size_t>(a)];
  const auto& fb = prints[static_cast<std::size_t>(b)];

  std::ostringstream out;
  if (fa.dim_ann != fb.dim_ann) {
    out << "dim Ann: " << fa.dim_ann << " vs " << fb.dim_ann;
  } else if (fa.nilcone_kind != fb.nilcone_kind) {
    out << "nilcone: " << to_string(fa.nilcone_kind) << " vs " << to_string(fb.nilcone_kind);
  } else if (fa.dim_sq != fb.dim_sq) {
    out << "dim A^2: " << fa.dim_sq << " vs " << fb.dim_sq;
  } else if (fa.induced_form_sign != fb.induced_form_sign) {
    out << "induced form: " << to_string(fa.induced_form_sign) << " vs "
        << to_string(fb.induced_form_sign);
  } else if (fa.flags.nilpotent != fb.flags.nilpotent) {
    out << "nilpotent: " << fa.flags.nilpotent << " vs " << fb.flags.nilpotent;
  } else if (fa.dim_der != fb.dim_der) {
    out << "dim Der: " << fa.dim_der << " vs " << fb.dim_der;
  } else {
    throw std::logic_error("pairwise_noniso_witness: canonical fingerprints coincide");
  }
  return out.str();
}

}  // namespace hqds
