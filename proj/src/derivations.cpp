#include "hqds/derivations.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <utility>

namespace hqds {

double derivation_residual(const StructureConstants& A, const Matrix3& M) {
  const double scale = M.cwiseAbs().maxCoeff() * A.max_abs();
  if (scale == 0.0) return 0.0;
  double worst = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      const Vec3 lhs = M * A.basis_product(i, j);
      const Vec3 rhs = product(A, Vec3(M.col(i)), Vec3::Unit(j)) +
                       product(A, Vec3::Unit(i), Vec3(M.col(j)));
      worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
    }
  return worst / scale;
}

double automorphism_residual(const StructureConstants& A, const Matrix3& phi) {
  const double m = phi.cwiseAbs().maxCoeff();
  const double scale = A.max_abs() * std::max(m, m * m);
  if (scale == 0.0) return 0.0;
  double worst = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      const Vec3 lhs = phi * A.basis_product(i, j);
      const Vec3 rhs = product(A, Vec3(phi.col(i)), Vec3(phi.col(j)));
      worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
    }
  return worst / scale;
}

DerivationSpace derivation_space(const StructureConstants& A) {
  // Unknown D is flattened column-major: entry D(r, c) sits at 3 * c + r.
  Eigen::Matrix<double, 18, 9> system = Eigen::Matrix<double, 18, 9>::Zero();
  int row = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j)
      for (int k = 0; k < 3; ++k, ++row)
        for (int r = 0; r < 3; ++r) {
          system(row, 3 * r + k) += A(i, j, r);  // (D (e_i e_j))_k
          system(row, 3 * i + r) -= A(r, j, k);  // ((D e_i) e_j)_k
          system(row, 3 * j + r) -= A(i, r, k);  // (e_i (D e_j))_k
        }

  Eigen::JacobiSVD<Eigen::Matrix<double, 18, 9>> svd(system, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double threshold = tol::rank * std::max(sv[0], A.max_abs());
  int rank = 0;
  for (Eigen::Index n = 0; n < sv.size(); ++n)
    if (sv[n] > threshold) ++rank;

  DerivationSpace space;
  for (int n = rank; n < 9; ++n) {
    const Eigen::Matrix<double, 9, 1> v = svd.matrixV().col(n);
    space.basis.push_back(Eigen::Map<const Matrix3>(v.data()));
  }
  return space;
}

namespace {

constexpr double kClusterGap = 1e-5;
constexpr double kGeometricRankTol = 1e-6;
constexpr double kDiscriminantTol = 1e-13;
constexpr double kTripleTol = 1e-10;

double polish_root(const std::array<double, 3>& c, double x) {
  for (int it = 0; it < 3; ++it) {
    const double p = ((x + c[2]) * x + c[1]) * x + c[0];
    const double dp = (3.0 * x + 2.0 * c[2]) * x + c[1];
    if (dp == 0.0) break;
    const double next = x - p / dp;
    if (!std::isfinite(next)) break;
    x = next;
  }
  return x;
}

// Spectral data of a matrix already scaled to unit Frobenius norm.
SpectralReport analyse_unit(const Matrix3& N) {
  SpectralReport r;
  const double a2 = -N.trace();
  const double a1 = N(0, 0) * N(1, 1) - N(0, 1) * N(1, 0) + N(0, 0) * N(2, 2) -
                    N(0, 2) * N(2, 0) + N(1, 1) * N(2, 2) - N(1, 2) * N(2, 1);
  const double a0 = -N.determinant();
  r.char_poly = {a0, a1, a2};

  const double shift = -a2 / 3.0;
  const double p = a1 - a2 * a2 / 3.0;
  const double q = 2.0 * a2 * a2 * a2 / 27.0 - a2 * a1 / 3.0 + a0;
  const double disc = -(4.0 * p * p * p + 27.0 * q * q);

  using cd = std::complex<double>;
  if (std::abs(disc) <= kDiscriminantTol) {
    double double_root = 0.0;
    double simple_root = 0.0;
    if (std::abs(p) > kTripleTol) {
      double_root = -1.5 * q / p;
      simple_root = 3.0 * q / p;
    }
    r.all_real = true;
    if (std::abs(simple_root - double_root) <= kClusterGap) {
      const double t = shift;
      r.eigenvalues = {cd(t), cd(t), cd(t)};
      r.distinct = 1;
      r.semisimple = (N - t * Matrix3::Identity()).norm() <= kGeometricRankTol;
    } else {
      const double d = double_root + shift;
      const double s = polish_root(r.char_poly, simple_root + shift);
      r.eigenvalues = {cd(d), cd(d), cd(s)};
      r.distinct = 2;
      Eigen::JacobiSVD<Matrix3> svd(N - d * Matrix3::Identity());
      r.semisimple = svd.singularValues()[1] <= kGeometricRankTol;
    }
  } else if (disc > 0.0) {
    const double m = 2.0 * std::sqrt(-p / 3.0);
    const double arg = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
    const double theta = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k) {
      const double t = m * std::cos(theta - 2.0 * std::numbers::pi * k / 3.0);
      r.eigenvalues[static_cast<std::size_t>(k)] = cd(polish_root(r.char_poly, t + shift));
    }
    r.all_real = true;
    r.semisimple = true;
  } else {
    const double root = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
    const double u = std::cbrt(-q / 2.0 + root);
    const double v = std::cbrt(-q / 2.0 - root);
    const double real = polish_root(r.char_poly, u + v + shift);
    // Deflate: x^3 + a2 x^2 + a1 x + a0 = (x - real)(x^2 + b x + c).
    const double b = a2 + real;
    const double c = a1 + real * b;
    const double im = 0.5 * std::sqrt(std::max(0.0, 4.0 * c - b * b));
    r.eigenvalues = {cd(real), cd(-0.5 * b, -im), cd(-0.5 * b, im)};
    r.all_real = false;
    r.semisimple = true;
  }

  std::sort(r.eigenvalues.begin(), r.eigenvalues.end(), [](const cd& x, const cd& y) {
    return std::make_pair(x.real(), x.imag()) < std::make_pair(y.real(), y.imag());
  });
  if (r.distinct == 2 && r.eigenvalues[0] != r.eigenvalues[1])
    std::swap(r.eigenvalues[0], r.eigenvalues[2]);  // keep the double root first
  for (std::size_t k = 0; k < 3; ++k) r.spectrum[k] = r.eigenvalues[k].real();
  std::sort(r.spectrum.begin(), r.spectrum.end());
  r.nonsingular = std::abs(a0) > tol::rank;
  return r;
}

}  // namespace

SpectralReport spectral_analysis(const Matrix3& M) {
  const double norm = M.norm();
  if (norm == 0.0) {
    SpectralReport r;
    r.all_real = true;
    r.semisimple = true;
    r.nonsingular = false;
    r.distinct = 1;
    return r;
  }
  SpectralReport r = analyse_unit(M / norm);
  r.char_poly = {r.char_poly[0] * norm * norm * norm, r.char_poly[1] * norm * norm,
                 r.char_poly[2] * norm};
  for (auto& e : r.eigenvalues) e *= norm;
  for (auto& x : r.spectrum) x *= norm;
  return r;
}

JordanChevalley jordan_chevalley(const Matrix3& M) {
  const double norm = M.norm();
  if (norm == 0.0) return {Matrix3::Zero(), Matrix3::Zero()};
  const SpectralReport r = spectral_analysis(M);

  if (r.distinct == 3) return {M, Matrix3::Zero()};
  if (r.distinct == 1) {
    const Matrix3 S = r.eigenvalues[0].real() * Matrix3::Identity();
    if ((M - S).norm() <= 1e-12 * norm) return {M, Matrix3::Zero()};
    return {S, M - S};
  }

  // The double root comes first. (M - d)^2 / (s - d)^2 is the spectral
  // projector onto the simple eigenline along the generalized eigenplane.
  const double d = r.eigenvalues[0].real();
  const double s = r.eigenvalues[2].real();
  const Matrix3 shifted = M - d * Matrix3::Identity();
  const double gap = s - d;
  const Matrix3 numerator = shifted * shifted;
  const double condition = numerator.norm() / (gap * gap);
  if (!std::isfinite(condition) || condition > 1e12)
    throw IllConditioned("jordan_chevalley: spectral projector condition number exceeds 1e12");
  const Matrix3 projector = numerator / (gap * gap);
  const Matrix3 S = d * Matrix3::Identity() + gap * projector;
  if ((M - S).norm() <= 1e-12 * norm) return {M, Matrix3::Zero()};
  return {S, M - S};
}

Matrix3 real_part(const Matrix3& semisimple) {
  const SpectralReport r = spectral_analysis(semisimple);
  if (r.all_real) return semisimple;
  // eigenvalues: one real root and a conjugate pair a +- ib.
  std::complex<double> pair;
  double real_root = 0.0;
  for (const auto& e : r.eigenvalues) {
    if (e.imag() == 0.0) real_root = e.real();
    else pair = e;
  }
  const double a = pair.real();
  const double modulus2 = std::norm(pair);
  const Matrix3 I = Matrix3::Identity();
  const double denom = (real_root - a) * (real_root - a) + pair.imag() * pair.imag();
  const Matrix3 projector = (semisimple * semisimple - 2.0 * a * semisimple + modulus2 * I) / denom;
  return a * (I - projector) + real_root * projector;
}

namespace {

bool acceptable(const SpectralReport& r) { return r.all_real && r.semisimple && r.nonsingular; }

std::optional<SsndCertificate> try_candidate(const StructureConstants& A, const Matrix3& D) {
  if (D.norm() == 0.0) return std::nullopt;
  const SpectralReport direct = spectral_analysis(D);
  if (acceptable(direct) && derivation_residual(A, D) <= tol::residual)
    return SsndCertificate{D, direct};

  // The semisimple part of a derivation, and the real part of that, are
  // derivations too; both are verified before use.
  try {
    const Matrix3 S = real_part(jordan_chevalley(D).semisimple);
    if (S.norm() <= tol::rank * D.norm()) return std::nullopt;
    const SpectralReport report = spectral_analysis(S);
    if (acceptable(report) && derivation_residual(A, S) <= tol::residual)
      return SsndCertificate{S, report};
  } catch (const IllConditioned&) {
  }
  return std::nullopt;
}

Matrix3 combine(const DerivationSpace& space, const std::vector<double>& coefficients) {
  Matrix3 D = Matrix3::Zero();
  for (std::size_t n = 0; n < coefficients.size(); ++n) D += coefficients[n] * space.basis[n];
  return D;
}

}  // namespace

std::optional<SsndCertificate> find_real_ssnd(const StructureConstants& A, std::uint64_t seed) {
  const DerivationSpace space = derivation_space(A);
  if (space.dim() == 0) return std::nullopt;
  if (space.dim() == 1) {
    if (auto c = try_candidate(A, space.basis[0])) return c;
    return try_candidate(A, -space.basis[0]);
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gaussian;
  std::vector<double> coefficients(static_cast<std::size_t>(space.dim()));
  for (int draw = 0; draw < 200; ++draw) {
    for (auto& c : coefficients) c = gaussian(rng);
    if (auto c = try_candidate(A, combine(space, coefficients))) return c;
  }

  // All {-1, 0, 1} patterns, enumerated in base 3.
  int patterns = 1;
  for (int n = 0; n < space.dim(); ++n) patterns *= 3;
  for (int code = 1; code < patterns; ++code) {
    int rest = code;
    for (auto& c : coefficients) {
      c = static_cast<double>(rest % 3) - 1.0;
      rest /= 3;
    }
    if (auto c = try_candidate(A, combine(space, coefficients))) return c;
  }
  return std::nullopt;
}

}  // namespace hqds
