#pragma once

#include "hqds/core.hpp"

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace hqds {

/// Which of the nine conditional constants b,c,d,f,g,h,n,q,s may be nonzero
/// for an algebra admitting diag(1, lambda, mu) as a derivation in its
/// eigenbasis. The remaining nine constants a,e,j,k,m,p,r,t,v are always zero.
struct ConstantMask {
  bool b = false, c = false, d = false, f = false, g = false, h = false, n = false,
       q = false, s = false;

  bool allows(char name) const;
  std::string letters() const;
  friend bool operator==(const ConstantMask&, const ConstantMask&) = default;
};

inline constexpr std::string_view kConditionalConstants = "bcdfghnqs";
inline constexpr std::string_view kForcedZeroConstants = "aejkmprtv";

ConstantMask admissible_mask(double lambda, double mu);

/// Names of the arrangement lines through (lambda, mu), e.g. "mu=2".
std::vector<std::string> arrangement_lines(double lambda, double mu);

enum class SpectrumFamily { F1 = 1, F2, F3, F4, F5, F6, F7, F8, F9, OffArrangement };

std::string to_string(SpectrumFamily family);

struct SpectrumCase {
  double lambda = 0.0;
  double mu = 0.0;
  SpectrumFamily family = SpectrumFamily::OffArrangement;
  /// (1, lambda, mu) of the chosen reduced spectrum.
  std::array<double, 3> representative{};
  /// representative[i] == scale * spectrum[permutation[i]].
  double scale = 1.0;
  std::array<int, 3> permutation{0, 1, 2};
};

/// Reduces a nonsingular real spectrum to one of the representative forms by
/// scaling and permuting. Throws SingularSpectrum for a zero entry.
SpectrumCase normalize_spectrum(const std::array<double, 3>& spectrum);

/// True when x agrees with the given value within the arrangement tolerance.
bool arrangement_equal(double x, double value);

}  // namespace hqds
