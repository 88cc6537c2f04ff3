#include "hqds/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <optional>
#include <tuple>

namespace hqds {

bool arrangement_equal(double x, double value) {
  return std::abs(x - value) <= tol::residual * std::max(1.0, std::abs(value));
}

bool ConstantMask::allows(char name) const {
  switch (name) {
    case 'b': return b;
    case 'c': return c;
    case 'd': return d;
    case 'f': return f;
    case 'g': return g;
    case 'h': return h;
    case 'n': return n;
    case 'q': return q;
    case 's': return s;
    default: return false;
  }
}

std::string ConstantMask::letters() const {
  std::string out;
  for (char name : kConditionalConstants)
    if (allows(name)) out.push_back(name);
  return out;
}

namespace {

void require_nonsingular(double lambda, double mu) {
  if (std::abs(lambda) <= tol::rank || std::abs(mu) <= tol::rank)
    throw SingularSpectrum("nonsingular derivation requires lambda * mu != 0");
}

}  // namespace

ConstantMask admissible_mask(double lambda, double mu) {
  require_nonsingular(lambda, mu);
  ConstantMask m;
  m.b = arrangement_equal(lambda, 2.0);
  m.c = arrangement_equal(mu, 2.0);
  m.d = arrangement_equal(lambda, 0.5);
  m.f = arrangement_equal(mu, 2.0 * lambda);
  m.g = arrangement_equal(mu, 0.5);
  m.h = arrangement_equal(lambda, 2.0 * mu);
  m.n = arrangement_equal(mu, lambda + 1.0);
  m.q = arrangement_equal(lambda, mu + 1.0);
  m.s = arrangement_equal(lambda + mu, 1.0);
  return m;
}

std::vector<std::string> arrangement_lines(double lambda, double mu) {
  const ConstantMask m = admissible_mask(lambda, mu);
  std::vector<std::string> lines;
  if (m.b) lines.emplace_back("lambda=2");
  if (m.c) lines.emplace_back("mu=2");
  if (m.d) lines.emplace_back("lambda=1/2");
  if (m.f) lines.emplace_back("mu=2lambda");
  if (m.g) lines.emplace_back("mu=1/2");
  if (m.h) lines.emplace_back("lambda=2mu");
  if (m.n) lines.emplace_back("mu=lambda+1");
  if (m.q) lines.emplace_back("lambda=mu+1");
  if (m.s) lines.emplace_back("lambda+mu=1");
  return lines;
}

std::string to_string(SpectrumFamily family) {
  if (family == SpectrumFamily::OffArrangement) return "off-arrangement";
  return std::to_string(static_cast<int>(family));
}

namespace {

bool in_set(double x, std::initializer_list<double> values) {
  return std::any_of(values.begin(), values.end(),
                     [x](double v) { return arrangement_equal(x, v); });
}

struct ExactPoint {
  double x, y;
  SpectrumFamily family;
};

// Isolated representatives (1, x, y).
std::optional<ExactPoint> exact_family(double x, double y) {
  static constexpr ExactPoint points[] = {
      {-1.0, 2.0, SpectrumFamily::F1}, {1.0, 2.0, SpectrumFamily::F3},
      {2.0, 2.0, SpectrumFamily::F4},  {2.0, 3.0, SpectrumFamily::F5},
      {2.0, 4.0, SpectrumFamily::F2},
  };
  for (const auto& p : points)
    if (arrangement_equal(x, p.x) && arrangement_equal(y, p.y)) return p;
  return std::nullopt;
}

// One-parameter representatives (1, 2, y), (1, x, 2x), (1, x, x+1), (1, x, 1-x).
std::optional<SpectrumFamily> parametric_family(double x, double y) {
  if (arrangement_equal(x, 2.0) && !in_set(y, {-1.0, 0.0, 0.5, 1.0, 2.0, 3.0, 4.0}))
    return SpectrumFamily::F6;
  if (arrangement_equal(y, 2.0 * x) && !in_set(x, {-1.0, 0.0, 0.25, 0.5, 1.0, 2.0}))
    return SpectrumFamily::F7;
  if (arrangement_equal(y, x + 1.0) && !in_set(x, {-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0}))
    return SpectrumFamily::F8;
  if (arrangement_equal(y, 1.0 - x) &&
      !in_set(x, {-1.0, 0.0, 1.0 / 3.0, 0.5, 2.0 / 3.0, 1.0, 2.0}))
    return SpectrumFamily::F9;
  return std::nullopt;
}

struct Candidate {
  SpectrumCase result;
  bool exact = false;
};

bool lexicographically_less(const SpectrumCase& a, const SpectrumCase& b) {
  return std::tie(a.lambda, a.mu) < std::tie(b.lambda, b.mu);
}

}  // namespace

SpectrumCase normalize_spectrum(const std::array<double, 3>& spectrum) {
  for (double x : spectrum)
    if (!std::isfinite(x) || x == 0.0)
      throw SingularSpectrum("nonsingular derivation requires nonzero eigenvalues");

  std::optional<Candidate> best;
  std::optional<SpectrumCase> fallback;
  for (int pivot = 0; pivot < 3; ++pivot) {
    const int others[2] = {(pivot + 1) % 3, (pivot + 2) % 3};
    for (int swap = 0; swap < 2; ++swap) {
      const int j = others[swap];
      const int k = others[1 - swap];
      SpectrumCase c;
      c.scale = 1.0 / spectrum[pivot];
      c.permutation = {pivot, j, k};
      c.lambda = spectrum[j] * c.scale;
      c.mu = spectrum[k] * c.scale;
      c.representative = {1.0, c.lambda, c.mu};
      if (pivot == 0 && c.lambda <= c.mu) fallback = c;

      Candidate candidate{c, false};
      if (auto point = exact_family(c.lambda, c.mu)) {
        candidate.result.family = point->family;
        candidate.result.lambda = point->x;
        candidate.result.mu = point->y;
        candidate.result.representative = {1.0, point->x, point->y};
        candidate.exact = true;
      } else if (auto par = parametric_family(c.lambda, c.mu)) {
        candidate.result.family = *par;
      } else {
        continue;
      }
      const bool better =
          !best || (candidate.exact && !best->exact) ||
          (candidate.exact == best->exact && lexicographically_less(candidate.result, best->result));
      if (better) best = candidate;
    }
  }
  if (best) return best->result;

  SpectrumCase off = *fallback;
  off.family = SpectrumFamily::OffArrangement;
  return off;
}

}  // namespace hqds
