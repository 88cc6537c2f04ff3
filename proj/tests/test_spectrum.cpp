#include "hqds/spectrum.hpp"
#include "hqds/structure_constants.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace hqds;

namespace {

// Leibniz for D = diag(1, lambda, mu) on e_i e_j = c e_k: c (w_k - w_i - w_j) = 0.
std::string mask_by_weights(double lambda, double mu) {
  const double w[3] = {1.0, lambda, mu};
  std::string letters;
  for (char name : kConditionalConstants) {
    const NamedSlot s = named_slot(name);
    if (std::abs(w[s.k] - w[s.i] - w[s.j]) <= 1e-9) letters.push_back(name);
  }
  return letters;
}

void check_case(const std::array<double, 3>& spectrum, const SpectrumCase& c) {
  for (int i = 0; i < 3; ++i)
    CHECK(c.representative[i] ==
          doctest::Approx(c.scale * spectrum[c.permutation[i]]).epsilon(1e-12));
  CHECK(c.representative[0] == 1.0);
  CHECK(c.representative[1] == c.lambda);
  CHECK(c.representative[2] == c.mu);
}

}  // namespace

TEST_CASE("forced zero constants never survive") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  for (int n = 0; n < 200; ++n) {
    const double lambda = u(rng), mu = u(rng);
    const double w[3] = {1.0, lambda, mu};
    for (char name : kForcedZeroConstants) {
      const NamedSlot s = named_slot(name);
      // each forced factor is minus one of the weights
      CHECK(std::abs(w[s.k] - w[s.i] - w[s.j]) > 0.0);
    }
  }
}

TEST_CASE("displayed masks") {
  CHECK(admissible_mask(-1.0, 2.0).letters() == "cs");
  CHECK(admissible_mask(1.0, 2.0).letters() == "cfn");
  CHECK(admissible_mask(7.0, 11.0).letters().empty());
  CHECK(admissible_mask(2.0, 4.0).letters() == "bf");
  CHECK_THROWS_AS(admissible_mask(0.0, 1.0), SingularSpectrum);
  CHECK_THROWS_AS(admissible_mask(1.0, 0.0), SingularSpectrum);
}

TEST_CASE("mask agrees with the weight oracle on arrangement points") {
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  const auto on_line = [&](int line, double t) -> std::pair<double, double> {
    switch (line) {
      case 0: return {2.0, t};
      case 1: return {t, 2.0};
      case 2: return {0.5, t};
      case 3: return {t, 2.0 * t};
      case 4: return {t, 0.5};
      case 5: return {2.0 * t, t};
      case 6: return {t, t + 1.0};
      case 7: return {t + 1.0, t};
      default: return {t, 1.0 - t};
    }
  };
  for (int n = 0; n < 500; ++n) {
    const auto [lambda, mu] = on_line(n % 9, u(rng));
    if (std::abs(lambda) < 1e-3 || std::abs(mu) < 1e-3) continue;
    CHECK(admissible_mask(lambda, mu).letters() == mask_by_weights(lambda, mu));
  }
  for (double lambda : {-1.0, 0.5, 1.0, 2.0, 3.0})
    for (double mu : {-1.0, 0.5, 1.0, 2.0, 4.0})
      CHECK(admissible_mask(lambda, mu).letters() == mask_by_weights(lambda, mu));
}

TEST_CASE("arrangement line names") {
  const auto lines = arrangement_lines(-1.0, 2.0);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == "mu=2");
  CHECK(lines[1] == "lambda+mu=1");
}

TEST_CASE("isolated representatives") {
  struct Expect {
    std::array<double, 3> spectrum;
    SpectrumFamily family;
    double lambda, mu;
  };
  const Expect cases[] = {
      {{1, -1, 2}, SpectrumFamily::F1, -1, 2}, {{-2, 4, 2}, SpectrumFamily::F1, -1, 2},
      {{1, 2, 4}, SpectrumFamily::F2, 2, 4},   {{3, 6, 12}, SpectrumFamily::F2, 2, 4},
      {{1, 1, 2}, SpectrumFamily::F3, 1, 2},   {{2, 1, 1}, SpectrumFamily::F3, 1, 2},
      {{1, 2, 2}, SpectrumFamily::F4, 2, 2},   {{1, 2, 3}, SpectrumFamily::F5, 2, 3},
      {{-3, -2, -1}, SpectrumFamily::F5, 2, 3},
  };
  for (const auto& e : cases) {
    const SpectrumCase c = normalize_spectrum(e.spectrum);
    CHECK(c.family == e.family);
    CHECK(c.lambda == e.lambda);
    CHECK(c.mu == e.mu);
    check_case(e.spectrum, c);
  }
}

TEST_CASE("parametric representatives") {
  // (1, 2, 7) also normalizes to (1, 1/7, 2/7), which is smaller
  const auto seven = normalize_spectrum({1, 2, 7});
  CHECK(seven.family == SpectrumFamily::F7);
  CHECK(seven.lambda == doctest::Approx(1.0 / 7.0));

  const auto f6 = normalize_spectrum({1, 2, 0.3});
  CHECK(f6.family == SpectrumFamily::F6);
  CHECK(f6.lambda == 2.0);

  const auto f7 = normalize_spectrum({1, -3, -6});
  CHECK(f7.family == SpectrumFamily::F7);
  CHECK(f7.mu == doctest::Approx(2.0 * f7.lambda));

  const auto f8 = normalize_spectrum({1, -3, -2});
  CHECK(f8.family == SpectrumFamily::F8);
  CHECK(f8.mu == doctest::Approx(f8.lambda + 1.0));

  const auto f9 = normalize_spectrum({1, 0.3, 0.7});
  CHECK(f9.family == SpectrumFamily::F9);
  CHECK(f9.mu == doctest::Approx(1.0 - f9.lambda));

  const auto off = normalize_spectrum({1, 7, 11});
  CHECK(off.family == SpectrumFamily::OffArrangement);
  CHECK(to_string(off.family) == "off-arrangement");
  CHECK(to_string(f6.family) == "6");
}

TEST_CASE("representatives of families lie on the arrangement") {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::uniform_real_distribution<double> scale(0.2, 5.0);
  for (int n = 0; n < 500; ++n) {
    const double t = u(rng);
    std::array<double, 3> s;
    switch (n % 4) {
      case 0: s = {1.0, 2.0, t}; break;
      case 1: s = {1.0, t, 2.0 * t}; break;
      case 2: s = {1.0, t, t + 1.0}; break;
      default: s = {1.0, t, 1.0 - t}; break;
    }
    if (std::abs(s[1]) < 1e-3 || std::abs(s[2]) < 1e-3) continue;
    const double k = (n % 2 ? -1.0 : 1.0) * scale(rng);
    for (auto& x : s) x *= k;
    std::swap(s[n % 3], s[(n + 1) % 3]);
    const SpectrumCase c = normalize_spectrum(s);
    check_case(s, c);
    CHECK(c.family != SpectrumFamily::OffArrangement);
    CHECK_FALSE(admissible_mask(c.lambda, c.mu).letters().empty());
  }
}

TEST_CASE("zero eigenvalues are rejected") {
  CHECK_THROWS_AS(normalize_spectrum({1, 0, 2}), SingularSpectrum);
}
