#include "hqds/classify.hpp"
#include "hqds/dynamics.hpp"
#include "hqds/io.hpp"
#include "hqds/spectrum.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using nlohmann::json;
using namespace hqds;

namespace {

json to_json(const Matrix3& M) {
  json rows = json::array();
  for (int i = 0; i < 3; ++i) rows.push_back({M(i, 0), M(i, 1), M(i, 2)});
  return rows;
}

json to_json(const Vec3& v) { return {v[0], v[1], v[2]}; }

json to_json(const InvariantFingerprint& fp) {
  return {{"dim_ann", fp.dim_ann},
          {"dim_sq", fp.dim_sq},
          {"sq_in_ann", fp.sq_in_ann},
          {"nilcone", std::string(to_string(fp.nilcone_kind))},
          {"induced_form", std::string(to_string(fp.induced_form_sign))},
          {"has_idempotent", fp.has_idempotent},
          {"solvable", fp.flags.solvable},
          {"nilpotent", fp.flags.nilpotent},
          {"associative", fp.flags.associative},
          {"power_associative", fp.flags.power_associative},
          {"dim_der", fp.dim_der}};
}

json to_json(const ClassificationResult& r) {
  json out = {{"tag", std::string(to_string(r.cls))}, {"route", r.route}};
  if (r.basis_change) {
    out["basis_change"] = to_json(*r.basis_change);
    out["residual"] = r.residual;
  }
  return out;
}

json ssnd_json(const std::optional<SsndCertificate>& ssnd) {
  if (!ssnd) return {{"present", false}};
  const auto& s = ssnd->report.spectrum;
  return {{"present", true},
          {"matrix", to_json(ssnd->derivation)},
          {"spectrum", {s[0], s[1], s[2]}}};
}

json derivations_json(const DerivationSpace& der) {
  json basis = json::array();
  for (const Matrix3& D : der.basis) basis.push_back(to_json(D));
  return {{"dim", der.dim()}, {"basis", basis}};
}

std::vector<double> parse_triple(const std::string& text) {
  std::vector<double> values;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    const double v = std::stod(item, &used);
    if (used != item.size()) throw std::invalid_argument("not a number: " + item);
    values.push_back(v);
  }
  if (values.size() != 3) throw std::invalid_argument("expected three comma-separated values");
  return values;
}

int cmd_classify(const std::string& path, std::uint64_t seed) {
  const InputDocument doc = read_input_file(path);
  const StructureConstants& A = doc.constants;

  const ClassificationResult direct = classify(A, seed);
  const ClassificationResult via = classify_via_derivation(A, seed);
  const auto ssnd = find_real_ssnd(A, seed);

  json warnings = json::array();
  int code = is_canonical(direct.cls) ? 0 : 2;
  if (is_canonical(direct.cls) && is_canonical(via.cls) && direct.cls != via.cls) {
    warnings.push_back("classification paths disagree: " + std::string(to_string(direct.cls)) +
                       " vs " + std::string(to_string(via.cls)));
    code = 3;
  }
  if (ssnd && !is_canonical(direct.cls) && direct.cls != CanonicalClass::NullAlgebra)
    warnings.push_back(
        "a real semisimple nonsingular derivation exists but no canonical class matched");

  json integrals = json::array();
  const auto covectors = linear_first_integrals(Hqds{A});
  for (Eigen::Index r = 0; r < covectors.rows(); ++r)
    integrals.push_back({covectors(r, 0), covectors(r, 1), covectors(r, 2)});

  json report = {{"fingerprint", to_json(direct.fingerprint)},
                 {"classification", to_json(direct)},
                 {"via_derivation", to_json(via)},
                 {"derivation_space", derivations_json(derivation_space(A))},
                 {"ssnd", ssnd_json(ssnd)},
                 {"first_integrals", integrals},
                 {"warnings", warnings}};
  if (doc.label) report["label"] = *doc.label;

  std::cout << report.dump(2) << '\n';
  for (const auto& w : warnings) std::cerr << "warning: " << w.get<std::string>() << '\n';
  return code;
}

int cmd_simulate(const std::string& path, const std::string& x0_text, double t_end, double h0,
                 const std::string& out_path, std::uint64_t seed) {
  const InputDocument doc = read_input_file(path);
  const auto x0v = parse_triple(x0_text);
  const Vec3 x0(x0v[0], x0v[1], x0v[2]);
  const Hqds sys{doc.constants};

  IntegrateOptions options;
  const ClassificationResult cls = classify(doc.constants, seed);
  if (is_canonical(cls.cls)) {
    options.cell_class = cls.cls;
    options.to_canonical = cls.basis_change->inverse();
  }
  const Trajectory traj = integrate(sys, x0, t_end, h0, options);

  const auto integrals = linear_first_integrals(sys);
  double drift = 0.0;
  for (const Sample& s : traj.samples)
    if (integrals.rows() > 0) drift = std::max(drift, (integrals * (s.x - x0)).cwiseAbs().maxCoeff());

  if (out_path.empty()) {
    write_csv(std::cout, traj);
  } else {
    std::ofstream out(out_path);
    if (!out) throw ParseError("cannot write " + out_path);
    write_csv(out, traj);
  }
  json summary = {{"terminated", std::string(to_string(traj.terminated))},
                  {"samples", traj.samples.size()},
                  {"t_final", traj.back().t},
                  {"x_final", to_json(traj.back().x)},
                  {"first_integrals", integrals.rows()},
                  {"first_integral_drift", drift},
                  {"class", std::string(to_string(cls.cls))}};
  (out_path.empty() ? std::cerr : std::cout) << summary.dump(2) << '\n';
  return 0;
}

int cmd_verify(const std::string& path, std::uint64_t seed) {
  const InputDocument doc = read_input_file(path);
  const ClassificationResult cls = classify(doc.constants, seed);
  const auto results = verify_dictionary(doc.constants, seed);

  json checks = json::array();
  bool all = true;
  for (const auto& r : results) {
    checks.push_back({{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    all = all && r.passed;
  }
  json report = {{"class", std::string(to_string(cls.cls))},
                 {"fingerprint", to_json(cls.fingerprint)},
                 {"checks", checks},
                 {"passed", all}};
  if (!is_canonical(cls.cls))
    report["note"] = "class-specific checks skipped; only the general dictionary applies";
  std::cout << report.dump(2) << '\n';
  for (const auto& r : results)
    std::cerr << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
  return all ? 0 : 4;
}

int cmd_spectrum(double lambda, double mu) {
  if (lambda * mu == 0.0 || std::abs(lambda) <= tol::rank || std::abs(mu) <= tol::rank) {
    std::cerr << "error: nonsingular derivation requires lambda * mu != 0\n";
    return 1;
  }
  const ConstantMask mask = admissible_mask(lambda, mu);
  const SpectrumCase c = normalize_spectrum({1.0, lambda, mu});
  const std::string family = c.family == SpectrumFamily::OffArrangement
                                 ? "off-arrangement"
                                 : "family " + to_string(c.family);
  json report = {{"lambda", lambda},
                 {"mu", mu},
                 {"mask", mask.letters()},
                 {"lines", arrangement_lines(lambda, mu)},
                 {"family", family},
                 {"representative", {c.representative[0], c.representative[1], c.representative[2]}},
                 {"scale", c.scale},
                 {"permutation", {c.permutation[0], c.permutation[1], c.permutation[2]}}};
  std::cout << report.dump(2) << '\n';
  return 0;
}

int cmd_derivations(const std::string& path, std::uint64_t seed) {
  const InputDocument doc = read_input_file(path);
  const DerivationSpace der = derivation_space(doc.constants);
  json report = {{"derivation_space", derivations_json(der)},
                 {"ssnd", ssnd_json(find_real_ssnd(doc.constants, seed))}};
  std::cout << report.dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Homogeneous quadratic systems on R^3 and their commutative algebras"};
  app.require_subcommand(1);

  std::string input;
  std::uint64_t seed = 0;

  auto* classify_cmd = app.add_subcommand("classify", "Classify an algebra and report certificates");
  classify_cmd->add_option("input", input, "Structure constant document")->required();
  classify_cmd->add_option("--seed", seed, "Seed for randomized searches");

  std::string x0 = "0,0,0";
  double t_end = 1.0;
  double h0 = 1e-2;
  std::string out;
  auto* simulate_cmd = app.add_subcommand("simulate", "Integrate x' = x*x and write CSV");
  simulate_cmd->add_option("input", input, "Structure constant document")->required();
  simulate_cmd->add_option("--x0", x0, "Initial state a,b,c")->required();
  simulate_cmd->add_option("--t-end", t_end, "Final time")->required();
  simulate_cmd->add_option("--h0", h0, "Initial step");
  simulate_cmd->add_option("--out", out, "CSV output path (default: standard output)");
  simulate_cmd->add_option("--seed", seed, "Seed for randomized searches");

  auto* verify_cmd = app.add_subcommand("verify", "Run the dynamics property battery");
  verify_cmd->add_option("input", input, "Structure constant document")->required();
  verify_cmd->add_option("--seed", seed, "Seed for randomized searches");

  double lambda = 0.0;
  double mu = 0.0;
  auto* spectrum_cmd = app.add_subcommand("spectrum", "Constant mask and family of diag(1, lambda, mu)");
  spectrum_cmd->add_option("--lambda", lambda, "Second eigenvalue")->required();
  spectrum_cmd->add_option("--mu", mu, "Third eigenvalue")->required();
  spectrum_cmd->add_option("--seed", seed, "Unused; accepted for uniformity");

  auto* derivations_cmd = app.add_subcommand("derivations", "Derivation algebra and SSND search");
  derivations_cmd->add_option("input", input, "Structure constant document")->required();
  derivations_cmd->add_option("--seed", seed, "Seed for randomized searches");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*classify_cmd) return cmd_classify(input, seed);
    if (*simulate_cmd) return cmd_simulate(input, x0, t_end, h0, out, seed);
    if (*verify_cmd) return cmd_verify(input, seed);
    if (*spectrum_cmd) return cmd_spectrum(lambda, mu);
    if (*derivations_cmd) return cmd_derivations(input, seed);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
