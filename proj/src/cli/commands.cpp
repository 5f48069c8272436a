#include "commands.hpp"

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "commexp/campaign.hpp"
#include "commexp/errors.hpp"
#include "commexp/expm.hpp"
#include "commexp/spectrum.hpp"
#include "commexp/theorems.hpp"
#include "commexp/tolerance.hpp"
#include "matrix_io.hpp"
#include "report.hpp"

namespace commexp::cli {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitHypothesisViolated = 4;
constexpr int kExitViolation = 5;

struct SharedOptions {
  ToleranceConfig tol;
  bool no_timestamp = false;
};

TheoremId theorem_from_name(const std::string& name) {
  if (name == "wermuth") return TheoremId::kWermuth;
  if (name == "main") return TheoremId::kMain;
  if (name == "cm") return TheoremId::kChabanMortad;
  throw std::invalid_argument("unknown theorem: " + name);
}

void emit(const nlohmann::ordered_json& doc) {
  std::cout << doc.dump(2) << '\n';
}

int verdict_exit_code(Verdict v) {
  switch (v) {
    case Verdict::kConsistent:
      return kExitOk;
    case Verdict::kHypothesisViolated:
      return kExitHypothesisViolated;
    case Verdict::kViolation:
      return kExitViolation;
  }
  return kExitNumerical;
}

int cmd_eig(const std::string& in_path, const SharedOptions& shared) {
  shared.tol.validate();
  const ComplexMatrix a = load_matrix(in_path);
  const Spectrum s = eigenvalues(a, shared.tol);
  nlohmann::ordered_json payload;
  payload["n"] = a.dim();
  payload["spectrum"] = spectrum_json(s);
  payload["diameter"] = format_double(diameter(s));
  const ScalingThreshold tau = scaling_threshold(s, kTwoPiI);
  payload["scaling_threshold"] =
      tau.is_unbounded() ? nlohmann::ordered_json("unbounded")
                         : nlohmann::ordered_json(format_double(tau.value()));
  payload["congruence"] = congruence_json(is_congruence_free(s, kTwoPiI, shared.tol));
  emit(make_document("eig", shared.tol, std::nullopt, std::move(payload),
                     !shared.no_timestamp));
  return kExitOk;
}

int cmd_verify(const std::string& theorem_name, const std::string& a_path,
               const std::string& b_path, int scan_samples,
               const SharedOptions& shared) {
  shared.tol.validate();
  const TheoremId theorem = theorem_from_name(theorem_name);
  const ComplexMatrix a = load_matrix(a_path);
  const ComplexMatrix b = load_matrix(b_path);

  TheoremReport report;
  switch (theorem) {
    case TheoremId::kWermuth:
      report = verify_wermuth(a, b, shared.tol);
      break;
    case TheoremId::kMain:
      report = verify_main(a, b, shared.tol);
      break;
    case TheoremId::kChabanMortad:
      report = verify_chaban_mortad(a, b, shared.tol);
      break;
  }

  nlohmann::ordered_json payload;
  payload["report"] = theorem_report_json(report);
  if (scan_samples > 0) {
    // The scan re-enacts the scaling argument; it is only defined when e^A
    // already commutes with B, so it degrades to null instead of failing
    // the whole command.
    try {
      payload["scan"] = witness_scan_json(
          t_witness_scan(a, b, scan_samples, shared.tol));
    } catch (const std::invalid_argument&) {
      payload["scan"] = nullptr;
    }
  }
  if (report.verdict == Verdict::kViolation) {
    save_matrix("violation_A.json", a);
    save_matrix("violation_B.json", b);
    payload["dump_files"] =
        nlohmann::ordered_json::array({"violation_A.json", "violation_B.json"});
  }
  emit(make_document("verify", shared.tol, std::nullopt, std::move(payload),
                     !shared.no_timestamp));
  return verdict_exit_code(report.verdict);
}

int cmd_counterexample(double scale, const std::string& out_a,
                       const std::string& out_b, const SharedOptions& shared) {
  shared.tol.validate();
  const auto [a, b] = counterexample_pair(scale);
  save_matrix(out_a, a);
  save_matrix(out_b, b);
  const TheoremReport report = verify_main(a, b, shared.tol);
  nlohmann::ordered_json payload;
  payload["scale"] = format_double(scale);
  nlohmann::ordered_json files;
  files["a"] = out_a;
  files["b"] = out_b;
  payload["files"] = std::move(files);
  payload["report"] = theorem_report_json(report);
  emit(make_document("counterexample", shared.tol, std::nullopt,
                     std::move(payload), !shared.no_timestamp));
  // Emitting the pair is the command's job; the expected hypothesis-violated
  // verdict in the embedded report is informational, not a failure.
  return kExitOk;
}

int cmd_fuzz(const std::string& theorem_name, int count, std::uint64_t seed,
             double margin, const SharedOptions& shared) {
  shared.tol.validate();
  CampaignOptions options;
  options.theorem = theorem_from_name(theorem_name);
  options.seed = seed;
  options.count = count;
  options.spectrum_margin = margin;
  options.tolerances = shared.tol;
  const CampaignSummary summary = run_campaign(options);

  nlohmann::ordered_json payload;
  payload["campaign"] = campaign_json(summary);
  if (summary.violations > 0) {
    nlohmann::ordered_json dump_files = nlohmann::ordered_json::array();
    for (const ViolationRecord& v : summary.violation_dumps) {
      const std::string stem = "fuzz_violation_" + std::to_string(v.index);
      save_matrix(stem + "_A.json", v.a);
      save_matrix(stem + "_B.json", v.b);
      dump_files.push_back(stem + "_A.json");
      dump_files.push_back(stem + "_B.json");
    }
    payload["dump_files"] = std::move(dump_files);
  }
  emit(make_document("fuzz", shared.tol, seed, std::move(payload),
                     !shared.no_timestamp));
  return summary.violations > 0 ? kExitViolation : kExitOk;
}

int cmd_expm(const std::string& in_path, const SharedOptions& shared) {
  shared.tol.validate();
  const ComplexMatrix a = load_matrix(in_path);
  const ExpmResult r = expm_cross_checked(a, shared.tol);
  nlohmann::ordered_json payload;
  payload["n"] = a.dim();
  payload["scaling_squarings"] = r.scaling_squarings;
  payload["oracle_gap"] = format_double(r.oracle_gap);
  payload["entries"] = matrix_entries_json(r.value);
  emit(make_document("expm", shared.tol, std::nullopt, std::move(payload),
                     !shared.no_timestamp));
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Verification toolkit for commuting operator exponentials"};
  app.require_subcommand(1);

  SharedOptions shared;
  app.add_option("--eq-tol", shared.tol.eq_tol,
                 "normwise equality threshold for commutation defects")
      ->capture_default_str();
  app.add_option("--congruence-tol", shared.tol.congruence_tol,
                 "distance threshold for the congruence-freedom test")
      ->capture_default_str();
  app.add_option("--spectral-tol", shared.tol.spectral_tol,
                 "eigenvalue accuracy budget")
      ->capture_default_str();
  app.add_option("--interval-margin", shared.tol.interval_margin,
                 "strictness margin for open-interval hypotheses")
      ->capture_default_str();
  app.add_flag("--no-timestamp", shared.no_timestamp,
               "omit the timestamp so reports are byte-stable");

  auto* eig = app.add_subcommand(
      "eig", "eigenvalues, congruence freedom and scaling threshold");
  eig->fallthrough();
  std::string eig_in;
  eig->add_option("--in", eig_in, "input matrix JSON file")->required();

  auto* verify = app.add_subcommand(
      "verify", "check one commutation theorem on a matrix pair");
  verify->fallthrough();
  std::string verify_theorem;
  std::string verify_a;
  std::string verify_b;
  int verify_scan = 0;
  verify->add_option("theorem", verify_theorem, "wermuth, main or cm")
      ->required()
      ->check(CLI::IsMember({"wermuth", "main", "cm"}));
  verify->add_option("--a", verify_a, "left matrix JSON file")->required();
  verify->add_option("--b", verify_b, "right matrix JSON file")->required();
  verify->add_option("--scan", verify_scan,
                     "also sample the sub-threshold witness scan at N points")
      ->check(CLI::PositiveNumber);

  auto* counter = app.add_subcommand(
      "counterexample",
      "emit the 2x2 pair showing the congruence hypothesis is necessary");
  counter->fallthrough();
  double counter_scale = 1.0;
  std::string counter_out_a = "counterexample_A.json";
  std::string counter_out_b = "counterexample_B.json";
  counter->add_option("--scale", counter_scale, "off-diagonal scale of B")
      ->capture_default_str();
  counter->add_option("--out-a", counter_out_a, "output path for A")
      ->capture_default_str();
  counter->add_option("--out-b", counter_out_b, "output path for B")
      ->capture_default_str();

  auto* fuzz = app.add_subcommand(
      "fuzz", "randomized verification campaign for one theorem");
  fuzz->fallthrough();
  std::string fuzz_theorem;
  int fuzz_count = 100;
  std::uint64_t fuzz_seed = 0;
  double fuzz_margin = 0.1;
  fuzz->add_option("theorem", fuzz_theorem, "wermuth, main or cm")
      ->required()
      ->check(CLI::IsMember({"wermuth", "main", "cm"}));
  fuzz->add_option("--count", fuzz_count, "number of instances")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  fuzz->add_option("--seed", fuzz_seed, "campaign seed")
      ->capture_default_str();
  fuzz->add_option("--margin", fuzz_margin,
                   "congruence-freedom margin for generated spectra")
      ->capture_default_str();

  auto* expm_cmd = app.add_subcommand(
      "expm", "matrix exponential, cross-checked against the Taylor oracle");
  expm_cmd->fallthrough();
  std::string expm_in;
  expm_cmd->add_option("--in", expm_in, "input matrix JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*eig) return cmd_eig(eig_in, shared);
    if (*verify) {
      return cmd_verify(verify_theorem, verify_a, verify_b, verify_scan,
                        shared);
    }
    if (*counter) {
      return cmd_counterexample(counter_scale, counter_out_a, counter_out_b,
                                shared);
    }
    if (*fuzz) {
      return cmd_fuzz(fuzz_theorem, fuzz_count, fuzz_seed, fuzz_margin,
                      shared);
    }
    if (*expm_cmd) return cmd_expm(expm_in, shared);
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitUsage;
}

}  // namespace commexp::cli
