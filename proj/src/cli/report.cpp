#include "report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <stdexcept>

#include "commexp/kernels.hpp"
#include "commexp/version.hpp"

namespace commexp::cli {

namespace {

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}

double parse_double(const std::string& s) {
  // strtod instead of stod: underflow to a denormal is a valid parse, not
  // an out_of_range error, and format_double can legitimately emit one
  const char* begin = s.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || end != begin + s.size()) {
    throw std::invalid_argument("not a number: " + s);
  }
  if (std::isinf(v)) {
    throw std::invalid_argument("out of double range: " + s);
  }
  return v;
}

nlohmann::ordered_json complex_to_json(Complex v) {
  return nlohmann::ordered_json::array(
      {format_double(v.real()), format_double(v.imag())});
}

Complex complex_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_string() ||
      !j[1].is_string()) {
    throw std::invalid_argument("complex value must be a [re, im] string pair");
  }
  return Complex(parse_double(j[0].get<std::string>()),
                 parse_double(j[1].get<std::string>()));
}

nlohmann::ordered_json tolerances_json(const ToleranceConfig& cfg) {
  nlohmann::ordered_json j;
  j["eq_tol"] = format_double(cfg.eq_tol);
  j["congruence_tol"] = format_double(cfg.congruence_tol);
  j["spectral_tol"] = format_double(cfg.spectral_tol);
  j["interval_margin"] = format_double(cfg.interval_margin);
  return j;
}

nlohmann::ordered_json spectrum_json(const Spectrum& s) {
  std::vector<Complex> sorted = s.values;
  std::sort(sorted.begin(), sorted.end(), [](Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  nlohmann::ordered_json values = nlohmann::ordered_json::array();
  for (const Complex& v : sorted) values.push_back(complex_to_json(v));
  nlohmann::ordered_json j;
  j["values"] = std::move(values);
  j["condition_hint"] = format_double(s.condition_hint);
  return j;
}

nlohmann::ordered_json congruence_json(const CongruenceReport& r) {
  nlohmann::ordered_json j;
  j["z"] = complex_to_json(r.z);
  j["free"] = r.free;
  nlohmann::ordered_json witnesses = nlohmann::ordered_json::array();
  for (const CongruenceWitness& w : r.witnesses) {
    nlohmann::ordered_json wj;
    wj["s1"] = complex_to_json(w.s1);
    wj["s2"] = complex_to_json(w.s2);
    wj["k"] = w.k;
    wj["residual"] = format_double(w.residual);
    witnesses.push_back(std::move(wj));
  }
  j["witnesses"] = std::move(witnesses);
  return j;
}

nlohmann::ordered_json theorem_report_json(const TheoremReport& r) {
  nlohmann::ordered_json j;
  j["theorem"] = to_string(r.theorem);
  j["hypothesis_holds"] = r.hypothesis_holds;
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const HypothesisCheck& c : r.hypothesis_detail) {
    nlohmann::ordered_json cj;
    cj["name"] = c.name;
    cj["passed"] = c.passed;
    cj["congruence"] = c.congruence.has_value()
                           ? congruence_json(*c.congruence)
                           : nlohmann::ordered_json(nullptr);
    checks.push_back(std::move(cj));
  }
  j["hypothesis_detail"] = std::move(checks);
  j["exp_defect"] = format_double(r.exp_defect);
  j["op_defect"] = format_double(r.op_defect);
  j["verdict"] = to_string(r.verdict);
  j["inconclusive_margin"] = r.inconclusive_margin;
  return j;
}

nlohmann::ordered_json witness_scan_json(const WitnessScan& s) {
  nlohmann::ordered_json j;
  j["tau"] = s.tau.is_unbounded()
                 ? nlohmann::ordered_json("unbounded")
                 : nlohmann::ordered_json(format_double(s.tau.value()));
  nlohmann::ordered_json samples = nlohmann::ordered_json::array();
  for (const WitnessScanSample& sample : s.samples) {
    nlohmann::ordered_json sj;
    sj["t"] = format_double(sample.t);
    sj["exp_defect"] = format_double(sample.exp_defect_t);
    samples.push_back(std::move(sj));
  }
  j["samples"] = std::move(samples);
  j["inferred_op_defect"] = format_double(s.inferred_op_defect);
  return j;
}

nlohmann::ordered_json campaign_json(const CampaignSummary& s) {
  nlohmann::ordered_json j;
  j["theorem"] = to_string(s.theorem);
  j["count"] = s.count;
  j["consistent"] = s.consistent;
  j["hypothesis_violated"] = s.hypothesis_violated;
  j["violations"] = s.violations;
  j["inconclusive"] = s.inconclusive;
  j["commuting_instances"] = s.commuting_instances;
  j["certified_free"] = s.certified_free;
  j["max_commuting_exp_defect"] = format_double(s.max_commuting_exp_defect);
  j["max_commuting_op_defect"] = format_double(s.max_commuting_op_defect);
  j["min_noncommuting_exp_defect"] =
      format_double(s.min_noncommuting_exp_defect);
  j["min_noncommuting_op_defect"] =
      format_double(s.min_noncommuting_op_defect);
  j["min_congruence_margin"] = format_double(s.min_congruence_margin);
  nlohmann::ordered_json dumps = nlohmann::ordered_json::array();
  for (const ViolationRecord& v : s.violation_dumps) {
    nlohmann::ordered_json vj;
    vj["index"] = v.index;
    vj["instance_seed"] = v.instance_seed;
    vj["report"] = theorem_report_json(v.report);
    dumps.push_back(std::move(vj));
  }
  j["violation_dumps"] = std::move(dumps);
  return j;
}

nlohmann::ordered_json matrix_entries_json(const ComplexMatrix& m) {
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    entries.push_back(complex_to_json(m.data()[i]));
  }
  return entries;
}

nlohmann::ordered_json make_document(const std::string& command,
                                     const ToleranceConfig& cfg,
                                     std::optional<std::uint64_t> seed,
                                     nlohmann::ordered_json payload,
                                     bool with_timestamp) {
  nlohmann::ordered_json doc;
  doc["tool"] = kToolName;
  doc["version"] = kVersion;
  doc["command"] = command;
  if (with_timestamp) doc["timestamp"] = utc_timestamp();
  doc["two_pi"] = format_double(kTwoPi);
  doc["kernel_backend"] = kernels::active().name;
  doc["tolerances"] = tolerances_json(cfg);
  doc["seed"] = seed.has_value() ? nlohmann::ordered_json(*seed)
                                 : nlohmann::ordered_json(nullptr);
  doc["payload"] = std::move(payload);
  return doc;
}

}  // namespace commexp::cli
