#include "commexp/theorems.hpp"

#include <cmath>
#include <stdexcept>

#include "commexp/errors.hpp"

namespace commexp {

namespace {

void require_pair(const ComplexMatrix& a, const ComplexMatrix& b,
                  const char* who) {
  if (a.dim() == 0 || b.dim() == 0) {
    throw std::invalid_argument(std::string(who) + ": empty matrix operand");
  }
  if (a.dim() != b.dim()) {
    throw std::invalid_argument(std::string(who) + ": dimension mismatch");
  }
}

/// Two-sided thresholding of the iff. Defects in (eq_tol, 10*eq_tol] are
/// neither "zero" nor "clearly nonzero"; they flag the margin but cannot
/// produce a VIOLATION.
Verdict decide(bool hypothesis_holds, double exp_defect, double op_defect,
               const ToleranceConfig& cfg, bool& inconclusive_margin) {
  const double lo = cfg.eq_tol;
  const double hi = 10.0 * cfg.eq_tol;
  inconclusive_margin = (exp_defect > lo && exp_defect <= hi) ||
                        (op_defect > lo && op_defect <= hi);
  if (!hypothesis_holds) return Verdict::kHypothesisViolated;
  const bool exp_zero = exp_defect <= lo;
  const bool exp_nonzero = exp_defect > hi;
  const bool op_zero = op_defect <= lo;
  const bool op_nonzero = op_defect > hi;
  if ((exp_zero && op_nonzero) || (op_zero && exp_nonzero)) {
    return Verdict::kViolation;
  }
  return Verdict::kConsistent;
}

}  // namespace

const char* to_string(TheoremId id) {
  switch (id) {
    case TheoremId::kWermuth:
      return "wermuth";
    case TheoremId::kMain:
      return "main";
    case TheoremId::kChabanMortad:
      return "chaban_mortad";
  }
  return "unknown";
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kConsistent:
      return "consistent";
    case Verdict::kHypothesisViolated:
      return "hypothesis-violated";
    case Verdict::kViolation:
      return "VIOLATION";
  }
  return "unknown";
}

double exp_commutes(const ComplexMatrix& a, const ComplexMatrix& b,
                    const ToleranceConfig& cfg) {
  require_pair(a, b, "exp_commutes");
  const ComplexMatrix ea = expm(a, cfg).value;
  const ComplexMatrix eb = expm(b, cfg).value;
  return relative_defect(commutator(ea, eb), ea, eb);
}

double exp_commutes_with(const ComplexMatrix& a, const ComplexMatrix& b,
                         const ToleranceConfig& cfg) {
  require_pair(a, b, "exp_commutes_with");
  const ComplexMatrix ea = expm(a, cfg).value;
  return relative_defect(ea * b - b * ea, ea, b);
}

double commutation_defect(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_pair(a, b, "commutation_defect");
  return relative_defect(commutator(a, b), a, b);
}

TheoremReport verify_main(const ComplexMatrix& a, const ComplexMatrix& b,
                          const ToleranceConfig& cfg) {
  require_pair(a, b, "verify_main");
  cfg.validate();
  TheoremReport report;
  report.theorem = TheoremId::kMain;
  const Spectrum spec_a = eigenvalues(a, cfg);
  CongruenceReport free_a = is_congruence_free(spec_a, kTwoPiI, cfg);
  report.hypothesis_holds = free_a.free;
  report.hypothesis_detail.push_back(HypothesisCheck{
      "sigma(A) 2*pi*i-congruence-free", free_a.free, std::move(free_a)});
  report.exp_defect = exp_commutes_with(a, b, cfg);
  report.op_defect = commutation_defect(a, b);
  report.verdict = decide(report.hypothesis_holds, report.exp_defect,
                          report.op_defect, cfg, report.inconclusive_margin);
  return report;
}

TheoremReport verify_wermuth(const ComplexMatrix& a, const ComplexMatrix& b,
                             const ToleranceConfig& cfg) {
  require_pair(a, b, "verify_wermuth");
  cfg.validate();
  TheoremReport report;
  report.theorem = TheoremId::kWermuth;
  const Spectrum spec_a = eigenvalues(a, cfg);
  const Spectrum spec_b = eigenvalues(b, cfg);
  CongruenceReport free_a = is_congruence_free(spec_a, kTwoPiI, cfg);
  CongruenceReport free_b = is_congruence_free(spec_b, kTwoPiI, cfg);
  report.hypothesis_holds = free_a.free && free_b.free;
  report.hypothesis_detail.push_back(HypothesisCheck{
      "sigma(A) 2*pi*i-congruence-free", free_a.free, std::move(free_a)});
  report.hypothesis_detail.push_back(HypothesisCheck{
      "sigma(B) 2*pi*i-congruence-free", free_b.free, std::move(free_b)});
  report.exp_defect = exp_commutes(a, b, cfg);
  report.op_defect = commutation_defect(a, b);
  report.verdict = decide(report.hypothesis_holds, report.exp_defect,
                          report.op_defect, cfg, report.inconclusive_margin);
  return report;
}

WitnessScan t_witness_scan(const ComplexMatrix& a, const ComplexMatrix& b,
                           int m, const ToleranceConfig& cfg) {
  require_pair(a, b, "t_witness_scan");
  cfg.validate();
  if (m < 1) {
    throw std::invalid_argument("t_witness_scan: sample count must be >= 1");
  }
  const double premise = exp_commutes_with(a, b, cfg);
  if (premise > cfg.eq_tol) {
    throw std::invalid_argument(
        "t_witness_scan: precondition failed, e^A does not commute with B "
        "(defect " +
        std::to_string(premise) + ")");
  }
  const Spectrum spec_b = eigenvalues(b, cfg);
  WitnessScan scan{scaling_threshold(spec_b, kTwoPiI), {}, 0.0};
  const double upper = scan.tau.is_unbounded() ? 1.0 : scan.tau.value();
  const ComplexMatrix ea = expm(a, cfg).value;
  scan.samples.reserve(static_cast<std::size_t>(m));
  for (int j = 1; j <= m; ++j) {
    const double t = upper * static_cast<double>(j) /
                     static_cast<double>(m + 1);
    const ComplexMatrix etb = expm(t * b, cfg).value;
    const double defect = relative_defect(commutator(ea, etb), ea, etb);
    scan.samples.push_back(WitnessScanSample{t, defect});
  }
  scan.inferred_op_defect = commutation_defect(a, b);
  return scan;
}

ChabanMortadHypothesis chaban_mortad_hypothesis(const ComplexMatrix& a,
                                                const ToleranceConfig& cfg) {
  if (a.dim() == 0) {
    throw std::invalid_argument("chaban_mortad_hypothesis: empty matrix");
  }
  cfg.validate();
  ChabanMortadHypothesis hyp;
  hyp.normal = is_normal(a, cfg);
  const CartesianParts parts = cartesian_decomposition(a);
  const Spectrum im_spec = eigenvalues(parts.im, cfg);
  hyp.im_spectrum.reserve(im_spec.values.size());
  for (const Complex& v : im_spec.values) hyp.im_spectrum.push_back(v.real());
  hyp.im_spectrum_in_open_interval = true;
  const double pi = std::numbers::pi;
  for (const double v : hyp.im_spectrum) {
    if (!(v > cfg.interval_margin && v < pi - cfg.interval_margin)) {
      hyp.im_spectrum_in_open_interval = false;
      break;
    }
  }
  hyp.holds = hyp.normal && hyp.im_spectrum_in_open_interval;
  return hyp;
}

TheoremReport verify_chaban_mortad(const ComplexMatrix& a,
                                   const ComplexMatrix& b,
                                   const ToleranceConfig& cfg) {
  require_pair(a, b, "verify_chaban_mortad");
  cfg.validate();
  TheoremReport report;
  report.theorem = TheoremId::kChabanMortad;
  const ChabanMortadHypothesis hyp = chaban_mortad_hypothesis(a, cfg);
  report.hypothesis_holds = hyp.holds;
  report.hypothesis_detail.push_back(
      HypothesisCheck{"A normal", hyp.normal, std::nullopt});
  report.hypothesis_detail.push_back(
      HypothesisCheck{"sigma(Im A) in open (0, pi)",
                      hyp.im_spectrum_in_open_interval, std::nullopt});
  report.exp_defect = exp_commutes_with(a, b, cfg);
  report.op_defect = commutation_defect(a, b);
  bool implied_free = true;
  if (hyp.holds) {
    // The rectangle enclosure confines sigma(A) to J + i(0, pi), whose
    // height pi is less than 2*pi, so congruence freedom is implied; a
    // numerical failure of this check is itself a violation.
    const Spectrum spec_a = eigenvalues(a, cfg);
    CongruenceReport free_a = is_congruence_free(spec_a, kTwoPiI, cfg);
    implied_free = free_a.free;
    report.hypothesis_detail.push_back(
        HypothesisCheck{"sigma(A) 2*pi*i-congruence-free (implied)",
                        free_a.free, std::move(free_a)});
  }
  report.verdict = decide(report.hypothesis_holds, report.exp_defect,
                          report.op_defect, cfg, report.inconclusive_margin);
  if (report.hypothesis_holds && !implied_free) {
    report.verdict = Verdict::kViolation;
  }
  return report;
}

std::pair<ComplexMatrix, ComplexMatrix> counterexample_pair(double a) {
  const double pi = std::numbers::pi;
  ComplexMatrix ma = ComplexMatrix::from_rows(
      {{Complex(0.0, 0.0), Complex(pi, 0.0)},
       {Complex(-pi, 0.0), Complex(0.0, 0.0)}});
  ComplexMatrix mb = ComplexMatrix::from_rows(
      {{Complex(0.0, 0.0), Complex(a, 0.0)},
       {Complex(a, 0.0), Complex(0.0, 0.0)}});
  return {std::move(ma), std::move(mb)};
}

}  // namespace commexp
