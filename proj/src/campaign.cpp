#include "commexp/campaign.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "commexp/generators.hpp"

namespace commexp {

namespace {

/// Coefficients for B = p(A) with p of degree 3. Spectra fed to p lie in a
/// disk of radius about 2*pi, so the higher coefficients are damped by
/// (2*pi)^(k-1) to keep sigma(B) at a scale whose exponential cannot
/// overflow.
std::vector<Complex> bounded_poly_coeffs(SplitMix64& rng) {
  std::vector<Complex> c(4);
  for (int k = 0; k < 4; ++k) {
    const double re = rng.gaussian();
    const double im = rng.gaussian();
    const double damp = std::pow(kTwoPi, std::max(0, k - 1));
    c[k] = 0.5 * Complex(re, im) / damp;
  }
  return c;
}

Complex eval_poly(const std::vector<Complex>& coeffs, Complex x) {
  Complex acc(0.0, 0.0);
  for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
  return acc;
}

struct Instance {
  ComplexMatrix a;
  ComplexMatrix b;
  bool commuting;
  /// Spectra known exactly by construction and certified congruence free;
  /// the campaign tracks their worst margin.
  std::vector<std::vector<Complex>> certified_spectra;
};

Instance make_main_instance(std::size_t n, double conditioning, double margin,
                            bool commuting, SplitMix64& rng) {
  Instance inst;
  inst.commuting = commuting;
  GenSpec gs{0, n, conditioning, margin};
  std::vector<Complex> spectrum =
      congruence_free_spectrum(n, kTwoPiI, margin, rng);
  inst.a = with_spectrum(spectrum, gs, rng);
  inst.certified_spectra.push_back(std::move(spectrum));
  if (commuting) {
    inst.b = polynomial_in(inst.a, bounded_poly_coeffs(rng));
  } else {
    inst.b = random_gaussian(n, rng);
  }
  return inst;
}

Instance make_wermuth_instance(std::size_t n, double conditioning,
                               double margin, bool commuting,
                               SplitMix64& rng) {
  Instance inst;
  inst.commuting = commuting;
  GenSpec gs{0, n, conditioning, margin};
  std::vector<Complex> spectrum =
      congruence_free_spectrum(n, kTwoPiI, margin, rng);
  inst.a = with_spectrum(spectrum, gs, rng);
  if (commuting) {
    // sigma(B) = p(sigma(A)) exactly; resample p until the image spectrum
    // is itself congruence free with the requested margin.
    std::vector<Complex> coeffs;
    bool certified = false;
    for (int attempt = 0; attempt < 64; ++attempt) {
      coeffs = bounded_poly_coeffs(rng);
      Spectrum image;
      image.values.reserve(n);
      for (const Complex& s : spectrum) {
        image.values.push_back(eval_poly(coeffs, s));
      }
      if (nearest_multiple_gap(image, kTwoPiI) >= margin * kTwoPi) {
        inst.certified_spectra.push_back(std::move(image.values));
        certified = true;
        break;
      }
    }
    inst.b = polynomial_in(inst.a, coeffs);
    (void)certified;  // an uncertified B only weakens the hypothesis
  } else {
    inst.b = random_gaussian(n, rng);
  }
  inst.certified_spectra.push_back(std::move(spectrum));
  return inst;
}

Instance make_cm_instance(std::size_t n, double conditioning, bool commuting,
                          SplitMix64& rng) {
  Instance inst;
  inst.commuting = commuting;
  GenSpec gs{0, n, conditioning, 0.0};
  const double pi = std::numbers::pi;
  std::vector<double> re(n);
  std::vector<double> im(n);
  std::vector<Complex> exact(n);
  for (std::size_t i = 0; i < n; ++i) {
    re[i] = -2.0 + 4.0 * rng.next_unit();
    im[i] = 0.05 + (pi - 0.1) * rng.next_unit();
    exact[i] = Complex(re[i], im[i]);
  }
  inst.a = normal_with_parts(re, im, gs, rng);
  inst.certified_spectra.push_back(std::move(exact));
  if (commuting) {
    inst.b = polynomial_in(inst.a, bounded_poly_coeffs(rng));
  } else {
    inst.b = random_gaussian(n, rng);
  }
  return inst;
}

/// True when the report carries at least one congruence check and all of
/// them passed.
bool report_certifies_freedom(const TheoremReport& report) {
  bool any = false;
  for (const HypothesisCheck& check : report.hypothesis_detail) {
    if (!check.congruence.has_value()) continue;
    any = true;
    if (!check.passed) return false;
  }
  return any;
}

}  // namespace

CampaignSummary run_campaign(const CampaignOptions& options) {
  options.tolerances.validate();
  if (options.count < 0) {
    throw std::invalid_argument("run_campaign: count must be >= 0");
  }
  if (!(options.spectrum_margin >= 0.0 && options.spectrum_margin < 1.0)) {
    throw std::invalid_argument(
        "run_campaign: spectrum_margin must lie in [0, 1)");
  }

  CampaignSummary summary;
  summary.theorem = options.theorem;
  summary.count = options.count;
  const double inf = std::numeric_limits<double>::infinity();
  summary.min_noncommuting_exp_defect = inf;
  summary.min_noncommuting_op_defect = inf;
  summary.min_congruence_margin = inf;

  for (int index = 0; index < options.count; ++index) {
    const std::uint64_t iseed =
        derive_seed(options.seed, static_cast<std::uint64_t>(index));
    SplitMix64 rng(iseed);
    const std::size_t n = 2 + static_cast<std::size_t>(rng.next() % 7);
    const double conditioning = 1.0 + 4.0 * rng.next_unit();
    const bool commuting = (index % 2 == 0);

    Instance inst;
    TheoremReport report;
    switch (options.theorem) {
      case TheoremId::kMain:
        inst = make_main_instance(n, conditioning, options.spectrum_margin,
                                  commuting, rng);
        report = verify_main(inst.a, inst.b, options.tolerances);
        break;
      case TheoremId::kWermuth:
        inst = make_wermuth_instance(n, conditioning, options.spectrum_margin,
                                     commuting, rng);
        report = verify_wermuth(inst.a, inst.b, options.tolerances);
        break;
      case TheoremId::kChabanMortad:
        inst = make_cm_instance(n, conditioning, commuting, rng);
        report = verify_chaban_mortad(inst.a, inst.b, options.tolerances);
        break;
    }

    switch (report.verdict) {
      case Verdict::kConsistent:
        ++summary.consistent;
        break;
      case Verdict::kHypothesisViolated:
        ++summary.hypothesis_violated;
        break;
      case Verdict::kViolation:
        ++summary.violations;
        summary.violation_dumps.push_back(
            ViolationRecord{index, iseed, report, inst.a, inst.b});
        break;
    }
    if (report.inconclusive_margin) ++summary.inconclusive;
    if (inst.commuting) {
      ++summary.commuting_instances;
      summary.max_commuting_exp_defect =
          std::max(summary.max_commuting_exp_defect, report.exp_defect);
      summary.max_commuting_op_defect =
          std::max(summary.max_commuting_op_defect, report.op_defect);
    } else {
      summary.min_noncommuting_exp_defect =
          std::min(summary.min_noncommuting_exp_defect, report.exp_defect);
      summary.min_noncommuting_op_defect =
          std::min(summary.min_noncommuting_op_defect, report.op_defect);
    }
    for (const std::vector<Complex>& values : inst.certified_spectra) {
      Spectrum s;
      s.values = values;
      summary.min_congruence_margin = std::min(
          summary.min_congruence_margin, nearest_multiple_gap(s, kTwoPiI));
    }
    if (report_certifies_freedom(report)) ++summary.certified_free;
  }

  if (summary.min_noncommuting_exp_defect == inf) {
    summary.min_noncommuting_exp_defect = 0.0;
  }
  if (summary.min_noncommuting_op_defect == inf) {
    summary.min_noncommuting_op_defect = 0.0;
  }
  if (summary.min_congruence_margin == inf) {
    summary.min_congruence_margin = 0.0;
  }
  return summary;
}

}  // namespace commexp
