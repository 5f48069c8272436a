#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "commexp/theorems.hpp"
#include "commexp/tolerance.hpp"

namespace commexp {

/// Randomized verification campaign over one theorem. Each instance draws a
/// matrix pair from a theorem-specific recipe (roughly half commuting, half
/// generic), runs the verifier, and accumulates the statistics below.
struct CampaignOptions {
  TheoremId theorem = TheoremId::kMain;
  std::uint64_t seed = 0;
  int count = 100;
  double spectrum_margin = 0.1;
  ToleranceConfig tolerances;
};

struct ViolationRecord {
  int index;
  std::uint64_t instance_seed;
  TheoremReport report;
  ComplexMatrix a;
  ComplexMatrix b;
};

struct CampaignSummary {
  TheoremId theorem;
  int count = 0;
  int consistent = 0;
  int hypothesis_violated = 0;
  int violations = 0;
  int inconclusive = 0;
  int commuting_instances = 0;
  /// Largest defects seen on commuting draws (should sit at rounding level).
  double max_commuting_exp_defect = 0.0;
  double max_commuting_op_defect = 0.0;
  /// Smallest defects seen on generic draws (should be far above eq_tol).
  double min_noncommuting_exp_defect = 0.0;
  double min_noncommuting_op_defect = 0.0;
  /// Smallest congruence margin over all certified-free spectra, in absolute
  /// distance to the nearest nonzero multiple of z.
  double min_congruence_margin = 0.0;
  int certified_free = 0;
  std::vector<ViolationRecord> violation_dumps;
};

CampaignSummary run_campaign(const CampaignOptions& options);

}  // namespace commexp
