#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "commexp/campaign.hpp"
#include "commexp/spectrum.hpp"
#include "commexp/theorems.hpp"
#include "commexp/tolerance.hpp"
#include "json.hpp"

namespace commexp::cli {

/// Doubles are rendered as 17-significant-digit scientific strings so the
/// report is byte-stable across runs and platforms and round-trips exactly.
std::string format_double(double v);
double parse_double(const std::string& s);

nlohmann::ordered_json complex_to_json(Complex v);
Complex complex_from_json(const nlohmann::json& j);

nlohmann::ordered_json tolerances_json(const ToleranceConfig& cfg);

/// Spectrum values sorted lexicographically by (re, im) for presentation.
nlohmann::ordered_json spectrum_json(const Spectrum& s);

nlohmann::ordered_json congruence_json(const CongruenceReport& r);

nlohmann::ordered_json theorem_report_json(const TheoremReport& r);

nlohmann::ordered_json witness_scan_json(const WitnessScan& s);

nlohmann::ordered_json campaign_json(const CampaignSummary& s);

/// Row-major matrix entries as [re, im] string pairs.
nlohmann::ordered_json matrix_entries_json(const ComplexMatrix& m);

/// The report envelope shared by every subcommand.
nlohmann::ordered_json make_document(const std::string& command,
                                     const ToleranceConfig& cfg,
                                     std::optional<std::uint64_t> seed,
                                     nlohmann::ordered_json payload,
                                     bool with_timestamp);

}  // namespace commexp::cli
