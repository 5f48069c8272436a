#pragma once

#include <complex>
#include <numbers>

namespace commexp {

/// Nearest double to 2*pi. Doubling the nearest double to pi is exact and
/// lands on the nearest double to 2*pi, so this is the canonical modulus
/// value used everywhere (reports echo it so runs are comparable).
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// The congruence modulus 2*pi*i used by all theorem hypotheses.
inline const std::complex<double> kTwoPiI{0.0, kTwoPi};

/// Every numerical tolerance in one place. All comparisons in the library
/// go through these four knobs; nothing is compared entrywise-exactly.
///
///   eq_tol          normwise equality threshold (relative defects)
///   congruence_tol  distance-to-multiple threshold for congruence checks
///   spectral_tol    eigenvalue accuracy budget
///   interval_margin strictness margin when testing open intervals
struct ToleranceConfig {
  double eq_tol = 1e-9;
  double congruence_tol = 1e-7;
  double spectral_tol = 1e-8;
  double interval_margin = 1e-9;

  /// Throws std::invalid_argument if any field is negative or non-finite.
  void validate() const;
};

}  // namespace commexp
