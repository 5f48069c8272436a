#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "commexp/complex_matrix.hpp"
#include "commexp/spectrum.hpp"

namespace commexp {

/// SplitMix64: tiny, fast, full-period 64-bit generator. Chosen over
/// std::mt19937_64 because its output sequence is pinned by this code alone,
/// so seeds reproduce bit-identically across standard libraries.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();

  /// Uniform double in [0, 1) with 53 random bits.
  double next_unit();

  /// Standard normal via Box-Muller; draws two units per call pair.
  double gaussian();

  /// Child generator seeded from this one's stream.
  SplitMix64 split() { return SplitMix64(next()); }

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// Mixes (seed, index) into an instance seed. Order independent: instance k
/// gets the same seed no matter how many siblings were generated before it.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Parameters for matrix generation.
struct GenSpec {
  std::uint64_t seed = 0;
  std::size_t n = 2;
  double conditioning = 1.0;     // singular-value spread of the similarity
  double spectrum_margin = 0.1;  // congruence-freedom margin, in units of |z|
};

/// Entrywise standard complex Gaussian, scaled by 1/sqrt(n).
ComplexMatrix random_gaussian(std::size_t n, SplitMix64& rng);

/// Haar-like random unitary: complex Gaussian, modified Gram-Schmidt with one
/// reorthogonalization pass, then a per-column phase fix (largest-modulus
/// entry made real positive) so the result is deterministic given the draws.
ComplexMatrix random_unitary(std::size_t n, SplitMix64& rng);

/// A = P D P^{-1} with D = diag(spectrum) and P a product U1 S U2 whose
/// singular values run log-uniformly from 1 to spec.conditioning.
/// Requires spec.conditioning >= 1 and spectrum.size() == spec.n.
ComplexMatrix with_spectrum(const std::vector<std::complex<double>>& spectrum,
                            const GenSpec& spec, SplitMix64& rng);

/// Normal matrix U diag(re_k + i im_k) U* from prescribed Cartesian parts.
/// Requires re.size() == im.size() == spec.n.
ComplexMatrix normal_with_parts(const std::vector<double>& re,
                                const std::vector<double>& im,
                                const GenSpec& spec, SplitMix64& rng);

/// Draws n points from the disk of radius |z| by rejection so that no two
/// differ by a nonzero integer multiple of z to within margin * |z|.
/// Only |k| <= 3 can occur at this diameter; each candidate is checked
/// against those. Throws NumericalError if 10000 total draws do not suffice.
std::vector<std::complex<double>> congruence_free_spectrum(
    std::size_t n, std::complex<double> z, double margin, SplitMix64& rng);

/// (A, B) with B = c0 I + c1 A + c2 A^2 + c3 A^3, so AB = BA exactly in
/// exact arithmetic. A is a scaled complex Gaussian; coefficients are
/// 0.5 * gaussian.
std::pair<ComplexMatrix, ComplexMatrix> commuting_pair(std::size_t n,
                                                       SplitMix64& rng);

}  // namespace commexp
