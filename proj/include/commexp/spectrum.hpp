#pragma once

#include <cstdint>
#include <vector>

#include "commexp/complex_matrix.hpp"
#include "commexp/tolerance.hpp"

namespace commexp {

/// Multiset of eigenvalues (repeated per algebraic multiplicity) plus a
/// conditioning estimate for the eigenvector basis: exactly 1 for input
/// certified normal, the Frobenius condition number of the computed
/// eigenvector matrix otherwise. Consumers use it only to scale tolerances.
struct Spectrum {
  std::vector<Complex> values;
  double condition_hint = 1.0;
};

struct CongruenceWitness {
  Complex s1;
  Complex s2;
  std::int64_t k;   // nonzero
  double residual;  // |(s1 - s2) - k*z|
};

/// Verdict of the z-congruence freedom test: free iff no two distinct
/// elements differ by a nonzero integer multiple of z (within tolerance).
struct CongruenceReport {
  bool free = true;
  Complex z;
  std::vector<CongruenceWitness> witnesses;
};

/// Bounding rectangle of the spectrum of a normal matrix: J = [j_lo, j_hi]
/// encloses the spectrum of the real part, [im_lo, im_hi] the spectrum of
/// the imaginary part.
struct SpectralBox {
  double j_lo;
  double j_hi;
  double im_lo;
  double im_hi;
};

/// tau = |z| / diameter, or the distinguished "unbounded" value for
/// singleton spectra. Deliberately not a float infinity: consumers must
/// branch before touching value().
class ScalingThreshold {
 public:
  static ScalingThreshold finite(double value);
  static ScalingThreshold unbounded();
  bool is_unbounded() const { return unbounded_; }
  /// Throws std::logic_error when unbounded.
  double value() const;

 private:
  bool unbounded_ = false;
  double value_ = 0.0;
};

struct SchurDecomposition {
  ComplexMatrix t;  // upper triangular; diagonal holds the eigenvalues
  ComplexMatrix q;  // unitary, A = Q T Q*
};

struct Eigendecomposition {
  std::vector<Complex> values;
  ComplexMatrix vectors;      // columns are unit eigenvectors
  double vector_condition;    // ||V||_F * ||V^-1||_F, clamped to [1, 1e300]
};

/// Eigenvalues by unitary Hessenberg reduction followed by shifted QR with
/// deflation. Throws ConvergenceError after the iteration budget (30 * n
/// QR steps); never returns garbage silently.
Spectrum eigenvalues(const ComplexMatrix& a, const ToleranceConfig& cfg);

SchurDecomposition schur_decompose(const ComplexMatrix& a,
                                   const ToleranceConfig& cfg);

/// Eigenvectors by back-substitution on the Schur factor. Defective input
/// yields a nearly singular vector matrix and a huge vector_condition;
/// callers decide what condition they can stomach.
Eigendecomposition eigen_decompose(const ComplexMatrix& a,
                                   const ToleranceConfig& cfg);

/// Max pairwise distance; 0 for singletons; throws on empty input.
double diameter(const Spectrum& s);

/// Tests every ordered pair (s1, s2) against every nonzero multiple k*z
/// with |k| <= floor((diameter + congruence_tol)/|z|) + 1. Pairs equal
/// within congruence_tol are never witnesses (only k != 0 counts); ties at
/// exactly congruence_tol count as violations.
CongruenceReport is_congruence_free(const Spectrum& s, Complex z,
                                    const ToleranceConfig& cfg);

/// Min over distinct ordered pairs and nonzero k of |(s1 - s2) - k*z|;
/// +infinity when no pair exists. Used to measure freedom margins.
double nearest_multiple_gap(const Spectrum& s, Complex z);

/// |z| / diameter(s); unbounded when the diameter vanishes.
ScalingThreshold scaling_threshold(const Spectrum& s, Complex z);

/// {t*w : w in s}; condition_hint preserved.
Spectrum scale_spectrum(const Spectrum& s, double t);

/// Smallest intervals containing the spectra of the Cartesian parts of a
/// normal matrix. Throws std::invalid_argument when the input is not normal.
SpectralBox spectral_box_normal(const ComplexMatrix& a,
                                const ToleranceConfig& cfg);

/// Checks the enclosure sigma(A) within sigma(Re A) + i*sigma(Im A) that
/// holds for normal A: every eigenvalue must land within congruence_tol of
/// some a + i*b with a, b taken from the part spectra.
bool check_spectral_inclusion_normal(const ComplexMatrix& a,
                                     const ToleranceConfig& cfg);

namespace detail {
/// Schur decomposition with an explicit QR step budget (the public entry
/// uses 30 * n). Exposed so tests can exercise the non-convergence path.
SchurDecomposition schur_decompose_with_budget(const ComplexMatrix& a,
                                               const ToleranceConfig& cfg,
                                               std::size_t max_qr_steps);
}  // namespace detail

}  // namespace commexp
