#pragma once

#include "commexp/complex_matrix.hpp"
#include "commexp/tolerance.hpp"

namespace commexp {

struct ExpmResult {
  ComplexMatrix value;
  int scaling_squarings = 0;  // s in the 2^s scaling
  double oracle_gap = 0.0;    // ||value - taylor||_F when cross-checked
};

/// Matrix exponential by scaling and squaring with the degree-13 diagonal
/// Pade approximant: pick the smallest s >= 0 with ||A||_1 / 2^s <= 5.37,
/// evaluate the approximant, square s times. Throws NumericalError if the
/// Pade linear solve degenerates or the squaring overflows.
ExpmResult expm(const ComplexMatrix& a, const ToleranceConfig& cfg);

/// expm plus a disagreement measurement against the Taylor oracle.
ExpmResult expm_cross_checked(const ComplexMatrix& a, const ToleranceConfig& cfg,
                              int taylor_budget = 64);

/// Brute-force oracle: scale A by 2^s until ||A||_1 / 2^s <= 1/2, sum the
/// Taylor series to `budget` terms with compensated summation, square s
/// times. For cross-checking, not performance.
ComplexMatrix expm_taylor_oracle(const ComplexMatrix& a, int budget = 64);

/// Second oracle for diagonalizable input: V diag(e^lambda) V^-1. Throws
/// OracleUnavailableError when the eigenvector basis is defective or its
/// condition estimate reaches 1e6: "no answer", never a wrong one.
ComplexMatrix expm_eig_oracle(const ComplexMatrix& a, const ToleranceConfig& cfg);

}  // namespace commexp
