#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "commexp/tolerance.hpp"

namespace commexp {

using Complex = std::complex<double>;

/// Dense square complex matrix, row-major. The universal operand of the
/// library: dimensions up to a few dozen, value semantics, immutable in
/// spirit (operations return fresh matrices).
///
/// Non-finite entries are rejected at the construction boundary (factories
/// and file parsing call ensure_finite), never propagated into verdicts.
class ComplexMatrix {
 public:
  /// Empty placeholder (dim 0). Any arithmetic with it throws.
  ComplexMatrix() = default;

  /// n x n zero matrix, n >= 1.
  explicit ComplexMatrix(std::size_t n);

  static ComplexMatrix identity(std::size_t n);

  /// Build from rows; throws on ragged shape or non-finite entries.
  static ComplexMatrix from_rows(
      std::initializer_list<std::initializer_list<Complex>> rows);

  /// Build from a row-major entry list of length n*n; validates finiteness.
  static ComplexMatrix from_entries(std::size_t n, std::vector<Complex> entries);

  std::size_t dim() const { return n_; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const {
    return data_[i * n_ + j];
  }

  Complex* data() { return data_.data(); }
  const Complex* data() const { return data_.data(); }
  std::size_t size() const { return data_.size(); }

  /// Throws std::invalid_argument if any entry is NaN or infinite.
  void ensure_finite() const;

 private:
  std::size_t n_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator-(const ComplexMatrix& a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex scalar, const ComplexMatrix& a);
ComplexMatrix operator*(double scalar, const ComplexMatrix& a);

/// Conjugate transpose.
ComplexMatrix adjoint(const ComplexMatrix& t);

/// AB - BA.
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

/// T = re + i*im with both parts self-adjoint:
/// re = (T + T*)/2, im = (T - T*)/(2i).
struct CartesianParts {
  ComplexMatrix re;
  ComplexMatrix im;
};
CartesianParts cartesian_decomposition(const ComplexMatrix& t);

struct MatrixNorms {
  double frobenius;
  double one_norm;  // max absolute column sum
  double inf_norm;  // max absolute row sum
};
MatrixNorms norms(const ComplexMatrix& a);
double frobenius_norm(const ComplexMatrix& a);
double one_norm(const ComplexMatrix& a);

Complex trace(const ComplexMatrix& a);

/// True iff ||AA* - A*A||_F <= eq_tol * (1 + ||A||_F^2).
bool is_normal(const ComplexMatrix& a, const ToleranceConfig& cfg);

/// ||X||_F / (1 + ||scale_a||_F * ||scale_b||_F); the normalized metric
/// behind every "commutes" verdict (compare against eq_tol).
double relative_defect(const ComplexMatrix& x, const ComplexMatrix& scale_a,
                       const ComplexMatrix& scale_b);

/// c0*I + c1*A + c2*A^2 + ... evaluated by Horner's scheme.
ComplexMatrix polynomial_in(const ComplexMatrix& a,
                            const std::vector<Complex>& coefficients);

/// Solve A X = B by LU with partial pivoting; throws NumericalError when
/// a pivot vanishes.
ComplexMatrix solve(ComplexMatrix a, ComplexMatrix b);

ComplexMatrix inverse(const ComplexMatrix& a);

Complex determinant(ComplexMatrix a);

}  // namespace commexp
