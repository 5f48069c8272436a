#include "commexp/complex_matrix.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "commexp/errors.hpp"
#include "commexp/kernels.hpp"

namespace commexp {

namespace {

void require_nonempty(const ComplexMatrix& a, const char* op) {
  if (a.dim() == 0) {
    throw std::invalid_argument(std::string(op) + ": empty matrix operand");
  }
}

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b,
                      const char* op) {
  require_nonempty(a, op);
  require_nonempty(b, op);
  if (a.dim() != b.dim()) {
    throw std::invalid_argument(std::string(op) + ": dimension mismatch (" +
                                std::to_string(a.dim()) + " vs " +
                                std::to_string(b.dim()) + ")");
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t n) : n_(n), data_(n * n) {
  if (n == 0) {
    throw std::invalid_argument("ComplexMatrix: dimension must be >= 1");
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix eye(n);
  for (std::size_t i = 0; i < n; ++i) eye(i, i) = Complex(1.0, 0.0);
  return eye;
}

ComplexMatrix ComplexMatrix::from_rows(
    std::initializer_list<std::initializer_list<Complex>> rows) {
  const std::size_t n = rows.size();
  if (n == 0) {
    throw std::invalid_argument("from_rows: no rows given");
  }
  ComplexMatrix a(n);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != n) {
      throw std::invalid_argument("from_rows: matrix must be square");
    }
    std::size_t j = 0;
    for (const Complex& v : row) a(i, j++) = v;
    ++i;
  }
  a.ensure_finite();
  return a;
}

ComplexMatrix ComplexMatrix::from_entries(std::size_t n,
                                          std::vector<Complex> entries) {
  if (n == 0) {
    throw std::invalid_argument("from_entries: dimension must be >= 1");
  }
  if (entries.size() != n * n) {
    throw std::invalid_argument("from_entries: expected " +
                                std::to_string(n * n) + " entries, got " +
                                std::to_string(entries.size()));
  }
  ComplexMatrix a(n);
  a.data_ = std::move(entries);
  a.ensure_finite();
  return a;
}

void ComplexMatrix::ensure_finite() const {
  for (const Complex& v : data_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw std::invalid_argument("matrix has a non-finite entry");
    }
  }
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "operator+");
  ComplexMatrix c = a;
  kernels::active().axpy(b.size(), Complex(1.0, 0.0), b.data(), c.data());
  return c;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "operator-");
  ComplexMatrix c = a;
  kernels::active().axpy(b.size(), Complex(-1.0, 0.0), b.data(), c.data());
  return c;
}

ComplexMatrix operator-(const ComplexMatrix& a) {
  require_nonempty(a, "operator-");
  ComplexMatrix c(a.dim());
  kernels::active().axpy(a.size(), Complex(-1.0, 0.0), a.data(), c.data());
  return c;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "operator*");
  ComplexMatrix c(a.dim());
  kernels::active().gemm(a.dim(), a.data(), b.data(), c.data());
  return c;
}

ComplexMatrix operator*(Complex scalar, const ComplexMatrix& a) {
  require_nonempty(a, "operator*");
  ComplexMatrix c(a.dim());
  kernels::active().axpy(a.size(), scalar, a.data(), c.data());
  return c;
}

ComplexMatrix operator*(double scalar, const ComplexMatrix& a) {
  return Complex(scalar, 0.0) * a;
}

ComplexMatrix adjoint(const ComplexMatrix& t) {
  require_nonempty(t, "adjoint");
  ComplexMatrix a(t.dim());
  for (std::size_t i = 0; i < t.dim(); ++i) {
    for (std::size_t j = 0; j < t.dim(); ++j) {
      a(i, j) = std::conj(t(j, i));
    }
  }
  return a;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "commutator");
  return a * b - b * a;
}

CartesianParts cartesian_decomposition(const ComplexMatrix& t) {
  require_nonempty(t, "cartesian_decomposition");
  const ComplexMatrix star = adjoint(t);
  return CartesianParts{0.5 * (t + star), Complex(0.0, -0.5) * (t - star)};
}

MatrixNorms norms(const ComplexMatrix& a) {
  require_nonempty(a, "norms");
  const std::size_t n = a.dim();
  MatrixNorms out{0.0, 0.0, 0.0};
  out.frobenius = frobenius_norm(a);
  for (std::size_t j = 0; j < n; ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < n; ++i) col += std::abs(a(i, j));
    if (col > out.one_norm) out.one_norm = col;
  }
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) row += std::abs(a(i, j));
    if (row > out.inf_norm) out.inf_norm = row;
  }
  return out;
}

double frobenius_norm(const ComplexMatrix& a) {
  require_nonempty(a, "frobenius_norm");
  return std::sqrt(kernels::active().sum_abs2(a.size(), a.data()));
}

double one_norm(const ComplexMatrix& a) {
  require_nonempty(a, "one_norm");
  double best = 0.0;
  for (std::size_t j = 0; j < a.dim(); ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) col += std::abs(a(i, j));
    if (col > best) best = col;
  }
  return best;
}

Complex trace(const ComplexMatrix& a) {
  require_nonempty(a, "trace");
  Complex t(0.0, 0.0);
  for (std::size_t i = 0; i < a.dim(); ++i) t += a(i, i);
  return t;
}

bool is_normal(const ComplexMatrix& a, const ToleranceConfig& cfg) {
  require_nonempty(a, "is_normal");
  cfg.validate();
  const ComplexMatrix star = adjoint(a);
  const double defect = frobenius_norm(a * star - star * a);
  const double f = frobenius_norm(a);
  return defect <= cfg.eq_tol * (1.0 + f * f);
}

double relative_defect(const ComplexMatrix& x, const ComplexMatrix& scale_a,
                       const ComplexMatrix& scale_b) {
  require_nonempty(x, "relative_defect");
  return frobenius_norm(x) /
         (1.0 + frobenius_norm(scale_a) * frobenius_norm(scale_b));
}

ComplexMatrix polynomial_in(const ComplexMatrix& a,
                            const std::vector<Complex>& coefficients) {
  require_nonempty(a, "polynomial_in");
  if (coefficients.empty()) return ComplexMatrix(a.dim());
  ComplexMatrix p(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) p(i, i) = coefficients.back();
  for (std::size_t idx = coefficients.size() - 1; idx-- > 0;) {
    p = p * a;
    for (std::size_t i = 0; i < a.dim(); ++i) p(i, i) += coefficients[idx];
  }
  return p;
}

ComplexMatrix solve(ComplexMatrix a, ComplexMatrix b) {
  require_same_dim(a, b, "solve");
  const std::size_t n = a.dim();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    double best = std::abs(a(col, col));
    for (std::size_t r = col + 1; r < n; ++r) {
      const double mag = std::abs(a(r, col));
      if (mag > best) {
        best = mag;
        pivot = r;
      }
    }
    if (best == 0.0) {
      throw NumericalError("solve: singular matrix (zero pivot at column " +
                           std::to_string(col) + ")");
    }
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(col, j), a(pivot, j));
        std::swap(b(col, j), b(pivot, j));
      }
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      // divide rather than multiply by a precomputed reciprocal: the extra
      // rounding would break exact cases like triangular right-hand sides
      const Complex factor = a(r, col) / a(col, col);
      if (factor == Complex(0.0, 0.0)) continue;
      for (std::size_t j = col; j < n; ++j) a(r, j) -= factor * a(col, j);
      for (std::size_t j = 0; j < n; ++j) b(r, j) -= factor * b(col, j);
    }
  }
  for (std::size_t row = n; row-- > 0;) {
    for (std::size_t j = 0; j < n; ++j) {
      Complex sum = b(row, j);
      for (std::size_t k = row + 1; k < n; ++k) sum -= a(row, k) * b(k, j);
      b(row, j) = sum / a(row, row);
    }
  }
  return b;
}

ComplexMatrix inverse(const ComplexMatrix& a) {
  require_nonempty(a, "inverse");
  return solve(a, ComplexMatrix::identity(a.dim()));
}

Complex determinant(ComplexMatrix a) {
  require_nonempty(a, "determinant");
  const std::size_t n = a.dim();
  Complex det(1.0, 0.0);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    double best = std::abs(a(col, col));
    for (std::size_t r = col + 1; r < n; ++r) {
      const double mag = std::abs(a(r, col));
      if (mag > best) {
        best = mag;
        pivot = r;
      }
    }
    if (best == 0.0) return Complex(0.0, 0.0);
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(col, j), a(pivot, j));
      det = -det;
    }
    det *= a(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      const Complex factor = a(r, col) / a(col, col);
      if (factor == Complex(0.0, 0.0)) continue;
      for (std::size_t j = col; j < n; ++j) a(r, j) -= factor * a(col, j);
    }
  }
  return det;
}

}  // namespace commexp
