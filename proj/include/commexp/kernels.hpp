#pragma once

#include <complex>
#include <cstddef>
#include <string>

namespace commexp::kernels {

using Complex = std::complex<double>;

/// The data-parallel inner loops of the matrix layer. Everything above this
/// table is scalar control logic; everything inside it is a straight sweep
/// over contiguous complex<double> data, so it exists in a scalar reference
/// flavor and (on x86-64 with AVX2+FMA) a vectorized flavor selected at
/// runtime. The two are equivalence-tested against each other.
struct Table {
  const char* name;

  /// c = a * b for square row-major n x n matrices. c must not alias a or b.
  void (*gemm)(std::size_t n, const Complex* a, const Complex* b, Complex* c);

  /// y[i] += alpha * x[i] for i in [0, len).
  void (*axpy)(std::size_t len, Complex alpha, const Complex* x, Complex* y);

  /// Sum of |x[i]|^2 (squared Frobenius accumulation).
  double (*sum_abs2)(std::size_t len, const Complex* x);
};

/// The table currently in use. First call picks the best supported backend,
/// honoring the COMMEXP_KERNELS environment variable ("scalar" or "avx2").
const Table& active();

/// Scalar reference kernels (always available).
const Table& scalar_table();

/// AVX2 kernels, or nullptr when unsupported by the build target or CPU.
const Table* avx2_table();

/// Force a specific table (tests use this to exercise both flavors).
void select(const Table& table);

/// Select by name: "scalar", "avx2" or "auto". Throws std::invalid_argument
/// for unknown names or an unavailable backend.
void select_by_name(const std::string& name);

}  // namespace commexp::kernels
