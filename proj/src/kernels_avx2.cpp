// AVX2 variants of the complex kernels. Compiled unconditionally on x86-64
// via function-level target attributes; selected at runtime only when the
// CPU reports both AVX2 and FMA.
//
// Layout: std::complex<double> is two contiguous doubles (re, im), so one
// 256-bit register holds two complex values. The product
// (ar + i ai)(br + i bi) uses the swap/fmaddsub pattern: even lanes get
// ar*br - ai*bi, odd lanes get ar*bi + ai*br.

#include "commexp/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace commexp::kernels {

namespace {

__attribute__((target("avx2,fma"))) inline __m256d mul_accum(
    __m256d acc, __m256d ar, __m256d ai, __m256d b) {
  const __m256d b_swap = _mm256_permute_pd(b, 0b0101);
  const __m256d t = _mm256_mul_pd(ai, b_swap);
  const __m256d u = _mm256_fmaddsub_pd(ar, b, t);
  return _mm256_add_pd(acc, u);
}

__attribute__((target("avx2,fma"))) void gemm_avx2(std::size_t n,
                                                   const Complex* a,
                                                   const Complex* b,
                                                   Complex* c) {
  const double* bd = reinterpret_cast<const double*>(b);
  double* cd = reinterpret_cast<double*>(c);
  for (std::size_t i = 0; i < 2 * n * n; ++i) cd[i] = 0.0;
  const std::size_t j_vec = n - (n % 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex aik = a[i * n + k];
      const __m256d ar = _mm256_set1_pd(aik.real());
      const __m256d ai = _mm256_set1_pd(aik.imag());
      const double* brow = bd + 2 * k * n;
      double* crow = cd + 2 * i * n;
      for (std::size_t j = 0; j < j_vec; j += 2) {
        const __m256d bv = _mm256_loadu_pd(brow + 2 * j);
        const __m256d cv = _mm256_loadu_pd(crow + 2 * j);
        _mm256_storeu_pd(crow + 2 * j, mul_accum(cv, ar, ai, bv));
      }
      if (j_vec < n) {
        c[i * n + j_vec] += aik * b[k * n + j_vec];
      }
    }
  }
}

__attribute__((target("avx2,fma"))) void axpy_avx2(std::size_t len,
                                                   Complex alpha,
                                                   const Complex* x,
                                                   Complex* y) {
  const double* xd = reinterpret_cast<const double*>(x);
  double* yd = reinterpret_cast<double*>(y);
  const __m256d ar = _mm256_set1_pd(alpha.real());
  const __m256d ai = _mm256_set1_pd(alpha.imag());
  const std::size_t vec = len - (len % 2);
  for (std::size_t i = 0; i < vec; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    const __m256d yv = _mm256_loadu_pd(yd + 2 * i);
    _mm256_storeu_pd(yd + 2 * i, mul_accum(yv, ar, ai, xv));
  }
  if (vec < len) y[vec] += alpha * x[vec];
}

__attribute__((target("avx2,fma"))) double sum_abs2_avx2(std::size_t len,
                                                         const Complex* x) {
  const double* xd = reinterpret_cast<const double*>(x);
  __m256d acc = _mm256_setzero_pd();
  const std::size_t vec = len - (len % 2);
  for (std::size_t i = 0; i < vec; i += 2) {
    const __m256d v = _mm256_loadu_pd(xd + 2 * i);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double total = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  if (vec < len) {
    total += x[vec].real() * x[vec].real() + x[vec].imag() * x[vec].imag();
  }
  return total;
}

const Table kAvx2{"avx2", gemm_avx2, axpy_avx2, sum_abs2_avx2};

}  // namespace

const Table* avx2_table() {
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
    return &kAvx2;
  }
  return nullptr;
}

}  // namespace commexp::kernels

#else

namespace commexp::kernels {

const Table* avx2_table() { return nullptr; }

}  // namespace commexp::kernels

#endif
