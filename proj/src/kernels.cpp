#include "commexp/kernels.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace commexp::kernels {

namespace {

void gemm_scalar(std::size_t n, const Complex* a, const Complex* b,
                 Complex* c) {
  for (std::size_t i = 0; i < n * n; ++i) c[i] = Complex(0.0, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex aik = a[i * n + k];
      const Complex* brow = b + k * n;
      Complex* crow = c + i * n;
      for (std::size_t j = 0; j < n; ++j) crow[j] += aik * brow[j];
    }
  }
}

void axpy_scalar(std::size_t len, Complex alpha, const Complex* x,
                 Complex* y) {
  for (std::size_t i = 0; i < len; ++i) y[i] += alpha * x[i];
}

double sum_abs2_scalar(std::size_t len, const Complex* x) {
  double acc = 0.0;
  for (std::size_t i = 0; i < len; ++i) {
    acc += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  }
  return acc;
}

const Table kScalar{"scalar", gemm_scalar, axpy_scalar, sum_abs2_scalar};

const Table* g_active = nullptr;

const Table* initial_table() {
  if (const char* env = std::getenv("COMMEXP_KERNELS")) {
    const std::string name(env);
    if (name == "scalar") return &kScalar;
    if (name == "avx2") {
      const Table* t = avx2_table();
      if (t == nullptr) {
        throw std::invalid_argument(
            "COMMEXP_KERNELS=avx2 but AVX2 is not available on this CPU");
      }
      return t;
    }
    throw std::invalid_argument("unknown kernel backend: " + name);
  }
  if (const Table* t = avx2_table()) return t;
  return &kScalar;
}

}  // namespace

const Table& scalar_table() { return kScalar; }

const Table& active() {
  if (g_active == nullptr) g_active = initial_table();
  return *g_active;
}

void select(const Table& table) { g_active = &table; }

void select_by_name(const std::string& name) {
  if (name == "auto") {
    g_active = avx2_table() != nullptr ? avx2_table() : &kScalar;
    return;
  }
  if (name == "scalar") {
    g_active = &kScalar;
    return;
  }
  if (name == "avx2") {
    const Table* t = avx2_table();
    if (t == nullptr) {
      throw std::invalid_argument("AVX2 kernels not available on this CPU");
    }
    g_active = t;
    return;
  }
  throw std::invalid_argument("unknown kernel backend: " + name);
}

}  // namespace commexp::kernels
