#include "commexp/generators.hpp"

#include <cmath>
#include <stdexcept>

#include "commexp/errors.hpp"
#include "commexp/tolerance.hpp"

namespace commexp {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t SplitMix64::next() {
  state_ += kGolden;
  return mix64(state_);
}

double SplitMix64::next_unit() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double SplitMix64::gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = next_unit();
  while (u1 == 0.0) u1 = next_unit();
  const double u2 = next_unit();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(angle);
  have_spare_ = true;
  return r * std::cos(angle);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return mix64(seed + (index + 1) * kGolden);
}

ComplexMatrix random_gaussian(std::size_t n, SplitMix64& rng) {
  if (n == 0) throw std::invalid_argument("random_gaussian: n must be >= 1");
  ComplexMatrix a(n);
  const double scale = 1.0 / std::sqrt(2.0 * static_cast<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double re = rng.gaussian();
      const double im = rng.gaussian();
      a(i, j) = Complex(re * scale, im * scale);
    }
  }
  return a;
}

ComplexMatrix random_unitary(std::size_t n, SplitMix64& rng) {
  if (n == 0) throw std::invalid_argument("random_unitary: n must be >= 1");
  ComplexMatrix q(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Complex> v(n);
    for (int attempt = 0;; ++attempt) {
      for (std::size_t i = 0; i < n; ++i) {
        v[i] = Complex(rng.gaussian(), rng.gaussian());
      }
      // Two Gram-Schmidt passes: the second removes the residual the first
      // leaves when the new column nearly lies in the current span.
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t prev = 0; prev < j; ++prev) {
          Complex proj(0.0, 0.0);
          for (std::size_t i = 0; i < n; ++i) {
            proj += std::conj(q(i, prev)) * v[i];
          }
          for (std::size_t i = 0; i < n; ++i) v[i] -= proj * q(i, prev);
        }
      }
      double norm2 = 0.0;
      for (std::size_t i = 0; i < n; ++i) norm2 += std::norm(v[i]);
      const double norm = std::sqrt(norm2);
      if (norm > 1e-8) {
        for (std::size_t i = 0; i < n; ++i) q(i, j) = v[i] / norm;
        break;
      }
      if (attempt >= 32) {
        throw NumericalError("random_unitary: degenerate draws");
      }
    }
    // Phase fix: make the largest-modulus entry real positive so the result
    // is a deterministic function of the Gaussian draws.
    std::size_t arg_max = 0;
    double best = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double mag = std::abs(q(i, j));
      if (mag > best) {
        best = mag;
        arg_max = i;
      }
    }
    const Complex phase = q(arg_max, j) / std::abs(q(arg_max, j));
    for (std::size_t i = 0; i < n; ++i) q(i, j) *= std::conj(phase);
  }
  return q;
}

ComplexMatrix with_spectrum(const std::vector<Complex>& spectrum,
                            const GenSpec& spec, SplitMix64& rng) {
  const std::size_t n = spec.n;
  if (n == 0) throw std::invalid_argument("with_spectrum: n must be >= 1");
  if (spectrum.size() != n) {
    throw std::invalid_argument("with_spectrum: spectrum size must equal n");
  }
  if (!(spec.conditioning >= 1.0) || !std::isfinite(spec.conditioning)) {
    throw std::invalid_argument("with_spectrum: conditioning must be >= 1");
  }
  const ComplexMatrix u1 = random_unitary(n, rng);
  const ComplexMatrix u2 = random_unitary(n, rng);
  // Singular values of the similarity: 1 and `conditioning` pinned at the
  // ends, the rest log-uniform in between.
  std::vector<double> sv(n, 1.0);
  const double log_cond = std::log(spec.conditioning);
  if (n >= 2) sv[n - 1] = spec.conditioning;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    sv[i] = std::exp(rng.next_unit() * log_cond);
  }
  ComplexMatrix p = u1;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) p(i, j) = u1(i, j) * sv[j];
  }
  p = p * u2;
  ComplexMatrix scaled = inverse(p);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) scaled(i, j) *= spectrum[i];
  }
  return p * scaled;
}

ComplexMatrix normal_with_parts(const std::vector<double>& re,
                                const std::vector<double>& im,
                                const GenSpec& spec, SplitMix64& rng) {
  const std::size_t n = spec.n;
  if (n == 0) throw std::invalid_argument("normal_with_parts: n must be >= 1");
  if (re.size() != n || im.size() != n) {
    throw std::invalid_argument(
        "normal_with_parts: part spectra must have length n");
  }
  const ComplexMatrix u = random_unitary(n, rng);
  ComplexMatrix scaled = adjoint(u);
  for (std::size_t i = 0; i < n; ++i) {
    const Complex lambda(re[i], im[i]);
    for (std::size_t j = 0; j < n; ++j) scaled(i, j) *= lambda;
  }
  return u * scaled;
}

std::vector<Complex> congruence_free_spectrum(std::size_t n, Complex z,
                                              double margin, SplitMix64& rng) {
  if (n == 0) {
    throw std::invalid_argument("congruence_free_spectrum: n must be >= 1");
  }
  const double az = std::abs(z);
  if (az == 0.0) {
    throw std::invalid_argument("congruence_free_spectrum: z must be nonzero");
  }
  if (!(margin >= 0.0 && margin < 1.0)) {
    throw std::invalid_argument(
        "congruence_free_spectrum: margin must lie in [0, 1)");
  }
  std::vector<Complex> out;
  out.reserve(n);
  int attempts = 0;
  while (out.size() < n) {
    if (++attempts > 10000) {
      throw NumericalError(
          "congruence_free_spectrum: rejection budget exhausted");
    }
    const double radius = az * std::sqrt(rng.next_unit());
    const double angle = 2.0 * std::numbers::pi * rng.next_unit();
    const Complex cand(radius * std::cos(angle), radius * std::sin(angle));
    bool ok = true;
    for (const Complex& prev : out) {
      const Complex d = cand - prev;
      // Both points lie in the disk of radius |z|, so |d| <= 2|z| and only
      // multiples with |k| <= 3 can come within margin * |z| of d.
      for (int k = -3; k <= 3 && ok; ++k) {
        if (k == 0) continue;
        if (std::abs(d - static_cast<double>(k) * z) < margin * az) {
          ok = false;
        }
      }
      if (!ok) break;
    }
    if (ok) out.push_back(cand);
  }
  return out;
}

std::pair<ComplexMatrix, ComplexMatrix> commuting_pair(std::size_t n,
                                                       SplitMix64& rng) {
  ComplexMatrix a = random_gaussian(n, rng);
  std::vector<Complex> coeffs(4);
  for (std::size_t k = 0; k < 4; ++k) {
    const double re = rng.gaussian();
    const double im = rng.gaussian();
    coeffs[k] = 0.5 * Complex(re, im);
  }
  return {a, polynomial_in(a, coeffs)};
}

}  // namespace commexp
