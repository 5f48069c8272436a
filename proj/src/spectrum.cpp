#include "commexp/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "commexp/errors.hpp"

namespace commexp {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

/// Plane rotation G = [[c, s], [-conj(s), c]] with c real, chosen so that
/// G * [f, g]^T has a zero second component.
struct Givens {
  double c;
  Complex s;
};

Givens make_givens(Complex f, Complex g) {
  const double af = std::abs(f);
  const double ag = std::abs(g);
  if (ag == 0.0) return {1.0, Complex(0.0, 0.0)};
  const double r = std::hypot(af, ag);
  if (af == 0.0) return {0.0, std::conj(g) / r};
  return {af / r, (f / af) * (std::conj(g) / r)};
}

/// m := (I - 2 w w*) m restricted to rows [lo, n) and columns [col_start, n).
void reflect_left(ComplexMatrix& m, const std::vector<Complex>& w,
                  std::size_t lo, std::size_t col_start) {
  const std::size_t n = m.dim();
  for (std::size_t j = col_start; j < n; ++j) {
    Complex s(0.0, 0.0);
    for (std::size_t i = lo; i < n; ++i) s += std::conj(w[i]) * m(i, j);
    s *= 2.0;
    for (std::size_t i = lo; i < n; ++i) m(i, j) -= s * w[i];
  }
}

/// m := m (I - 2 w w*) restricted to columns [lo, n).
void reflect_right(ComplexMatrix& m, const std::vector<Complex>& w,
                   std::size_t lo) {
  const std::size_t n = m.dim();
  for (std::size_t i = 0; i < n; ++i) {
    Complex s(0.0, 0.0);
    for (std::size_t j = lo; j < n; ++j) s += m(i, j) * w[j];
    s *= 2.0;
    for (std::size_t j = lo; j < n; ++j) m(i, j) -= s * std::conj(w[j]);
  }
}

/// Unitary reduction to upper Hessenberg form: a = q h q* on return.
void hessenberg(ComplexMatrix& h, ComplexMatrix& q) {
  const std::size_t n = h.dim();
  if (n < 3) return;
  std::vector<Complex> w(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double norm2 = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) norm2 += std::norm(h(i, k));
    const double norm_x = std::sqrt(norm2);
    if (norm_x == 0.0) continue;
    std::fill(w.begin(), w.end(), Complex(0.0, 0.0));
    for (std::size_t i = k + 1; i < n; ++i) w[i] = h(i, k);
    const Complex x0 = h(k + 1, k);
    const Complex phase =
        (x0 == Complex(0.0, 0.0)) ? Complex(1.0, 0.0) : x0 / std::abs(x0);
    w[k + 1] += phase * norm_x;
    double wnorm2 = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) wnorm2 += std::norm(w[i]);
    const double wnorm = std::sqrt(wnorm2);
    if (wnorm == 0.0) continue;
    for (std::size_t i = k + 1; i < n; ++i) w[i] /= wnorm;
    reflect_left(h, w, k + 1, k);
    reflect_right(h, w, k + 1);
    reflect_right(q, w, k + 1);
    for (std::size_t i = k + 2; i < n; ++i) h(i, k) = Complex(0.0, 0.0);
  }
}

double window_frobenius(const ComplexMatrix& h, std::size_t hi) {
  double acc = 0.0;
  for (std::size_t i = 0; i <= hi; ++i) {
    for (std::size_t j = 0; j <= hi; ++j) acc += std::norm(h(i, j));
  }
  return std::sqrt(acc);
}

Complex wilkinson_shift(const ComplexMatrix& h, std::size_t hi) {
  const Complex a = h(hi - 1, hi - 1);
  const Complex b = h(hi - 1, hi);
  const Complex c = h(hi, hi - 1);
  const Complex d = h(hi, hi);
  const Complex mid = 0.5 * (a + d);
  const Complex disc = std::sqrt(mid * mid - (a * d - b * c));
  const Complex p = mid + disc;
  const Complex q = mid - disc;
  return (std::abs(p - d) <= std::abs(q - d)) ? p : q;
}

struct EigenvectorsResult {
  ComplexMatrix vectors;
  double vector_condition;
};

/// Back-substitution on the triangular Schur factor: for each j solve
/// (T - T(j,j) I) y = 0 with y_j = 1, guarded against vanishing pivots, then
/// map back through Q and normalize.
EigenvectorsResult eigenvectors_from_schur(const SchurDecomposition& sd) {
  const std::size_t n = sd.t.dim();
  double max_t = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      max_t = std::max(max_t, std::abs(sd.t(i, j)));
    }
  }
  ComplexMatrix y(n);
  std::vector<Complex> col(n);
  for (std::size_t j = 0; j < n; ++j) {
    const Complex lambda = sd.t(j, j);
    const double smin = std::max(kEps * (std::abs(lambda) + max_t), 1e-300);
    std::fill(col.begin(), col.end(), Complex(0.0, 0.0));
    col[j] = Complex(1.0, 0.0);
    for (std::size_t i = j; i-- > 0;) {
      Complex rhs(0.0, 0.0);
      for (std::size_t k = i + 1; k <= j; ++k) rhs += sd.t(i, k) * col[k];
      Complex d = sd.t(i, i) - lambda;
      if (std::abs(d) < smin) d = Complex(smin, 0.0);
      col[i] = -rhs / d;
    }
    double norm2 = 0.0;
    for (std::size_t i = 0; i <= j; ++i) norm2 += std::norm(col[i]);
    const double inv_norm = 1.0 / std::sqrt(norm2);
    for (std::size_t i = 0; i <= j; ++i) y(i, j) = col[i] * inv_norm;
  }
  EigenvectorsResult out{sd.q * y, 1.0};
  double cond;
  try {
    cond = frobenius_norm(out.vectors) * frobenius_norm(inverse(out.vectors));
  } catch (const NumericalError&) {
    cond = 1e300;
  }
  if (!std::isfinite(cond)) cond = 1e300;
  out.vector_condition = std::clamp(cond, 1.0, 1e300);
  return out;
}

std::int64_t congruence_k_bound(double diam, double tol, double az) {
  const double bound = std::floor((diam + tol) / az) + 1.0;
  if (!(bound <= 1e6)) {
    throw std::invalid_argument(
        "congruence check: modulus too small relative to spectrum diameter");
  }
  return static_cast<std::int64_t>(bound);
}

}  // namespace

ScalingThreshold ScalingThreshold::finite(double value) {
  if (!(std::isfinite(value) && value > 0.0)) {
    throw std::invalid_argument("ScalingThreshold: value must be positive");
  }
  ScalingThreshold t;
  t.unbounded_ = false;
  t.value_ = value;
  return t;
}

ScalingThreshold ScalingThreshold::unbounded() {
  ScalingThreshold t;
  t.unbounded_ = true;
  return t;
}

double ScalingThreshold::value() const {
  if (unbounded_) {
    throw std::logic_error("ScalingThreshold: unbounded threshold has no value");
  }
  return value_;
}

namespace detail {

SchurDecomposition schur_decompose_with_budget(const ComplexMatrix& a,
                                               const ToleranceConfig& cfg,
                                               std::size_t max_qr_steps) {
  cfg.validate();
  if (a.dim() == 0) {
    throw std::invalid_argument("schur_decompose: empty matrix");
  }
  a.ensure_finite();
  const std::size_t n = a.dim();
  SchurDecomposition sd{a, ComplexMatrix::identity(n)};
  if (n == 1) return sd;
  ComplexMatrix& h = sd.t;
  ComplexMatrix& q = sd.q;
  hessenberg(h, q);

  std::size_t hi = n - 1;
  std::size_t its = 0;
  std::size_t total = 0;
  std::vector<Givens> rots(n);
  while (true) {
    std::size_t l = hi;
    while (l > 0) {
      const double sub = std::abs(h(l, l - 1));
      double tst = std::abs(h(l - 1, l - 1)) + std::abs(h(l, l));
      if (tst == 0.0) tst = window_frobenius(h, hi);
      if (sub <= kEps * tst) {
        h(l, l - 1) = Complex(0.0, 0.0);
        break;
      }
      --l;
    }
    if (l == hi) {
      if (hi == 0) break;
      --hi;
      its = 0;
      continue;
    }
    if (total >= max_qr_steps) {
      throw ConvergenceError("eigenvalue iteration exhausted its budget of " +
                             std::to_string(max_qr_steps) + " QR steps");
    }
    ++total;
    ++its;

    Complex sigma;
    if (its % 10 == 0) {
      sigma = h(hi, hi) + 0.75 * std::abs(h(hi, hi - 1));
    } else {
      sigma = wilkinson_shift(h, hi);
    }
    for (std::size_t i = l; i <= hi; ++i) h(i, i) -= sigma;

    for (std::size_t k = l; k < hi; ++k) {
      const Givens g = make_givens(h(k, k), h(k + 1, k));
      rots[k - l] = g;
      for (std::size_t j = k; j < n; ++j) {
        const Complex t1 = h(k, j);
        const Complex t2 = h(k + 1, j);
        h(k, j) = g.c * t1 + g.s * t2;
        h(k + 1, j) = -std::conj(g.s) * t1 + g.c * t2;
      }
      h(k + 1, k) = Complex(0.0, 0.0);
    }
    for (std::size_t k = l; k < hi; ++k) {
      const Givens g = rots[k - l];
      const std::size_t rmax = std::min(k + 2, hi);
      for (std::size_t i = 0; i <= rmax; ++i) {
        const Complex t1 = h(i, k);
        const Complex t2 = h(i, k + 1);
        h(i, k) = g.c * t1 + std::conj(g.s) * t2;
        h(i, k + 1) = -g.s * t1 + g.c * t2;
      }
      for (std::size_t i = 0; i < n; ++i) {
        const Complex t1 = q(i, k);
        const Complex t2 = q(i, k + 1);
        q(i, k) = g.c * t1 + std::conj(g.s) * t2;
        q(i, k + 1) = -g.s * t1 + g.c * t2;
      }
    }
    for (std::size_t i = l; i <= hi; ++i) h(i, i) += sigma;
  }

  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) h(i, j) = Complex(0.0, 0.0);
  }
  return sd;
}

}  // namespace detail

SchurDecomposition schur_decompose(const ComplexMatrix& a,
                                   const ToleranceConfig& cfg) {
  return detail::schur_decompose_with_budget(a, cfg, 30 * a.dim());
}

Spectrum eigenvalues(const ComplexMatrix& a, const ToleranceConfig& cfg) {
  const SchurDecomposition sd = schur_decompose(a, cfg);
  Spectrum s;
  s.values.reserve(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) s.values.push_back(sd.t(i, i));
  s.condition_hint =
      is_normal(a, cfg) ? 1.0 : eigenvectors_from_schur(sd).vector_condition;
  return s;
}

Eigendecomposition eigen_decompose(const ComplexMatrix& a,
                                   const ToleranceConfig& cfg) {
  const SchurDecomposition sd = schur_decompose(a, cfg);
  EigenvectorsResult ev = eigenvectors_from_schur(sd);
  Eigendecomposition out;
  out.values.reserve(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) out.values.push_back(sd.t(i, i));
  out.vectors = std::move(ev.vectors);
  out.vector_condition = ev.vector_condition;
  return out;
}

double diameter(const Spectrum& s) {
  if (s.values.empty()) {
    throw std::invalid_argument("diameter: empty spectrum");
  }
  double best = 0.0;
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    for (std::size_t j = i + 1; j < s.values.size(); ++j) {
      best = std::max(best, std::abs(s.values[i] - s.values[j]));
    }
  }
  return best;
}

CongruenceReport is_congruence_free(const Spectrum& s, Complex z,
                                    const ToleranceConfig& cfg) {
  cfg.validate();
  const double az = std::abs(z);
  if (az == 0.0) {
    throw std::invalid_argument("is_congruence_free: modulus z must be nonzero");
  }
  if (s.values.empty()) {
    throw std::invalid_argument("is_congruence_free: empty spectrum");
  }
  CongruenceReport report;
  report.z = z;
  const double diam = diameter(s);
  const std::int64_t kmax = congruence_k_bound(diam, cfg.congruence_tol, az);
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    for (std::size_t j = 0; j < s.values.size(); ++j) {
      if (i == j) continue;
      const Complex d = s.values[i] - s.values[j];
      if (std::abs(d) <= cfg.congruence_tol) continue;  // same point: only k=0
      for (std::int64_t k = -kmax; k <= kmax; ++k) {
        if (k == 0) continue;
        const double residual = std::abs(d - static_cast<double>(k) * z);
        if (residual <= cfg.congruence_tol) {
          report.witnesses.push_back(
              CongruenceWitness{s.values[i], s.values[j], k, residual});
        }
      }
    }
  }
  report.free = report.witnesses.empty();
  return report;
}

double nearest_multiple_gap(const Spectrum& s, Complex z) {
  const double az = std::abs(z);
  if (az == 0.0) {
    throw std::invalid_argument("nearest_multiple_gap: modulus z must be nonzero");
  }
  if (s.values.size() < 2) return std::numeric_limits<double>::infinity();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    for (std::size_t j = 0; j < s.values.size(); ++j) {
      if (i == j) continue;
      const Complex d = s.values[i] - s.values[j];
      // The distance to k*z is a quadratic in k minimized at k_real; the
      // integer minimum over k != 0 lies within two units of it or at +-1.
      const double k_real =
          (d.real() * z.real() + d.imag() * z.imag()) / (az * az);
      const std::int64_t k0 = static_cast<std::int64_t>(std::llround(k_real));
      for (std::int64_t k = k0 - 2; k <= k0 + 2; ++k) {
        if (k == 0) continue;
        best = std::min(best, std::abs(d - static_cast<double>(k) * z));
      }
      best = std::min(best, std::abs(d - z));
      best = std::min(best, std::abs(d + z));
    }
  }
  return best;
}

ScalingThreshold scaling_threshold(const Spectrum& s, Complex z) {
  const double az = std::abs(z);
  if (az == 0.0) {
    throw std::invalid_argument("scaling_threshold: modulus z must be nonzero");
  }
  const double diam = diameter(s);
  if (diam == 0.0) return ScalingThreshold::unbounded();
  return ScalingThreshold::finite(az / diam);
}

Spectrum scale_spectrum(const Spectrum& s, double t) {
  Spectrum out;
  out.values.reserve(s.values.size());
  for (const Complex& v : s.values) out.values.push_back(t * v);
  out.condition_hint = s.condition_hint;
  return out;
}

SpectralBox spectral_box_normal(const ComplexMatrix& a,
                                const ToleranceConfig& cfg) {
  cfg.validate();
  if (!is_normal(a, cfg)) {
    throw std::invalid_argument("spectral_box_normal: matrix is not normal");
  }
  const CartesianParts parts = cartesian_decomposition(a);
  const Spectrum re = eigenvalues(parts.re, cfg);
  const Spectrum im = eigenvalues(parts.im, cfg);
  SpectralBox box{};
  box.j_lo = std::numeric_limits<double>::infinity();
  box.j_hi = -std::numeric_limits<double>::infinity();
  box.im_lo = std::numeric_limits<double>::infinity();
  box.im_hi = -std::numeric_limits<double>::infinity();
  for (const Complex& v : re.values) {
    box.j_lo = std::min(box.j_lo, v.real());
    box.j_hi = std::max(box.j_hi, v.real());
  }
  for (const Complex& v : im.values) {
    box.im_lo = std::min(box.im_lo, v.real());
    box.im_hi = std::max(box.im_hi, v.real());
  }
  return box;
}

bool check_spectral_inclusion_normal(const ComplexMatrix& a,
                                     const ToleranceConfig& cfg) {
  cfg.validate();
  if (!is_normal(a, cfg)) {
    throw std::invalid_argument(
        "check_spectral_inclusion_normal: matrix is not normal");
  }
  const CartesianParts parts = cartesian_decomposition(a);
  const Spectrum full = eigenvalues(a, cfg);
  const Spectrum re = eigenvalues(parts.re, cfg);
  const Spectrum im = eigenvalues(parts.im, cfg);
  for (const Complex& lambda : full.values) {
    bool matched = false;
    for (const Complex& x : re.values) {
      for (const Complex& y : im.values) {
        const Complex grid(x.real(), y.real());
        if (std::abs(lambda - grid) <= cfg.congruence_tol) {
          matched = true;
          break;
        }
      }
      if (matched) break;
    }
    if (!matched) return false;
  }
  return true;
}

}  // namespace commexp
