#include "commexp/expm.hpp"

#include <cmath>
#include <stdexcept>

#include "commexp/errors.hpp"
#include "commexp/spectrum.hpp"

namespace commexp {

namespace {

/// Numerator coefficients of the degree-13 diagonal Pade approximant to
/// exp. All are exactly representable as doubles (the largest needs 56 bits
/// of magnitude but only 48 significant bits).
constexpr double kPade13[14] = {64764752532480000.0,
                                32382376266240000.0,
                                7771770303897600.0,
                                1187353796428800.0,
                                129060195264000.0,
                                10559470521600.0,
                                670442572800.0,
                                33522128640.0,
                                1323241920.0,
                                40840800.0,
                                960960.0,
                                16380.0,
                                182.0,
                                1.0};

/// Largest 1-norm for which the degree-13 approximant meets double
/// precision without scaling.
constexpr double kTheta13 = 5.37;

void add_scaled_identity(ComplexMatrix& m, double c) {
  for (std::size_t i = 0; i < m.dim(); ++i) m(i, i) += Complex(c, 0.0);
}

void throw_if_not_finite(const ComplexMatrix& m, const char* what) {
  for (std::size_t i = 0; i < m.size(); ++i) {
    const Complex v = m.data()[i];
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw NumericalError(what);
    }
  }
}

int scaling_exponent(double norm, double limit) {
  if (norm <= limit) return 0;
  return static_cast<int>(std::ceil(std::log2(norm / limit)));
}

}  // namespace

ExpmResult expm(const ComplexMatrix& a, const ToleranceConfig& cfg) {
  cfg.validate();
  if (a.dim() == 0) throw std::invalid_argument("expm: empty matrix");
  a.ensure_finite();

  const int s = scaling_exponent(one_norm(a), kTheta13);
  const ComplexMatrix as = std::ldexp(1.0, -s) * a;

  const ComplexMatrix a2 = as * as;
  const ComplexMatrix a4 = a2 * a2;
  const ComplexMatrix a6 = a2 * a4;

  ComplexMatrix u_inner =
      kPade13[13] * a6 + kPade13[11] * a4 + kPade13[9] * a2;
  u_inner = a6 * u_inner + kPade13[7] * a6 + kPade13[5] * a4 + kPade13[3] * a2;
  add_scaled_identity(u_inner, kPade13[1]);
  const ComplexMatrix u = as * u_inner;

  ComplexMatrix v = kPade13[12] * a6 + kPade13[10] * a4 + kPade13[8] * a2;
  v = a6 * v + kPade13[6] * a6 + kPade13[4] * a4 + kPade13[2] * a2;
  add_scaled_identity(v, kPade13[0]);

  ComplexMatrix f = solve(v - u, v + u);
  throw_if_not_finite(f, "expm: Pade solve produced non-finite values");
  for (int i = 0; i < s; ++i) {
    f = f * f;
    throw_if_not_finite(f, "expm: repeated squaring overflowed");
  }
  return ExpmResult{std::move(f), s, 0.0};
}

ExpmResult expm_cross_checked(const ComplexMatrix& a,
                              const ToleranceConfig& cfg, int taylor_budget) {
  ExpmResult r = expm(a, cfg);
  const ComplexMatrix oracle = expm_taylor_oracle(a, taylor_budget);
  r.oracle_gap = frobenius_norm(r.value - oracle);
  return r;
}

ComplexMatrix expm_taylor_oracle(const ComplexMatrix& a, int budget) {
  if (a.dim() == 0) {
    throw std::invalid_argument("expm_taylor_oracle: empty matrix");
  }
  if (budget < 1) {
    throw std::invalid_argument("expm_taylor_oracle: budget must be >= 1");
  }
  a.ensure_finite();

  const int s = scaling_exponent(one_norm(a), 0.5);
  const ComplexMatrix as = std::ldexp(1.0, -s) * a;
  const std::size_t n = a.dim();

  // Compensated elementwise summation of I + As + As^2/2! + ...
  ComplexMatrix sum = ComplexMatrix::identity(n);
  ComplexMatrix comp(n);
  ComplexMatrix term = ComplexMatrix::identity(n);
  for (int k = 1; k <= budget; ++k) {
    term = (1.0 / k) * (term * as);
    if (frobenius_norm(term) == 0.0) break;  // nilpotent: series is exact
    for (std::size_t i = 0; i < sum.size(); ++i) {
      const Complex y = term.data()[i] - comp.data()[i];
      const Complex t = sum.data()[i] + y;
      comp.data()[i] = (t - sum.data()[i]) - y;
      sum.data()[i] = t;
    }
  }
  for (int i = 0; i < s; ++i) {
    sum = sum * sum;
    throw_if_not_finite(sum, "expm_taylor_oracle: repeated squaring overflowed");
  }
  return sum;
}

ComplexMatrix expm_eig_oracle(const ComplexMatrix& a,
                              const ToleranceConfig& cfg) {
  const Eigendecomposition ed = eigen_decompose(a, cfg);
  if (ed.vector_condition >= 1e6) {
    throw OracleUnavailableError(
        "expm_eig_oracle: eigenvector basis too ill-conditioned (condition " +
        std::to_string(ed.vector_condition) + ")");
  }
  ComplexMatrix scaled = inverse(ed.vectors);
  const std::size_t n = a.dim();
  for (std::size_t i = 0; i < n; ++i) {
    const Complex e = std::exp(ed.values[i]);
    for (std::size_t j = 0; j < n; ++j) scaled(i, j) *= e;
  }
  return ed.vectors * scaled;
}

}  // namespace commexp
