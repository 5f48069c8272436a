#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <tuple>

#include "commexp/complex_matrix.hpp"
#include "commexp/errors.hpp"
#include "commexp/generators.hpp"
#include "commexp/spectrum.hpp"
#include "commexp/tolerance.hpp"
#include "doctest.h"
#include "support/test_oracles.hpp"

using commexp::Complex;
using commexp::ComplexMatrix;
using commexp::CongruenceReport;
using commexp::Spectrum;
using commexp::SplitMix64;
using commexp::ToleranceConfig;

namespace {

const ToleranceConfig kCfg;

Spectrum spectrum_of(std::vector<Complex> values) {
  Spectrum s;
  s.values = std::move(values);
  return s;
}

double entry_dist(const ComplexMatrix& a, const ComplexMatrix& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) {
      worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
    }
  }
  return worst;
}

}  // namespace

TEST_CASE("eigenvalues of fixed matrices") {
  SUBCASE("diagonal") {
    const ComplexMatrix a = ComplexMatrix::from_rows(
        {{Complex(3, 1), Complex(0, 0)}, {Complex(0, 0), Complex(-2, 5)}});
    const Spectrum s = eigenvalues(a, kCfg);
    CHECK(commexp::test::multiset_match(s.values, {Complex(3, 1), Complex(-2, 5)},
                                        1e-12));
  }
  SUBCASE("rotation generator has spectrum +-i pi") {
    const double pi = std::numbers::pi;
    const ComplexMatrix a = ComplexMatrix::from_rows(
        {{Complex(0, 0), Complex(pi, 0)}, {Complex(-pi, 0), Complex(0, 0)}});
    const Spectrum s = eigenvalues(a, kCfg);
    CHECK(commexp::test::multiset_match(s.values,
                                        {Complex(0, pi), Complex(0, -pi)},
                                        1e-10));
  }
  SUBCASE("jordan block: defective double eigenvalue") {
    const ComplexMatrix a = ComplexMatrix::from_rows(
        {{Complex(2, 0), Complex(1, 0)}, {Complex(0, 0), Complex(2, 0)}});
    const Spectrum s = eigenvalues(a, kCfg);
    CHECK(commexp::test::multiset_match(s.values, {Complex(2, 0), Complex(2, 0)},
                                        1e-7));
    // Defective input must be flagged through the condition hint.
    CHECK(s.condition_hint > 1e6);
  }
  SUBCASE("companion matrix of (x-1)(x-2)(x-3)") {
    // x^3 - 6x^2 + 11x - 6
    const ComplexMatrix a = ComplexMatrix::from_rows(
        {{Complex(0, 0), Complex(0, 0), Complex(6, 0)},
         {Complex(1, 0), Complex(0, 0), Complex(-11, 0)},
         {Complex(0, 0), Complex(1, 0), Complex(6, 0)}});
    const Spectrum s = eigenvalues(a, kCfg);
    CHECK(commexp::test::multiset_match(
        s.values, {Complex(1, 0), Complex(2, 0), Complex(3, 0)}, 1e-9));
  }
  SUBCASE("one by one") {
    const ComplexMatrix a =
        ComplexMatrix::from_rows({{Complex(0.25, -8)}});
    const Spectrum s = eigenvalues(a, kCfg);
    CHECK(s.values.size() == 1);
    CHECK(s.values[0] == Complex(0.25, -8));
  }
}

TEST_CASE("eigenvalues agree with the characteristic polynomial oracle") {
  SplitMix64 rng(101);
  for (std::size_t n = 2; n <= 4; ++n) {
    for (int rep = 0; rep < 25; ++rep) {
      const ComplexMatrix a = random_gaussian(n, rng);
      const Spectrum s = eigenvalues(a, kCfg);
      const std::vector<Complex> oracle =
          commexp::test::eigenvalues_via_charpoly(a);
      CAPTURE(n);
      CAPTURE(rep);
      CHECK(commexp::test::multiset_match(s.values, oracle, 1e-7));
    }
  }
}

TEST_CASE("hermitian matrices get real eigenvalues") {
  SplitMix64 rng(7);
  const ComplexMatrix g = random_gaussian(6, rng);
  const ComplexMatrix h = 0.5 * (g + adjoint(g));
  const Spectrum s = eigenvalues(h, kCfg);
  for (const Complex& v : s.values) CHECK(std::abs(v.imag()) < 1e-10);
  CHECK(s.condition_hint == 1.0);
}

TEST_CASE("schur decomposition reconstructs and is unitary") {
  SplitMix64 rng(55);
  for (std::size_t n : {2, 3, 5, 8}) {
    const ComplexMatrix a = random_gaussian(n, rng);
    const auto sd = schur_decompose(a, kCfg);
    CHECK(entry_dist(sd.q * sd.t * adjoint(sd.q), a) < 1e-12 * (1 + n));
    CHECK(entry_dist(adjoint(sd.q) * sd.q, ComplexMatrix::identity(n)) <
          1e-12);
    for (std::size_t i = 1; i < n; ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        CHECK(sd.t(i, j) == Complex(0, 0));
      }
    }
  }
}

TEST_CASE("eigen_decompose produces genuine eigenpairs") {
  SplitMix64 rng(99);
  for (std::size_t n : {2, 4, 6}) {
    const ComplexMatrix a = random_gaussian(n, rng);
    const auto ed = eigen_decompose(a, kCfg);
    // Inverse iteration refinement is an independent check of each pair.
    CHECK(commexp::test::max_eigenpair_residual(a, ed.values, ed.vectors) <
          1e-8);
    CHECK(ed.vector_condition >= 1.0);
    CHECK(ed.vector_condition < 1e6);  // random matrices are diagonalizable
    for (std::size_t j = 0; j < n; ++j) {
      double col = 0.0;
      for (std::size_t i = 0; i < n; ++i) col += std::norm(ed.vectors(i, j));
      CHECK(std::sqrt(col) == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("qr iteration budget is enforced") {
  SplitMix64 rng(1);
  const ComplexMatrix a = random_gaussian(6, rng);
  CHECK_THROWS_AS(commexp::detail::schur_decompose_with_budget(a, kCfg, 0),
                  commexp::ConvergenceError);
  // Triangular input needs no QR steps at all.
  ComplexMatrix tri(3);
  tri(0, 0) = Complex(1, 0);
  tri(0, 2) = Complex(4, 1);
  tri(1, 1) = Complex(2, 0);
  tri(2, 2) = Complex(3, 0);
  const auto sd = commexp::detail::schur_decompose_with_budget(tri, kCfg, 0);
  CHECK(sd.t(0, 0) == Complex(1, 0));
}

TEST_CASE("diameter") {
  CHECK(diameter(spectrum_of({Complex(1, 1)})) == 0.0);
  CHECK(diameter(spectrum_of({Complex(0, 0), Complex(3, 4)})) ==
        doctest::Approx(5.0));
  CHECK_THROWS_AS(diameter(spectrum_of({})), std::invalid_argument);
}

TEST_CASE("congruence freedom on crafted spectra") {
  const Complex z = commexp::kTwoPiI;
  SUBCASE("planted multiple is caught with both orientations") {
    const Complex base(0.5, 0.3);
    const auto rep =
        is_congruence_free(spectrum_of({base, base + z}), z, kCfg);
    CHECK_FALSE(rep.free);
    REQUIRE(rep.witnesses.size() == 2);
    std::int64_t k_sum = 0;
    for (const auto& w : rep.witnesses) {
      CHECK(std::abs(w.k) == 1);
      CHECK(w.residual <= 1e-12);
      k_sum += w.k;
    }
    CHECK(k_sum == 0);  // k = +1 and k = -1, one per orientation
  }
  SUBCASE("distant triple multiple is still inside the k bound") {
    const auto rep = is_congruence_free(
        spectrum_of({Complex(0, 0), 3.0 * z}), z, kCfg);
    CHECK_FALSE(rep.free);
    bool saw_three = false;
    for (const auto& w : rep.witnesses) saw_three |= (std::abs(w.k) == 3);
    CHECK(saw_three);
  }
  SUBCASE("free spectrum") {
    const auto rep = is_congruence_free(
        spectrum_of({Complex(0, 0), Complex(1, 2), Complex(-1, 0.5)}), z,
        kCfg);
    CHECK(rep.free);
    CHECK(rep.witnesses.empty());
  }
  SUBCASE("points equal within tolerance are one element, not a violation") {
    // d = 1e-8 equals 1 * z exactly for z = 1e-8, but the pair is treated
    // as a repeated eigenvalue because |d| <= congruence_tol.
    const auto rep = is_congruence_free(
        spectrum_of({Complex(0, 0), Complex(1e-8, 0)}), Complex(1e-8, 0),
        kCfg);
    CHECK(rep.free);
  }
  SUBCASE("residual exactly at the tolerance counts as a violation") {
    ToleranceConfig cfg = kCfg;
    cfg.congruence_tol = 0.25;  // exact dyadic so the tie is exact
    const auto rep = is_congruence_free(
        spectrum_of({Complex(0, 0), Complex(1.25, 0)}), Complex(1, 0), cfg);
    CHECK_FALSE(rep.free);
    REQUIRE(!rep.witnesses.empty());
    CHECK(rep.witnesses[0].residual == 0.25);
  }
  SUBCASE("zero modulus is rejected") {
    CHECK_THROWS_AS(
        is_congruence_free(spectrum_of({Complex(1, 0)}), Complex(0, 0), kCfg),
        std::invalid_argument);
  }
}

TEST_CASE("nearest multiple gap") {
  const Complex z(1, 0);
  CHECK(nearest_multiple_gap(spectrum_of({Complex(5, 5)}), z) ==
        std::numeric_limits<double>::infinity());
  CHECK(nearest_multiple_gap(spectrum_of({Complex(0, 0), Complex(0.5, 0)}),
                             z) == doctest::Approx(0.5));
  // Equal points sit |z| away from the nearest nonzero multiple.
  CHECK(nearest_multiple_gap(spectrum_of({Complex(0.7, 0), Complex(0.7, 0)}),
                             z) == doctest::Approx(1.0));
  const Complex z2 = commexp::kTwoPiI;
  const double gap = nearest_multiple_gap(
      spectrum_of({Complex(0, 0), Complex(0, 0.1) + z2}), z2);
  CHECK(gap == doctest::Approx(0.1).epsilon(1e-9));
}

TEST_CASE("scaling threshold") {
  const Complex z = commexp::kTwoPiI;
  const auto tau =
      scaling_threshold(spectrum_of({Complex(0, 1), Complex(0, -1)}), z);
  REQUIRE_FALSE(tau.is_unbounded());
  CHECK(tau.value() == doctest::Approx(std::numbers::pi).epsilon(1e-14));

  const auto unbounded =
      scaling_threshold(spectrum_of({Complex(2, 3), Complex(2, 3)}), z);
  CHECK(unbounded.is_unbounded());
  CHECK_THROWS_AS(unbounded.value(), std::logic_error);

  // Scaling the spectrum by t divides the threshold by t.
  const Spectrum s = spectrum_of({Complex(0, 1), Complex(0, -1)});
  const auto tau_scaled = scaling_threshold(scale_spectrum(s, 0.5), z);
  CHECK(tau_scaled.value() ==
        doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-14));
  CHECK(scale_spectrum(s, 0.5).values[0] == Complex(0, 0.5));
}

TEST_CASE("spectral box of a normal matrix") {
  SplitMix64 rng(31);
  const commexp::GenSpec gs{0, 3, 1.0, 0.0};
  const ComplexMatrix a = normal_with_parts({1.0, 3.0, 2.0},
                                            {-1.0, 2.0, 0.5}, gs, rng);
  const auto box = spectral_box_normal(a, kCfg);
  CHECK(box.j_lo == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(box.j_hi == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(box.im_lo == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(box.im_hi == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(check_spectral_inclusion_normal(a, kCfg));

  const ComplexMatrix jordan = ComplexMatrix::from_rows(
      {{Complex(0, 0), Complex(1, 0)}, {Complex(0, 0), Complex(0, 0)}});
  CHECK_THROWS_AS(spectral_box_normal(jordan, kCfg), std::invalid_argument);
  CHECK_THROWS_AS(check_spectral_inclusion_normal(jordan, kCfg),
                  std::invalid_argument);
}

TEST_CASE("congruence checker agrees with the exact grid oracle") {
  SplitMix64 rng(2024);
  constexpr double h = 0.25;
  int violating = 0;
  for (int rep = 0; rep < 120; ++rep) {
    commexp::test::GridSpectrum grid;
    std::int64_t zp = 0;
    std::int64_t zq = 0;
    while (std::max(std::llabs(zp), std::llabs(zq)) < 3) {
      zp = static_cast<std::int64_t>(rng.next() % 13) - 6;
      zq = static_cast<std::int64_t>(rng.next() % 13) - 6;
    }
    grid.z = h * Complex(static_cast<double>(zp), static_cast<double>(zq));
    const std::size_t m = 2 + rng.next() % 7;
    for (std::size_t i = 0; i < m; ++i) {
      const bool plant = !grid.values.empty() && rng.next_unit() < 0.4;
      if (plant) {
        const std::size_t base = rng.next() % grid.values.size();
        const std::int64_t k =
            (rng.next() % 2 == 0 ? 1 : -1) *
            static_cast<std::int64_t>(1 + rng.next() % 2);
        grid.values.push_back(grid.values[base] +
                              static_cast<double>(k) * grid.z);
      } else {
        const auto p = static_cast<std::int64_t>(rng.next() % 13) - 6;
        const auto q = static_cast<std::int64_t>(rng.next() % 13) - 6;
        grid.values.push_back(
            h * Complex(static_cast<double>(p), static_cast<double>(q)));
      }
    }

    const auto oracle = commexp::test::grid_congruence_witnesses(grid);
    const auto rep_lib =
        is_congruence_free(spectrum_of(grid.values), grid.z, kCfg);
    CAPTURE(rep);
    CHECK(rep_lib.free == oracle.empty());
    REQUIRE(rep_lib.witnesses.size() == oracle.size());
    if (!rep_lib.free) ++violating;

    // On the grid all arithmetic is exact, so witnesses must agree as
    // multisets of (s1, s2, k) triples.
    using Triple = std::tuple<double, double, double, double, std::int64_t>;
    std::vector<Triple> lhs;
    std::vector<Triple> rhs;
    for (const auto& w : rep_lib.witnesses) {
      lhs.emplace_back(w.s1.real(), w.s1.imag(), w.s2.real(), w.s2.imag(),
                       w.k);
      CHECK(w.residual == 0.0);
    }
    for (const auto& w : oracle) {
      rhs.emplace_back(grid.values[w.i].real(), grid.values[w.i].imag(),
                       grid.values[w.j].real(), grid.values[w.j].imag(), w.k);
    }
    std::sort(lhs.begin(), lhs.end());
    std::sort(rhs.begin(), rhs.end());
    CHECK(lhs == rhs);
  }
  // The generator must exercise both verdicts or the test proves nothing.
  CHECK(violating > 20);
  CHECK(violating < 120);
}
