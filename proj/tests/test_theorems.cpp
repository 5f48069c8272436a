#include <cmath>
#include <numbers>

#include "commexp/complex_matrix.hpp"
#include "commexp/errors.hpp"
#include "commexp/expm.hpp"
#include "commexp/generators.hpp"
#include "commexp/theorems.hpp"
#include "commexp/tolerance.hpp"
#include "doctest.h"

using commexp::Complex;
using commexp::ComplexMatrix;
using commexp::GenSpec;
using commexp::SplitMix64;
using commexp::TheoremId;
using commexp::TheoremReport;
using commexp::ToleranceConfig;
using commexp::Verdict;

namespace {

const ToleranceConfig kCfg;

/// Type invariant shared by every report: the hypothesis-violated verdict
/// tracks the hypothesis flag exactly.
void check_invariant(const TheoremReport& r) {
  CHECK((r.verdict == Verdict::kHypothesisViolated) == !r.hypothesis_holds);
}

/// A with a congruence-free spectrum plus a commuting or generic B.
struct Fixture {
  ComplexMatrix a;
  ComplexMatrix b_commuting;
  ComplexMatrix b_generic;
};

Fixture make_fixture(std::uint64_t seed) {
  SplitMix64 rng(seed);
  const std::size_t n = 4;
  const auto spectrum =
      congruence_free_spectrum(n, commexp::kTwoPiI, 0.2, rng);
  Fixture f;
  f.a = with_spectrum(spectrum, GenSpec{0, n, 2.0, 0.2}, rng);
  f.b_commuting = polynomial_in(
      f.a, {Complex(0.4, 0.1), Complex(-0.3, 0.2), Complex(0.05, -0.02)});
  f.b_generic = random_gaussian(n, rng);
  return f;
}

}  // namespace

TEST_CASE("names of theorems and verdicts") {
  CHECK(std::string(to_string(TheoremId::kWermuth)) == "wermuth");
  CHECK(std::string(to_string(TheoremId::kMain)) == "main");
  CHECK(std::string(to_string(TheoremId::kChabanMortad)) == "chaban_mortad");
  CHECK(std::string(to_string(Verdict::kConsistent)) == "consistent");
  CHECK(std::string(to_string(Verdict::kHypothesisViolated)) ==
        "hypothesis-violated");
  CHECK(std::string(to_string(Verdict::kViolation)) == "VIOLATION");
}

TEST_CASE("defect functions on commuting and non-commuting pairs") {
  const Fixture f = make_fixture(1);
  CHECK(commutation_defect(f.a, f.b_commuting) < 1e-12);
  CHECK(exp_commutes_with(f.a, f.b_commuting, kCfg) < 1e-12);
  CHECK(exp_commutes(f.a, f.b_commuting, kCfg) < 1e-12);
  CHECK(commutation_defect(f.a, f.b_generic) > 1e-3);
  CHECK(exp_commutes_with(f.a, f.b_generic, kCfg) > 1e-3);
  CHECK_THROWS_AS(exp_commutes(f.a, ComplexMatrix(3), kCfg),
                  std::invalid_argument);
}

TEST_CASE("verify_main on an honest pair") {
  const Fixture f = make_fixture(2);
  SUBCASE("commuting side of the iff") {
    const TheoremReport r = verify_main(f.a, f.b_commuting, kCfg);
    check_invariant(r);
    CHECK(r.theorem == TheoremId::kMain);
    CHECK(r.hypothesis_holds);
    CHECK(r.verdict == Verdict::kConsistent);
    CHECK_FALSE(r.inconclusive_margin);
    CHECK(r.exp_defect <= kCfg.eq_tol);
    CHECK(r.op_defect <= kCfg.eq_tol);
    REQUIRE(r.hypothesis_detail.size() == 1);
    CHECK(r.hypothesis_detail[0].passed);
    REQUIRE(r.hypothesis_detail[0].congruence.has_value());
    CHECK(r.hypothesis_detail[0].congruence->free);
  }
  SUBCASE("non-commuting side of the iff") {
    const TheoremReport r = verify_main(f.a, f.b_generic, kCfg);
    check_invariant(r);
    CHECK(r.hypothesis_holds);
    CHECK(r.verdict == Verdict::kConsistent);
    CHECK(r.exp_defect > 10 * kCfg.eq_tol);
    CHECK(r.op_defect > 10 * kCfg.eq_tol);
  }
}

TEST_CASE("the canonical pair defeats the conclusion but not the theorem") {
  const auto [a, b] = commexp::counterexample_pair(1.0);
  // e^A = -I commutes with B while A and B do not commute; the theorem
  // survives because sigma(A) = {i pi, -i pi} differs by 2 pi i.
  const TheoremReport r = verify_main(a, b, kCfg);
  check_invariant(r);
  CHECK_FALSE(r.hypothesis_holds);
  CHECK(r.verdict == Verdict::kHypothesisViolated);
  CHECK(r.exp_defect <= kCfg.eq_tol);
  CHECK(r.op_defect > 10 * kCfg.eq_tol);
  REQUIRE(r.hypothesis_detail.size() == 1);
  REQUIRE(r.hypothesis_detail[0].congruence.has_value());
  const auto& witnesses = r.hypothesis_detail[0].congruence->witnesses;
  REQUIRE_FALSE(witnesses.empty());
  for (const auto& w : witnesses) CHECK(std::abs(w.k) == 1);
  // op defect = 2 pi sqrt(2) / (1 + 2 pi), the exact commutator scale
  const double expected =
      2 * std::numbers::pi * std::sqrt(2.0) / (1 + 2 * std::numbers::pi);
  CHECK(r.op_defect == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("counterexample pair entries are exact") {
  const auto [a, b] = commexp::counterexample_pair(0.75);
  CHECK(a(0, 1) == Complex(std::numbers::pi, 0));
  CHECK(a(1, 0) == Complex(-std::numbers::pi, 0));
  CHECK(a(0, 0) == Complex(0, 0));
  CHECK(b(0, 1) == Complex(0.75, 0));
  CHECK(b(1, 0) == Complex(0.75, 0));
}

TEST_CASE("verify_wermuth needs both spectra free") {
  const Fixture f = make_fixture(3);
  SUBCASE("both free, commuting") {
    const TheoremReport r = verify_wermuth(f.a, f.b_commuting, kCfg);
    check_invariant(r);
    REQUIRE(r.hypothesis_detail.size() == 2);
    CHECK(r.hypothesis_detail[0].passed);
    // sigma(B) is the polynomial image; for these small coefficients it
    // stays well inside one modulus cell, hence free.
    CHECK(r.hypothesis_detail[1].passed);
    CHECK(r.verdict == Verdict::kConsistent);
    CHECK(r.exp_defect <= kCfg.eq_tol);
  }
  SUBCASE("both free, non-commuting") {
    const TheoremReport r = verify_wermuth(f.a, f.b_generic, kCfg);
    check_invariant(r);
    CHECK(r.verdict == Verdict::kConsistent);
    CHECK(r.exp_defect > 10 * kCfg.eq_tol);
    CHECK(r.op_defect > 10 * kCfg.eq_tol);
  }
  SUBCASE("sigma(B) hits a nonzero multiple of 2 pi i") {
    const ComplexMatrix a = ComplexMatrix::from_rows(
        {{Complex(0.3, 0), Complex(0, 0)}, {Complex(0, 0), Complex(1, 0.5)}});
    const ComplexMatrix b = ComplexMatrix::from_rows(
        {{Complex(0, 0), Complex(0, 0)},
         {Complex(0, 0), Complex(0, commexp::kTwoPi)}});
    const TheoremReport r = verify_wermuth(a, b, kCfg);
    check_invariant(r);
    CHECK_FALSE(r.hypothesis_holds);
    CHECK(r.verdict == Verdict::kHypothesisViolated);
    REQUIRE(r.hypothesis_detail.size() == 2);
    CHECK(r.hypothesis_detail[0].passed);        // sigma(A) is free
    CHECK_FALSE(r.hypothesis_detail[1].passed);  // sigma(B) is not
    REQUIRE(r.hypothesis_detail[1].congruence.has_value());
    CHECK_FALSE(r.hypothesis_detail[1].congruence->witnesses.empty());
    // Diagonal matrices commute on both levels: the iff itself held.
    CHECK(r.exp_defect <= kCfg.eq_tol);
    CHECK(r.op_defect <= kCfg.eq_tol);
  }
}

TEST_CASE("verify_chaban_mortad") {
  SplitMix64 rng(44);
  const GenSpec gs{0, 4, 1.0, 0.0};
  const ComplexMatrix good = normal_with_parts(
      {0.5, -1.2, 1.8, 0.1}, {0.3, 1.1, 2.9, 1.7}, gs, rng);
  SUBCASE("hypothesis holds, commuting") {
    const ComplexMatrix b =
        polynomial_in(good, {Complex(1, 0), Complex(0.2, 0.4)});
    const TheoremReport r = verify_chaban_mortad(good, b, kCfg);
    check_invariant(r);
    CHECK(r.hypothesis_holds);
    CHECK(r.verdict == Verdict::kConsistent);
    REQUIRE(r.hypothesis_detail.size() == 3);
    CHECK(r.hypothesis_detail[0].passed);
    CHECK(r.hypothesis_detail[1].passed);
    // The rectangle J + i(0, pi) cannot contain a 2 pi i difference.
    CHECK(r.hypothesis_detail[2].passed);
    REQUIRE(r.hypothesis_detail[2].congruence.has_value());
    CHECK(r.hypothesis_detail[2].congruence->free);
  }
  SUBCASE("hypothesis holds, non-commuting") {
    const ComplexMatrix b = random_gaussian(4, rng);
    const TheoremReport r = verify_chaban_mortad(good, b, kCfg);
    check_invariant(r);
    CHECK(r.verdict == Verdict::kConsistent);
    CHECK(r.op_defect > 10 * kCfg.eq_tol);
    CHECK(r.exp_defect > 10 * kCfg.eq_tol);
  }
  SUBCASE("non-normal input fails the first check") {
    const ComplexMatrix jordan = ComplexMatrix::from_rows(
        {{Complex(0.5, 0.5), Complex(1, 0)}, {Complex(0, 0), Complex(0.5, 0.5)}});
    const TheoremReport r =
        verify_chaban_mortad(jordan, ComplexMatrix::identity(2), kCfg);
    check_invariant(r);
    CHECK_FALSE(r.hypothesis_holds);
    REQUIRE(r.hypothesis_detail.size() == 2);  // no implied check when failed
    CHECK_FALSE(r.hypothesis_detail[0].passed);
  }
  SUBCASE("imaginary part spectrum outside the open interval") {
    const ComplexMatrix low = normal_with_parts({0.0, 0.0}, {-0.2, 1.0},
                                                GenSpec{0, 2, 1.0, 0.0}, rng);
    const TheoremReport r_low =
        verify_chaban_mortad(low, ComplexMatrix::identity(2), kCfg);
    check_invariant(r_low);
    CHECK_FALSE(r_low.hypothesis_holds);
    CHECK_FALSE(r_low.hypothesis_detail[1].passed);

    const ComplexMatrix high = normal_with_parts(
        {0.0, 0.0}, {std::numbers::pi + 0.2, 1.0}, GenSpec{0, 2, 1.0, 0.0},
        rng);
    const TheoremReport r_high =
        verify_chaban_mortad(high, ComplexMatrix::identity(2), kCfg);
    CHECK_FALSE(r_high.hypothesis_holds);
  }
  SUBCASE("endpoints are excluded, up to the interval margin") {
    // im inside (0, pi) but within the margin of the endpoint still fails
    // the strict bound.
    const ComplexMatrix edge = normal_with_parts(
        {0.0, 0.0}, {kCfg.interval_margin / 2, 1.0}, GenSpec{0, 2, 1.0, 0.0},
        rng);
    const TheoremReport r =
        verify_chaban_mortad(edge, ComplexMatrix::identity(2), kCfg);
    CHECK_FALSE(r.hypothesis_holds);
    const auto hyp = chaban_mortad_hypothesis(edge, kCfg);
    CHECK(hyp.normal);
    CHECK_FALSE(hyp.im_spectrum_in_open_interval);
    REQUIRE(hyp.im_spectrum.size() == 2);
  }
}

TEST_CASE("witness scan below the scaling threshold") {
  SUBCASE("canonical pair: tau = pi and every sample commutes") {
    const auto [a, b] = commexp::counterexample_pair(1.0);
    const auto scan = t_witness_scan(a, b, 16, kCfg);
    REQUIRE_FALSE(scan.tau.is_unbounded());
    // sigma(B) = {1, -1}: tau = 2 pi / 2 = pi
    CHECK(scan.tau.value() ==
          doctest::Approx(std::numbers::pi).epsilon(1e-10));
    REQUIRE(scan.samples.size() == 16);
    for (std::size_t j = 0; j < scan.samples.size(); ++j) {
      const auto& s = scan.samples[j];
      CHECK(s.t > 0.0);
      CHECK(s.t < scan.tau.value());
      // e^A = -I is central, so the exponential-level defect vanishes at
      // every t even though A and B do not commute. The commutation freedom
      // lives entirely in the operator-level defect below.
      CHECK(s.exp_defect_t < 1e-12);
      if (j > 0) CHECK(s.t > scan.samples[j - 1].t);
    }
    const double expected =
        2 * std::numbers::pi * std::sqrt(2.0) / (1 + 2 * std::numbers::pi);
    CHECK(scan.inferred_op_defect == doctest::Approx(expected).epsilon(1e-12));
  }
  SUBCASE("singleton spectrum makes the threshold unbounded") {
    const Fixture f = make_fixture(5);
    const auto scan =
        t_witness_scan(f.a, ComplexMatrix::identity(4), 8, kCfg);
    CHECK(scan.tau.is_unbounded());
    REQUIRE(scan.samples.size() == 8);
    for (const auto& s : scan.samples) {
      CHECK(s.t > 0.0);
      CHECK(s.t < 1.0);
      CHECK(s.exp_defect_t < 1e-12);
    }
    CHECK(scan.inferred_op_defect < 1e-12);
  }
  SUBCASE("precondition is enforced") {
    const ComplexMatrix a = ComplexMatrix::from_rows(
        {{Complex(1, 0), Complex(0, 0)}, {Complex(0, 0), Complex(2, 0)}});
    const ComplexMatrix b = ComplexMatrix::from_rows(
        {{Complex(0, 0), Complex(1, 0)}, {Complex(1, 0), Complex(0, 0)}});
    CHECK_THROWS_AS(t_witness_scan(a, b, 4, kCfg), std::invalid_argument);
    const Fixture f = make_fixture(6);
    CHECK_THROWS_AS(t_witness_scan(f.a, f.b_commuting, 0, kCfg),
                    std::invalid_argument);
  }
}

TEST_CASE("defects between eq_tol and 10 eq_tol flag the margin") {
  const Fixture f = make_fixture(7);
  const double d = exp_commutes_with(f.a, f.b_commuting, kCfg);
  REQUIRE(d > 0.0);  // rounding noise is never exactly zero here
  ToleranceConfig tight = kCfg;
  tight.eq_tol = d / 2;
  const TheoremReport r = verify_main(f.a, f.b_commuting, tight);
  check_invariant(r);
  CHECK(r.inconclusive_margin);
  // The gray zone can never flip the verdict to VIOLATION.
  CHECK(r.verdict == Verdict::kConsistent);
}
