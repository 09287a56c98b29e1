#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "multistable/alpha.hpp"

using namespace multistable;

TEST_SUITE("alpha") {

TEST_CASE("built-in evaluations") {
  const auto affine = AlphaFunction::affine(1.2, 0.3, 1.0);
  CHECK(affine(0.5) == doctest::Approx(1.35).epsilon(1e-15));
  CHECK(affine.deriv(0.77) == 0.3);

  const auto constant = AlphaFunction::constant(1.5, 2.0);
  CHECK(constant(0.3) == 1.5);
  CHECK(constant(1.9) == 1.5);
  CHECK(constant.deriv(1.0) == 0.0);

  const auto sine = AlphaFunction::sinusoidal(1.5, 0.3, 1.0, 0.0, 1.0);
  CHECK(sine(0.25) == doctest::Approx(1.8).epsilon(1e-12));
  CHECK(sine.deriv(0.0) ==
        doctest::Approx(0.6 * 3.141592653589793).epsilon(1e-12));
}

TEST_CASE("domain errors") {
  const auto f = AlphaFunction::affine(1.2, 0.3, 1.0);
  CHECK_THROWS_AS(f(-0.01), std::domain_error);
  CHECK_THROWS_AS(f(1.01), std::domain_error);
  CHECK_THROWS_AS(f.deriv(2.0), std::domain_error);
}

TEST_CASE("range validation at construction") {
  CHECK_THROWS_AS(AlphaFunction::constant(2.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(AlphaFunction::constant(0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(AlphaFunction::affine(1.8, 0.5, 1.0), std::domain_error);
  CHECK_THROWS_AS(AlphaFunction::sinusoidal(1.0, 1.2, 1.0, 0.0, 1.0),
                  std::domain_error);

  // Partial period: range is computed from actual extrema, not a0 +- |a1|.
  const auto partial = AlphaFunction::sinusoidal(1.0, 0.9, 0.1, 0.0, 1.0);
  CHECK(partial.upper_bound() ==
        doctest::Approx(1.0 + 0.9 * std::sin(0.2 * 3.141592653589793)));
  CHECK(partial.lower_bound() == doctest::Approx(1.0));
}

TEST_CASE("declared bounds must contain the range and stay in (0,2)") {
  auto f = AlphaFunction::affine(1.2, 0.3, 1.0);
  CHECK(f.lower_bound() == doctest::Approx(1.2));
  CHECK(f.upper_bound() == doctest::Approx(1.5));
  f.declare_bounds(1.0, 1.9);
  CHECK(f.lower_bound() == 1.0);
  CHECK_THROWS_AS(f.declare_bounds(1.3, 1.9), std::domain_error);
  CHECK_THROWS_AS(f.declare_bounds(0.0, 1.9), std::domain_error);
}

TEST_CASE("range check on a dense grid") {
  const auto sine =
      AlphaFunction::sinusoidal(1.1, 0.35, 2.0, 0.7, 1.0);
  double lo = 2.0, hi = 0.0;
  for (int i = 0; i <= 10000; ++i) {
    const double v = sine(i / 10000.0);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  CHECK(lo >= sine.lower_bound() - 1e-12);
  CHECK(hi <= sine.upper_bound() + 1e-12);
}

TEST_CASE("derivative matches central differences") {
  const auto table = AlphaFunction::from_table(
      {0.0, 0.2, 0.5, 0.8, 1.0}, {1.2, 1.3, 1.45, 1.38, 1.5});
  const auto sine = AlphaFunction::sinusoidal(1.4, 0.25, 1.5, 0.3, 1.0);
  const double h = 1e-5;
  // Offset grid: the stencil [t-h, t+h] must not straddle a table knot
  // (the interpolant is C1, not C2).
  for (const AlphaFunction* f : {&table, &sine}) {
    for (int i = 1; i < 1000; ++i) {
      const double t = (i + 0.37) / 1000.0;
      if (t - h < 0.0 || t + h > 1.0) continue;
      const double fd = ((*f)(t + h) - (*f)(t - h)) / (2.0 * h);
      const double an = f->deriv(t);
      CHECK(std::abs(an - fd) <= 1e-6 * (1.0 + std::abs(an)));
    }
  }
}

TEST_CASE("table interpolation is monotone-preserving and C1") {
  const auto f = AlphaFunction::from_table({0.0, 0.25, 0.5, 0.75, 1.0},
                                           {0.5, 0.8, 1.1, 1.4, 1.7});
  // strictly increasing data -> nondecreasing interpolant
  double prev = f(0.0);
  for (int i = 1; i <= 400; ++i) {
    const double v = f(i / 400.0);
    CHECK(v >= prev - 1e-12);
    prev = v;
  }
  // range never overshoots the data
  CHECK(f.lower_bound() == doctest::Approx(0.5));
  CHECK(f.upper_bound() == doctest::Approx(1.7));
  // derivative continuity at a knot
  const double eps = 1e-9;
  CHECK(f.deriv(0.5 - eps) == doctest::Approx(f.deriv(0.5 + eps)).epsilon(1e-5));
  // knot interpolation
  CHECK(f(0.25) == doctest::Approx(0.8).epsilon(1e-14));
}

}  // TEST_SUITE
