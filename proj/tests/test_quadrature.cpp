#include <cmath>

#include "doctest.h"
#include "multistable/quadrature.hpp"

using namespace multistable;

TEST_SUITE("quadrature") {

TEST_CASE("gk15 panel integrates polynomials exactly") {
  auto poly = [](double x) { return ((3 * x - 2) * x + 1) * x * x; };
  // int_0^2 (3x^4 - 2x^3 + x^2) dx = 96/5 - 8 + 8/3
  const double exact = 96.0 / 5.0 - 8.0 + 8.0 / 3.0;
  const QuadResult r = gk15_panel(poly, 0.0, 2.0);
  CHECK(r.value == doctest::Approx(exact).epsilon(1e-14));
}

TEST_CASE("adaptive gk matches closed forms") {
  const QuadResult cosr =
      integrate_gk([](double x) { return std::cos(x); }, 0.0, 10.0, 1e-12);
  CHECK(cosr.value == doctest::Approx(std::sin(10.0)).epsilon(1e-12));

  const QuadResult expr =
      integrate_gk([](double x) { return std::exp(-x * x); }, -6.0, 6.0,
                   1e-12);
  CHECK(expr.value == doctest::Approx(std::sqrt(3.141592653589793)).epsilon(1e-12));
}

TEST_CASE("gauss16 panel is exact on smooth integrands") {
  const double v =
      gauss16_panel([](double x) { return std::sin(3 * x); }, 0.0, 1.0);
  CHECK(v == doctest::Approx((1.0 - std::cos(3.0)) / 3.0).epsilon(1e-14));
}

TEST_CASE("tanh-sinh handles endpoint singularities") {
  // int_0^1 x^{-1/2} dx = 2
  const QuadResult a =
      integrate_tanh_sinh([](double x) { return 1.0 / std::sqrt(x); }, 0.0,
                          1.0, 1e-12);
  CHECK(a.value == doctest::Approx(2.0).epsilon(1e-11));

  // int_0^1 x^{-0.9} dx = 10
  const QuadResult b = integrate_tanh_sinh(
      [](double x) { return std::pow(x, -0.9); }, 0.0, 1.0, 1e-12);
  CHECK(b.value == doctest::Approx(10.0).epsilon(1e-9));

  // smooth case
  const QuadResult c = integrate_tanh_sinh(
      [](double x) { return std::exp(x); }, 0.0, 1.0, 1e-13);
  CHECK(c.value == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-12));
}

TEST_CASE("alternating series acceleration: ln 2 and pi/4") {
  std::vector<double> inv_k, leibniz;
  for (int k = 0; k < 24; ++k) {
    inv_k.push_back(1.0 / (k + 1.0));
    leibniz.push_back(1.0 / (2.0 * k + 1.0));
  }
  const QuadResult ln2 = alternating_series(inv_k);
  CHECK(ln2.value == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  const QuadResult pi4 = alternating_series(leibniz);
  CHECK(pi4.value == doctest::Approx(3.141592653589793 / 4.0).epsilon(1e-12));
  CHECK(ln2.error < 1e-10);
}

}  // TEST_SUITE
