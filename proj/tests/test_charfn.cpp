#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "multistable/charfn.hpp"
#include "multistable/rng.hpp"
#include "multistable/series.hpp"
#include "multistable/stable.hpp"

using namespace multistable;

namespace {

constexpr double kPi = 3.141592653589793;

// Independent reference for int_0^inf (1 - cos h(y)) dy with
// h(y) = sum b_l y^{-1/a_l}: composite Simpson over cells cut where the
// magnitude envelope advances by pi, quadratic tail expansion above, 2*eps
// bound below. Intentionally shares nothing with the production engine.
double brute_force_inner(const std::vector<double>& b,
                         const std::vector<double>& a, double eps) {
  auto h = [&](double y) {
    double s = 0.0;
    for (std::size_t l = 0; l < b.size(); ++l)
      s += b[l] * std::pow(y, -1.0 / a[l]);
    return s;
  };
  auto envelope = [&](double y) {
    double s = 0.0;
    for (std::size_t l = 0; l < b.size(); ++l)
      s += std::abs(b[l]) * std::pow(y, -1.0 / a[l]);
    return s;
  };

  // Upper cut: envelope <= 1e-3, tail handled by the h^2/2 expansion with
  // exact power integrals.
  double y_top = 1.0;
  while (envelope(y_top) > 1e-3) y_top *= 2.0;
  double tail = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) {
      const double e = 1.0 / a[i] + 1.0 / a[j];
      tail += 0.5 * b[i] * b[j] * std::pow(y_top, 1.0 - e) / (e - 1.0);
    }

  // Simpson over envelope-pi cells from y_top down to eps; wide cells are
  // split geometrically first, since the integrand decays like a power law
  // across them.
  auto simpson_panel = [&](double lo, double hi) {
    const int n = 64;  // even
    const double w = (hi - lo) / n;
    double s = (1.0 - std::cos(h(lo))) + (1.0 - std::cos(h(hi)));
    for (int k = 1; k < n; ++k)
      s += (1.0 - std::cos(h(lo + k * w))) * (k % 2 ? 4.0 : 2.0);
    return s * w / 3.0;
  };
  auto simpson_cell = [&](double lo, double hi) {
    if (hi / lo <= 1.1) return simpson_panel(lo, hi);
    const int pieces =
        static_cast<int>(std::ceil(std::log(hi / lo) / std::log(1.1)));
    double total = 0.0;
    double left = lo;
    const double ratio = std::pow(hi / lo, 1.0 / pieces);
    for (int k = 0; k < pieces; ++k) {
      const double right = (k + 1 == pieces) ? hi : left * ratio;
      total += simpson_panel(left, right);
      left = right;
    }
    return total;
  };
  auto solve_env = [&](double target, double hi) {
    double lo = hi;
    while (envelope(lo) < target) lo *= 0.5;
    for (int it = 0; it < 80; ++it) {
      const double mid = 0.5 * (lo + hi);
      (envelope(mid) >= target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  };

  double total = 0.0;
  double right = y_top;
  double target = envelope(y_top) + kPi;
  while (right > eps) {
    double left = solve_env(target, right);
    if (left < eps) left = eps;
    total += simpson_cell(left, right);
    right = left;
    target += kPi;
  }
  return total + tail;  // below eps the contribution is within [0, 2 eps]
}

}  // namespace

TEST_SUITE("charfn") {

TEST_CASE("L_I marginal: constants and closed forms") {
  const auto a15 = AlphaFunction::constant(1.5, 1.0);
  CHECK(cf_LI_marginal(a15, 1.0, 1.0).value.real() ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  CHECK(cf_LI_marginal(a15, 0.7, 0.0).value.real() == 1.0);

  const auto a12 = AlphaFunction::constant(1.2, 1.0);
  CHECK(cf_LI_marginal(a12, 1.0, 1.0).value.real() ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-12));

  const auto a1 = AlphaFunction::constant(1.0, 2.0);
  CHECK(cf_LI_marginal(a1, 2.0, 3.0).value.real() ==
        doctest::Approx(std::exp(-6.0)).epsilon(1e-12));
}

TEST_CASE("L_I marginal: affine exponent against the closed form") {
  // alpha(s) = 1 + 0.998 s keeps the range inside (0,2); the closed form of
  // int_0^1 2^{alpha(s)} ds is (2^{1.998} - 2) / (0.998 ln 2).
  const auto alpha = AlphaFunction::affine(1.0, 0.998, 1.0);
  const double closed =
      (std::pow(2.0, 1.998) - 2.0) / (0.998 * std::log(2.0));
  const CFResult r = cf_LI_marginal(alpha, 1.0, 2.0);
  CHECK(r.value.real() == doctest::Approx(std::exp(-closed)).epsilon(1e-10));
  CHECK(r.value.imag() == 0.0);
}

TEST_CASE("L_I joint: cancelling thetas reduce to an increment CF") {
  const auto alpha = AlphaFunction::affine(1.2, 0.3, 1.0);
  const double th = 1.7;
  const CFQuery q{{0.3, 0.8}, {th, -th}};
  const CFResult joint = cf_LI_joint(alpha, q);
  const CFResult inc = cf_LI_increment(alpha, 0.3, 0.8, th);
  CHECK(joint.value.real() ==
        doctest::Approx(inc.value.real()).epsilon(1e-12));
}

TEST_CASE("L_I joint: constant alpha equals the stable joint CF") {
  const auto alpha = AlphaFunction::constant(1.3, 1.0);
  const double t1 = 0.4, t2 = 0.9, th1 = 1.1, th2 = -0.6;
  const CFResult joint = cf_LI_joint(alpha, CFQuery{{t1, t2}, {th1, th2}});
  const double expected =
      std::exp(-t1 * std::pow(std::abs(th1 + th2), 1.3) -
               (t2 - t1) * std::pow(std::abs(th2), 1.3));
  CHECK(joint.value.real() == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("L_I marginal is monotone non-increasing in t") {
  const auto alpha = AlphaFunction::affine(1.2, 0.3, 1.0);
  double prev = 1.0;
  for (int i = 0; i <= 50; ++i) {
    const double t = i / 50.0;
    const double v = cf_LI_marginal(alpha, t, 2.0).value.real();
    CHECK(v <= prev + 1e-14);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
    prev = v;
  }
}

TEST_CASE("query validation") {
  const auto alpha = AlphaFunction::constant(1.5, 1.0);
  CHECK_THROWS_AS(cf_LI_joint(alpha, CFQuery{{}, {}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(cf_LI_joint(alpha, CFQuery{{0.5}, {1.0, 2.0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(cf_LI_joint(alpha, CFQuery{{1.5}, {1.0}}),
                  std::invalid_argument);
}

TEST_CASE("oscillatory engine: single group closed form") {
  double err = 0.0;
  const std::vector<double> b = {0.8}, a = {1.4};
  const double v = detail::one_minus_cos_power_integral(b, a, &err);
  CHECK(v == doctest::Approx(std::pow(0.8, 1.4) / c_alpha(1.4))
                 .epsilon(1e-12));
}

TEST_CASE("oscillatory engine vs brute force, two and three groups") {
  struct Case {
    std::vector<double> b, a;
  };
  const std::vector<Case> cases = {
      {{0.9, 0.5}, {1.3, 1.6}},
      {{1.2, -0.7}, {1.25, 1.55}},
      {{-0.4, 0.9}, {1.7, 1.2}},
      {{0.6, 0.5, -0.8}, {1.2, 1.45, 1.7}},
      {{2.4, 1.9}, {1.35, 1.4}},
      {{1.0, -0.98}, {1.40, 1.41}},  // near-equal exponents, near-cancelling
  };
  for (const auto& c : cases) {
    double err = 0.0;
    const double engine =
        detail::one_minus_cos_power_integral(c.b, c.a, &err);
    const double brute = brute_force_inner(c.b, c.a, 1e-7);
    CHECK(engine == doctest::Approx(brute).epsilon(1e-5));
    CHECK(err <= 1e-6 * (1.0 + std::abs(engine)));
  }
}

TEST_CASE("L_F joint CF: trivial and marginal identities") {
  const auto alpha = AlphaFunction::affine(1.2, 0.3, 1.0);

  // zero thetas
  const CFResult one = cf_LF_joint(alpha, CFQuery{{0.5, 0.9}, {0.0, 0.0}});
  CHECK(one.value.real() == 1.0);

  // marginal equals the stable CF evaluated at alpha(t)
  for (double th : {0.5, 1.0, 2.0, 3.0}) {
    const CFResult r = cf_LF_joint(alpha, CFQuery{{0.7}, {th}});
    const double target =
        std::exp(-0.7 * std::pow(th, alpha(0.7)));
    CHECK(std::abs(r.value.real() - target) <= 1e-6);
    CHECK(r.value.imag() == 0.0);
    CHECK(r.value.real() <= 1.0);
    CHECK(r.value.real() >= 0.0);
  }
}

TEST_CASE("L_F joint CF: constant alpha collapses onto L_I") {
  const auto alpha = AlphaFunction::constant(1.35, 1.0);
  const std::vector<CFQuery> queries = {
      {{0.4, 0.9}, {1.1, -0.6}},
      {{0.25, 0.5, 1.0}, {0.5, 0.5, -1.5}},
      {{1.0}, {2.5}},
  };
  for (const auto& q : queries) {
    const double lf = cf_LF_joint(alpha, q).value.real();
    const double li = cf_LI_joint(alpha, q).value.real();
    CHECK(std::abs(lf - li) <= 1e-8);
  }
}

TEST_CASE("L_F joint CF: affine alpha, two times, engine vs brute force") {
  const auto alpha = AlphaFunction::affine(1.2, 0.3, 1.0);
  const double t1 = 0.4, t2 = 0.9, th1 = 1.3, th2 = -0.8;
  const CFResult r = cf_LF_joint(alpha, CFQuery{{t1, t2}, {th1, th2}});

  // exponent rebuilt from the brute-force inner integrals
  const double a1 = alpha(t1), a2 = alpha(t2);
  const double b1 = th1 * c_alpha_pow(a1), b2 = th2 * c_alpha_pow(a2);
  const double cell1 = brute_force_inner({b1, b2}, {a1, a2}, 1e-7);
  const double cell2 = brute_force_inner({b2}, {a2}, 1e-7);
  const double expected = std::exp(-(t1 * cell1 + (t2 - t1) * cell2));
  CHECK(r.value.real() == doctest::Approx(expected).epsilon(5e-4));
}

TEST_CASE("ecf: degenerate and single-sample cases") {
  std::vector<double> zeros(100, 0.0);
  for (double th : {-2.0, 0.0, 1.0}) {
    const CFResult r = ecf(zeros, th);
    CHECK(r.value.real() == doctest::Approx(1.0));
    CHECK(r.value.imag() == doctest::Approx(0.0));
  }

  const std::vector<double> single = {0.77};
  const CFResult r = ecf(single, 2.0);
  CHECK(r.value.real() == doctest::Approx(std::cos(2.0 * 0.77)));
  CHECK(r.value.imag() == doctest::Approx(std::sin(2.0 * 0.77)));
  CHECK(r.error_estimate == doctest::Approx(3.0));

  CHECK_THROWS_AS(ecf(std::vector<double>{}, 1.0), std::invalid_argument);
}

TEST_CASE("ecf of oracle stable samples matches the stable CF") {
  const int m = 100000;
  RandomStream rng(7, Stream::kOracle);
  std::vector<double> x(m);
  for (int i = 0; i < m; ++i) x[i] = sample_stable_oracle(1.7, 1.0, rng);
  const CFResult r = ecf(x, 1.0);
  CHECK(std::abs(r.value.real() - std::exp(-1.0)) <= 0.01);
  CHECK(std::abs(r.value.imag()) <= 0.01);
}

TEST_CASE("cf_distance: self-consistency and mismatch detection") {
  std::vector<double> grid(21);
  for (int i = 0; i < 21; ++i) grid[i] = -3.0 + 0.3 * i;

  // degenerate: exact samples of the point mass at 0 vs its CF
  std::vector<double> zeros(1000, 0.0);
  auto unit_cf = [](double) { return std::complex<double>(1.0, 0.0); };
  CHECK(cf_distance(unit_cf, zeros, grid) == 0.0);

  // calibration: samples from the law itself stay within the band
  const int m = 100000;
  RandomStream rng(8, Stream::kOracle);
  std::vector<double> x(m);
  for (int i = 0; i < m; ++i) x[i] = sample_stable_oracle(1.2, 1.0, rng);
  auto cf12 = [](double th) {
    return std::complex<double>(std::exp(-std::pow(std::abs(th), 1.2)), 0.0);
  };
  CHECK(cf_distance(cf12, x, grid) <= 0.015);

  // mismatched exponent: the analytic gap on this grid peaks near 0.077,
  // well above the sampling noise
  auto cf18 = [](double th) {
    return std::complex<double>(std::exp(-std::pow(std::abs(th), 1.8)), 0.0);
  };
  double analytic_gap = 0.0;
  for (double th : grid)
    analytic_gap = std::max(analytic_gap,
                            std::abs(cf12(th).real() - cf18(th).real()));
  CHECK(analytic_gap > 0.06);
  CHECK(cf_distance(cf18, x, grid) > 0.06);

  CHECK_THROWS_AS(cf_distance(cf12, x, std::vector<double>{}),
                  std::invalid_argument);
}

TEST_CASE("increment CF matches simulation (affine alpha)") {
  const auto alpha = AlphaFunction::affine(1.2, 0.3, 1.0);
  const CAlphaTable table(1.2, 1.5);
  const TimeGrid grid({0.3, 0.8});
  const int m = 5000, n = 1500;
  std::vector<double> inc(m);
  for (int i = 0; i < m; ++i) {
    const SeriesDraw d = draw_series(40000 + i, n, 1.0);
    const PathSample p = simulate_LI_fkl(d, alpha, grid, table);
    inc[i] = p.values[1] - p.values[0];
  }
  for (double th : {1.0, 2.0}) {
    const CFResult emp = ecf(inc, th);
    const CFResult target = cf_LI_increment(alpha, 0.3, 0.8, th);
    CHECK(std::abs(emp.value - target.value) <= 0.05);
  }
}

TEST_CASE("independence check: L_I passes, preconditions enforced") {
  const auto alpha = AlphaFunction::affine(1.2, 0.3, 1.0);
  const CAlphaTable table(1.2, 1.5);
  const std::vector<std::pair<double, double>> incs = {{0.0, 0.5},
                                                       {0.5, 1.0}};
  const IndependenceReport rep = increment_independence_check(
      alpha, ProcessKind::kIndependent, incs, 5000, 77, 1500, table, 2);
  CHECK(rep.pass);
  CHECK(rep.sup_gap <= rep.threshold);

  CHECK_THROWS_AS(
      increment_independence_check(alpha, ProcessKind::kIndependent,
                                   {{0.0, 1.0}, {0.0, 0.5}}, 100, 1, 50,
                                   table),
      std::invalid_argument);
  CHECK_THROWS_AS(
      increment_independence_check(alpha, ProcessKind::kIndependent,
                                   {{0.0, 0.5}}, 100, 1, 50, table),
      std::invalid_argument);
}

TEST_CASE("independence check: constant-alpha field process passes") {
  const auto alpha = AlphaFunction::constant(1.4, 1.0);
  const CAlphaTable table(1.4, 1.4);
  const std::vector<std::pair<double, double>> incs = {{0.0, 0.5},
                                                       {0.5, 1.0}};
  const IndependenceReport rep = increment_independence_check(
      alpha, ProcessKind::kFieldBased, incs, 5000, 79, 1500, table, 2);
  CHECK(rep.pass);
}

}  // TEST_SUITE
