#include "multistable/stable.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "multistable/quadrature.hpp"

namespace multistable {

namespace {

constexpr double kPi = 3.141592653589793;

void check_u(double u) {
  if (!(u > 0.0 && u < 2.0))
    throw std::domain_error("c_alpha: u must lie in (0,2)");
}

}  // namespace

double digamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("digamma: x must be positive");
  double result = 0.0;
  while (x < 10.0) {
    result -= 1.0 / x;
    x += 1.0;
  }
  // Asymptotic series with Bernoulli coefficients.
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  result += std::log(x) - 0.5 * inv;
  result -= inv2 * (1.0 / 12.0 - inv2 * (1.0 / 120.0 - inv2 * (1.0 / 252.0 -
                    inv2 * (1.0 / 240.0 - inv2 * (1.0 / 132.0)))));
  return result;
}

double c_alpha(double u) {
  check_u(u);
  // 1 / (Gamma(1-u) cos(pi u/2)) rewritten through the reflection formula;
  // this form has no removable singularity at u = 1.
  return 2.0 * std::tgamma(u) * std::sin(0.5 * kPi * u) / kPi;
}

double ln_c_alpha(double u) {
  check_u(u);
  return std::log(2.0 / kPi) + std::lgamma(u) + std::log(std::sin(0.5 * kPi * u));
}

double ln_c_alpha_deriv(double u) {
  check_u(u);
  return digamma(u) + 0.5 * kPi / std::tan(0.5 * kPi * u);
}

double c_alpha_pow(double u) {
  return std::exp(ln_c_alpha(u) / u);
}

double sine_power_integral(double u, double* abs_err) {
  check_u(u);
  double err_total = 0.0;

  // Head [0, pi]: integrand ~ x^{1-u} at the origin, integrable but singular
  // for u > 1; tanh-sinh absorbs the endpoint.
  auto head_f = [u](double x) { return std::pow(x, -u) * std::sin(x); };
  QuadResult head = integrate_tanh_sinh(head_f, 0.0, kPi, 1e-13);
  err_total += head.error;

  // Tail: alternating half-period cells, |I_k| = int_{k pi}^{(k+1) pi}
  // x^{-u} |sin x| dx, accelerated.
  std::vector<double> cells;
  cells.reserve(40);
  for (int k = 1; k <= 40; ++k) {
    auto f = [u](double x) { return std::pow(x, -u) * std::abs(std::sin(x)); };
    QuadResult c = gk15_panel(f, k * kPi, (k + 1) * kPi);
    err_total += c.error;
    cells.push_back(c.value);
  }
  QuadResult tail = alternating_series(cells);
  err_total += tail.error;

  if (abs_err) *abs_err = err_total;
  return head.value - tail.value;
}

double c_alpha_by_quadrature(double u, double* abs_err) {
  double ierr = 0.0;
  const double s = sine_power_integral(u, &ierr);
  if (abs_err) *abs_err = ierr / (s * s);
  return 1.0 / s;
}

double one_minus_cos_kernel_integral(double alpha, double* abs_err) {
  check_u(alpha);
  double err_total = 0.0;

  // Head [0, pi]: (1 - cos z) ~ z^2/2, so the integrand ~ z^{1-alpha}/2.
  auto head_f = [alpha](double z) {
    const double s = std::sin(0.5 * z);
    return 2.0 * s * s * std::pow(z, -alpha - 1.0);
  };
  QuadResult head = integrate_tanh_sinh(head_f, 0.0, kPi, 1e-13);
  err_total += head.error;

  // Tail: int_pi^inf z^{-alpha-1} dz exactly, minus the cosine part summed
  // over alternating half-period cells (zeros of cos at pi/2 + k pi).
  const double pure = std::pow(kPi, -alpha) / alpha;

  std::vector<double> cells;
  auto cos_f = [alpha](double z) {
    return std::cos(z) * std::pow(z, -alpha - 1.0);
  };
  // First (partial) cell [pi, 3pi/2] where cos <= 0.
  QuadResult first = gk15_panel(cos_f, kPi, 1.5 * kPi);
  err_total += first.error;
  for (int k = 1; k <= 40; ++k) {
    const double a = (0.5 + k) * kPi;
    const double b = (1.5 + k) * kPi;
    auto f = [alpha](double z) {
      return std::abs(std::cos(z)) * std::pow(z, -alpha - 1.0);
    };
    QuadResult c = gk15_panel(f, a, b);
    err_total += c.error;
    cells.push_back(c.value);
  }
  QuadResult rest = alternating_series(cells);
  err_total += rest.error;
  // cos is positive on [3pi/2 + 2k pi, 5pi/2 + 2k pi], so the cell signs
  // start positive after the first partial cell.
  const double cos_part = first.value + rest.value;

  if (abs_err) *abs_err = alpha * err_total;
  return alpha * (head.value + pure - cos_part);
}

double stable_cf(const StableParams& p, double theta) {
  if (!(p.alpha > 0.0 && p.alpha < 2.0))
    throw std::domain_error("stable_cf: alpha must lie in (0,2)");
  if (!(p.scale_time >= 0.0))
    throw std::domain_error("stable_cf: scale time must be nonnegative");
  if (theta == 0.0 || p.scale_time == 0.0) return 1.0;
  return std::exp(-p.scale_time * std::pow(std::abs(theta), p.alpha));
}

double sample_stable_oracle(double alpha, double scale_time,
                            RandomStream& rng) {
  if (!(alpha > 0.0 && alpha < 2.0))
    throw std::domain_error("stable oracle: alpha must lie in (0,2)");
  if (!(scale_time > 0.0))
    throw std::domain_error("stable oracle: scale time must be positive");

  const double u = kPi * (rng.uniform01() - 0.5);  // uniform on (-pi/2, pi/2)
  if (alpha == 1.0) {
    rng.exponential();  // keep the stream layout identical across branches
    return scale_time * std::tan(u);
  }
  const double w = rng.exponential();
  const double x = std::sin(alpha * u) /
                       std::pow(std::cos(u), 1.0 / alpha) *
                   std::pow(std::cos(u - alpha * u) / w, (1.0 - alpha) / alpha);
  return std::pow(scale_time, 1.0 / alpha) * x;
}

CAlphaTable::CAlphaTable(double lo, double hi, int points) {
  if (!(lo > 0.0 && hi < 2.0 && lo <= hi))
    throw std::domain_error("CAlphaTable: range must lie inside (0,2)");
  if (points < 8) points = 8;
  // Pad so the 4-point stencil stays valid at the range edges and a
  // degenerate (constant alpha) range still yields a usable grid.
  const double pad = std::max(0.01, (hi - lo) * 1e-3);
  lo_ = std::max(lo - pad, 0.5 * lo);
  hi_ = std::min(hi + pad, 1.0 + 0.5 * hi);
  step_ = (hi_ - lo_) / (points - 1);
  ln_c_.resize(points);
  for (int i = 0; i < points; ++i)
    ln_c_[i] = ln_c_alpha(lo_ + i * step_);
}

double CAlphaTable::ln_c(double u) const {
  if (!(u >= lo_ && u <= hi_))
    throw std::domain_error("CAlphaTable: u outside tabulated range");
  const int n = static_cast<int>(ln_c_.size());
  double pos = (u - lo_) / step_;
  int i = static_cast<int>(pos);
  i = std::clamp(i, 1, n - 3);
  const double s = pos - i;
  // 4-point Lagrange through nodes i-1..i+2.
  const double y0 = ln_c_[i - 1], y1 = ln_c_[i], y2 = ln_c_[i + 1],
               y3 = ln_c_[i + 2];
  const double a = s + 1.0, b = s, c = s - 1.0, d = s - 2.0;
  return -y0 * b * c * d / 6.0 + y1 * a * c * d / 2.0 -
         y2 * a * b * d / 2.0 + y3 * a * b * c / 6.0;
}

}  // namespace multistable
