#include "multistable/alpha.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace multistable {

namespace {
constexpr double kTwoPi = 6.283185307179586;

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::domain_error(msg);
}
}  // namespace

AlphaFunction::AlphaFunction(Kind kind, std::vector<double> params,
                             double domain_end)
    : kind_(kind), params_(std::move(params)), domain_end_(domain_end) {
  require(domain_end_ > 0.0, "alpha: domain end T must be positive");
}

AlphaFunction AlphaFunction::constant(double a0, double domain_end) {
  AlphaFunction f(Kind::kConstant, {a0}, domain_end);
  f.compute_exact_range();
  return f;
}

AlphaFunction AlphaFunction::affine(double a0, double a1, double domain_end) {
  AlphaFunction f(Kind::kAffine, {a0, a1}, domain_end);
  f.compute_exact_range();
  return f;
}

AlphaFunction AlphaFunction::sinusoidal(double a0, double a1, double freq,
                                        double phase, double domain_end) {
  AlphaFunction f(Kind::kSinusoidal, {a0, a1, freq, phase}, domain_end);
  f.compute_exact_range();
  return f;
}

AlphaFunction AlphaFunction::from_table(std::vector<double> knots,
                                        std::vector<double> values) {
  require(knots.size() >= 2 && knots.size() == values.size(),
          "alpha table: need at least two (knot, value) pairs");
  require(knots.front() == 0.0, "alpha table: first knot must be t = 0");
  for (std::size_t i = 1; i < knots.size(); ++i)
    require(knots[i] > knots[i - 1], "alpha table: knots must increase");

  AlphaFunction f(Kind::kTable, {}, knots.back());
  f.knots_ = std::move(knots);
  f.values_ = std::move(values);

  // Fritsch-Carlson slopes: C^1, monotone-preserving, never overshoots the
  // data range.
  const std::size_t n = f.knots_.size();
  std::vector<double> h(n - 1), delta(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = f.knots_[i + 1] - f.knots_[i];
    delta[i] = (f.values_[i + 1] - f.values_[i]) / h[i];
  }
  f.slopes_.assign(n, 0.0);
  f.slopes_[0] = delta[0];
  f.slopes_[n - 1] = delta[n - 2];
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (delta[i - 1] * delta[i] <= 0.0) {
      f.slopes_[i] = 0.0;
    } else {
      const double w1 = 2.0 * h[i] + h[i - 1];
      const double w2 = h[i] + 2.0 * h[i - 1];
      f.slopes_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
    }
  }
  // Clamp endpoint slopes so no segment overshoots.
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (delta[i] == 0.0) {
      f.slopes_[i] = f.slopes_[i + 1] = 0.0;
    } else {
      const double a = f.slopes_[i] / delta[i];
      const double b = f.slopes_[i + 1] / delta[i];
      const double s = a * a + b * b;
      if (s > 9.0) {
        const double tau = 3.0 / std::sqrt(s);
        f.slopes_[i] = tau * a * delta[i];
        f.slopes_[i + 1] = tau * b * delta[i];
      }
    }
  }
  f.compute_exact_range();
  return f;
}

void AlphaFunction::compute_exact_range() {
  double lo = 0.0, hi = 0.0;
  switch (kind_) {
    case Kind::kConstant:
      lo = hi = params_[0];
      break;
    case Kind::kAffine: {
      const double v0 = params_[0];
      const double v1 = params_[0] + params_[1] * domain_end_;
      lo = std::min(v0, v1);
      hi = std::max(v0, v1);
      break;
    }
    case Kind::kSinusoidal: {
      const double a0 = params_[0], a1 = params_[1], freq = params_[2],
                   phase = params_[3];
      lo = hi = a0 + a1 * std::sin(phase);
      auto consider = [&](double t) {
        const double v = a0 + a1 * std::sin(kTwoPi * freq * t + phase);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      };
      consider(domain_end_);
      if (freq != 0.0) {
        // Interior critical points: 2*pi*f*t + phase = pi/2 + k*pi.
        const double pi = 3.141592653589793;
        const double w = kTwoPi * freq;
        auto t_of = [&](double k) { return (pi / 2 + k * pi - phase) / w; };
        double k0 = std::floor((phase - pi / 2) / pi);
        double k1 = std::ceil((w * domain_end_ + phase - pi / 2) / pi);
        if (k0 > k1) std::swap(k0, k1);
        for (double k = k0 - 1; k <= k1 + 1; k += 1.0) {
          const double t = t_of(k);
          if (t >= 0.0 && t <= domain_end_) consider(t);
        }
      }
      break;
    }
    case Kind::kTable: {
      lo = *std::min_element(values_.begin(), values_.end());
      hi = *std::max_element(values_.begin(), values_.end());
      break;
    }
  }
  require(lo > 0.0 && hi < 2.0,
          "alpha: range must stay strictly inside (0,2)");
  c_ = lo;
  d_ = hi;
}

void AlphaFunction::declare_bounds(double c, double d) {
  require(c > 0.0 && d < 2.0 && c <= d,
          "alpha: declared bounds must satisfy 0 < c <= d < 2");
  require(c <= c_ && d >= d_,
          "alpha: declared bounds must contain the exact range");
  c_ = c;
  d_ = d;
}

void AlphaFunction::check_domain(double t) const {
  if (!(t >= 0.0 && t <= domain_end_))
    throw std::domain_error("alpha: t outside [0,T]");
}

double AlphaFunction::operator()(double t) const {
  check_domain(t);
  switch (kind_) {
    case Kind::kConstant:
      return params_[0];
    case Kind::kAffine:
      return params_[0] + params_[1] * t;
    case Kind::kSinusoidal:
      return params_[0] +
             params_[1] * std::sin(kTwoPi * params_[2] * t + params_[3]);
    case Kind::kTable: {
      auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
      std::size_t i = (it == knots_.begin())
                          ? 0
                          : static_cast<std::size_t>(it - knots_.begin()) - 1;
      if (i + 1 >= knots_.size()) i = knots_.size() - 2;
      const double h = knots_[i + 1] - knots_[i];
      const double s = (t - knots_[i]) / h;
      const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
      const double h10 = s * (1 - s) * (1 - s);
      const double h01 = s * s * (3 - 2 * s);
      const double h11 = s * s * (s - 1);
      return h00 * values_[i] + h10 * h * slopes_[i] + h01 * values_[i + 1] +
             h11 * h * slopes_[i + 1];
    }
  }
  return 0.0;  // unreachable
}

double AlphaFunction::deriv(double t) const {
  check_domain(t);
  switch (kind_) {
    case Kind::kConstant:
      return 0.0;
    case Kind::kAffine:
      return params_[1];
    case Kind::kSinusoidal:
      return params_[1] * kTwoPi * params_[2] *
             std::cos(kTwoPi * params_[2] * t + params_[3]);
    case Kind::kTable: {
      auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
      std::size_t i = (it == knots_.begin())
                          ? 0
                          : static_cast<std::size_t>(it - knots_.begin()) - 1;
      if (i + 1 >= knots_.size()) i = knots_.size() - 2;
      const double h = knots_[i + 1] - knots_[i];
      const double s = (t - knots_[i]) / h;
      const double d00 = 6 * s * (s - 1) / h;
      const double d10 = (1 - s) * (1 - 3 * s);
      const double d01 = -d00;
      const double d11 = s * (3 * s - 2);
      return d00 * values_[i] + d10 * slopes_[i] + d01 * values_[i + 1] +
             d11 * slopes_[i + 1];
    }
  }
  return 0.0;  // unreachable
}

std::string to_string(AlphaFunction::Kind kind) {
  switch (kind) {
    case AlphaFunction::Kind::kConstant:
      return "constant";
    case AlphaFunction::Kind::kAffine:
      return "affine";
    case AlphaFunction::Kind::kSinusoidal:
      return "sinusoidal";
    case AlphaFunction::Kind::kTable:
      return "table";
  }
  return "?";
}

}  // namespace multistable
