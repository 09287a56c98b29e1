#pragma once

#include <string>
#include <utility>
#include <vector>

namespace multistable {

// Time-varying stability index alpha : [0,T] -> [c,d] subset of (0,2), C^1.
// Immutable after construction; safe to share across threads.
//
// Built-in kinds:
//   constant    alpha(t) = a0
//   affine      alpha(t) = a0 + a1*t
//   sinusoidal  alpha(t) = a0 + a1*sin(2*pi*freq*t + phase)
//   table       C^1 monotone-preserving cubic (Fritsch-Carlson) through knots
//
// Construction verifies that the exact range over [0,T] lies inside the
// declared bounds (c,d) and that 0 < c <= d < 2 strictly. For the built-in
// kinds the range is computed rigorously (endpoints plus interior critical
// points); table interpolation never overshoots the knot values, so the data
// range bounds the function range.
class AlphaFunction {
 public:
  enum class Kind { kConstant, kAffine, kSinusoidal, kTable };

  static AlphaFunction constant(double a0, double domain_end);
  static AlphaFunction affine(double a0, double a1, double domain_end);
  static AlphaFunction sinusoidal(double a0, double a1, double freq,
                                  double phase, double domain_end);
  static AlphaFunction from_table(std::vector<double> knots,
                                  std::vector<double> values);

  // Optionally widen the declared bounds (they must still contain the range
  // and stay strictly inside (0,2)).
  void declare_bounds(double c, double d);

  double operator()(double t) const;
  double deriv(double t) const;

  Kind kind() const { return kind_; }
  double domain_end() const { return domain_end_; }
  double lower_bound() const { return c_; }
  double upper_bound() const { return d_; }
  std::pair<double, double> bounds() const { return {c_, d_}; }

 private:
  AlphaFunction(Kind kind, std::vector<double> params, double domain_end);

  void check_domain(double t) const;
  void compute_exact_range();

  Kind kind_;
  std::vector<double> params_;
  double domain_end_;
  double c_ = 0.0, d_ = 0.0;

  // table kind
  std::vector<double> knots_, values_, slopes_;
};

std::string to_string(AlphaFunction::Kind kind);

}  // namespace multistable
