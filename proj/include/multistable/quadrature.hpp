#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace multistable {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;  // absolute error estimate

  QuadResult& operator+=(const QuadResult& o) {
    value += o.value;
    error += o.error;
    return *this;
  }
};

// Thrown when an integral cannot be resolved to the requested tolerance.
// Carries the partial value and its estimate so callers can still report.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double partial, double estimate)
      : std::runtime_error(what), partial_value(partial),
        error_estimate(estimate) {}
  double partial_value;
  double error_estimate;
};

// Adaptive Gauss-Kronrod 7/15 on [a,b] to absolute tolerance abs_tol.
QuadResult integrate_gk(const std::function<double(double)>& f, double a,
                        double b, double abs_tol, int max_depth = 18);

// Single (non-adaptive) Gauss-Kronrod 7/15 panel; error from |K15 - G7|.
QuadResult gk15_panel(const std::function<double(double)>& f, double a,
                      double b);

// Fixed-order Gauss-Legendre panel (16 nodes), no error estimate.
double gauss16_panel(const std::function<double(double)>& f, double a,
                     double b);

// tanh-sinh quadrature on [a,b]. Robust to integrable algebraic endpoint
// singularities; precision is preserved at the a endpoint when a == 0.
QuadResult integrate_tanh_sinh(const std::function<double(double)>& f,
                               double a, double b, double abs_tol);

// Sum of the alternating series sum_{k>=0} (-1)^k a_k, a_k >= 0, given a
// prefix of terms. Cohen-Villegas-Zagier acceleration, with the difference
// between the n-term and (n-2)-term estimates as the error measure.
QuadResult alternating_series(const std::vector<double>& terms);

}  // namespace multistable
