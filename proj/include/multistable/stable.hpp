#pragma once

#include <utility>
#include <vector>

#include "multistable/rng.hpp"

namespace multistable {

// Normalization constant of the series representations,
//   C_u = ( integral_0^inf x^{-u} sin(x) dx )^{-1},  u in (0,2).
//
// Two independent routes are provided:
//  * c_alpha()               closed form  C_u = 2*Gamma(u)*sin(pi*u/2)/pi,
//                            obtained from the integral by parts/reflection;
//                            regular across u = 1 where C_1 = 2/pi.
//  * c_alpha_by_quadrature() direct evaluation of the oscillatory integral
//                            (half-period cells + series acceleration).
// The closed form is the production path; the quadrature is the oracle the
// closed form is validated against.

double c_alpha(double u);
double c_alpha_by_quadrature(double u, double* abs_err = nullptr);

// integral_0^inf x^{-u} sin(x) dx by quadrature (the reciprocal of C_u).
double sine_power_integral(double u, double* abs_err = nullptr);

// log C_u and d(log C_u)/du = psi(u) + (pi/2)*cot(pi*u/2).
double ln_c_alpha(double u);
double ln_c_alpha_deriv(double u);

// C_u^{1/u}, the scale applied to every series term.
double c_alpha_pow(double u);

// alpha * integral_0^inf (1 - cos z) z^{-alpha-1} dz, which must equal 1/C_alpha.
double one_minus_cos_kernel_integral(double alpha, double* abs_err = nullptr);

// Digamma function for positive arguments (asymptotic series + recurrence).
double digamma(double x);

struct StableParams {
  double alpha;       // in (0,2)
  double scale_time;  // t >= 0; the CF is exp(-t |theta|^alpha)
};

// exp(-t |theta|^alpha), in (0,1].
double stable_cf(const StableParams& p, double theta);

// One draw of the symmetric alpha-stable law with CF exp(-t |theta|^alpha).
// Chambers-Mallows-Stuck transform; alpha == 1 takes the Cauchy branch.
double sample_stable_oracle(double alpha, double scale_time,
                            RandomStream& rng);

// Precomputed log C_u on a fine grid over [lo, hi] with local cubic
// interpolation, for the per-term evaluations inside simulation loops.
// Immutable once built; shareable across threads.
class CAlphaTable {
 public:
  CAlphaTable(double lo, double hi, int points = 8192);

  double ln_c(double u) const;
  // (ln C_u) / u, the exponent multiplier used per series term.
  double ln_c_over_u(double u) const { return ln_c(u) / u; }

  std::pair<double, double> range() const { return {lo_, hi_}; }

 private:
  double lo_, hi_, step_;
  std::vector<double> ln_c_;
};

}  // namespace multistable
