#pragma once

#include <cstdint>
#include <vector>

#include "multistable/alpha.hpp"
#include "multistable/series.hpp"

namespace multistable {

// Result of probing whether rescaled increments around u approach the stable
// motion with exponent alpha(u) as the scale r shrinks.
struct TangentReport {
  ProcessKind process = ProcessKind::kIndependent;
  double u = 0.0;
  std::vector<double> r_values;   // strictly decreasing
  std::vector<double> distances;  // CF sup-distance per r
  double band = 0.0;              // 3/sqrt(M) Monte Carlo band
  bool pass = false;              // distances non-increasing
};

// For each scale r, simulates n_paths rescaled increment vectors
//   Z_p = (Y(u + r t_p) - Y(u)) / r^{1/alpha(u)}
// at the probe times and measures the sup distance between their empirical
// joint CF and the joint CF of the stable motion with exponent alpha(u).
// The same path seeds are reused across scales, so the r-comparison is a
// common-random-numbers comparison.
TangentReport tangent_check(ProcessKind kind, const AlphaFunction& alpha,
                            double u, std::vector<double> r_values,
                            std::vector<double> probe_times, int n_paths,
                            std::uint64_t seed, int n_terms,
                            const CAlphaTable& table, int n_threads = 1);

// Analytic check for the independent-increments motion: the ratio of the
// rescaled-increment log-CF to its limit,
//   [ int_u^{u+rt} |theta r^{-1/alpha(u)}|^{alpha(s)} ds ] /
//   [ t |theta|^{alpha(u)} ],
// which tends to 1 as r -> 0.
double li_rescaled_logcf_ratio(const AlphaFunction& alpha, double u, double r,
                               double t, double theta);

}  // namespace multistable
