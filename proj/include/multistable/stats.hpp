#pragma once

#include <span>
#include <vector>

namespace multistable {

struct KSResult {
  double statistic = 0.0;  // sup |F1 - F2|
  double p_value = 1.0;
};

// Two-sample Kolmogorov-Smirnov test with the asymptotic Kolmogorov
// distribution (Stephens' small-sample correction).
KSResult ks_two_sample(std::vector<double> a, std::vector<double> b);

// Survival function of the Kolmogorov distribution,
// Q(lambda) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 lambda^2).
double kolmogorov_sf(double lambda);

double mean(std::span<const double> x);
double variance(std::span<const double> x);  // unbiased
double std_error(std::span<const double> x);
double median(std::vector<double> x);
double quantile(std::vector<double> x, double q);

}  // namespace multistable
