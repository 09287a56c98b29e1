#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace multistable {

struct CheckResult {
  std::string name;
  double statistic = 0.0;
  double threshold = 0.0;
  bool pass = false;
  std::string detail;  // human-readable summary of the sub-results
};

struct CheckParams {
  std::uint64_t seed = 20240611;
  int threads = 1;
};

// The individual checks of the validation suite. The default arguments are
// the full-scale settings used by the acceptance runner; the CLI `check`
// subcommand reuses the same functions with config-driven scales.
CheckResult check_c_alpha(const CheckParams& p);
// `analytic_alpha_shift` displaces the alpha used by the analytic side; a
// nonzero shift is the deliberate-mismatch test mode and must fail.
CheckResult check_li_marginal_cf(const CheckParams& p, int n_terms = 5000,
                                 int n_paths = 20000, double tol = 0.03,
                                 double analytic_alpha_shift = 0.0);
CheckResult check_representation_equivalence(const CheckParams& p,
                                             int n_terms = 5000,
                                             int n_samples = 10000,
                                             double min_p = 0.01);
CheckResult check_lf_fixed_time_stable(const CheckParams& p,
                                       int n_terms = 20000,
                                       int n_samples = 10000,
                                       double min_p = 0.01);
CheckResult check_increment_independence(const CheckParams& p,
                                         int n_paths_li = 20000,
                                         int n_paths_lf = 100000,
                                         int n_terms = 5000);
CheckResult check_decomposition_bitexact(const CheckParams& p,
                                         int n_draws = 100,
                                         int n_terms = 1000);
CheckResult check_martingale_mean(const CheckParams& p, int n_paths = 20000,
                                  int n_terms = 2000);
CheckResult check_field_decomposition(const CheckParams& p, int n_draws = 20,
                                      int n_terms = 10000,
                                      int grid_points = 1000);
CheckResult check_total_variation_refinement(const CheckParams& p,
                                             int n_draws = 5,
                                             int n_terms = 10000);
CheckResult check_tangency(const CheckParams& p, int n_paths = 20000,
                           int n_terms = 5000);
CheckResult check_integrator_probe(const CheckParams& p, int n_probes = 1000,
                                   int n_terms = 4096);
CheckResult check_partial_sum_decay(const CheckParams& p, int n_draws = 20);

// All twelve, in order.
std::vector<CheckResult> run_acceptance_suite(const CheckParams& p);

}  // namespace multistable
