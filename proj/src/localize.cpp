#include "multistable/localize.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "multistable/charfn.hpp"
#include "multistable/parallel.hpp"
#include "multistable/quadrature.hpp"
#include "multistable/stable.hpp"

namespace multistable {

namespace {

// Joint CF of the standard stable motion with exponent a at the given
// ordered times: exp(-sum_k (t_k - t_{k-1}) |theta_k + ... + theta_m|^a).
std::complex<double> stable_joint_cf(double a,
                                     const std::vector<double>& times,
                                     const std::vector<double>& thetas) {
  double exponent = 0.0;
  double prev = 0.0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    double s = 0.0;
    for (std::size_t j = k; j < times.size(); ++j) s += thetas[j];
    if (s != 0.0) exponent += (times[k] - prev) * std::pow(std::abs(s), a);
    prev = times[k];
  }
  return {std::exp(-exponent), 0.0};
}

}  // namespace

TangentReport tangent_check(ProcessKind kind, const AlphaFunction& alpha,
                            double u, std::vector<double> r_values,
                            std::vector<double> probe_times, int n_paths,
                            std::uint64_t seed, int n_terms,
                            const CAlphaTable& table, int n_threads) {
  if (!(u > 0.0 && u < alpha.domain_end()))
    throw std::invalid_argument("tangent check: u must lie inside (0,T)");
  if (r_values.empty() || probe_times.empty() || n_paths < 2)
    throw std::invalid_argument("tangent check: degenerate inputs");
  for (std::size_t i = 1; i < r_values.size(); ++i)
    if (!(r_values[i] < r_values[i - 1] && r_values[i] > 0.0))
      throw std::invalid_argument(
          "tangent check: scales must be positive and strictly decreasing");
  std::sort(probe_times.begin(), probe_times.end());
  if (!(probe_times.front() > 0.0))
    throw std::invalid_argument("tangent check: probe times must be > 0");
  const double t_top = probe_times.back();
  if (u + r_values.front() * t_top > alpha.domain_end())
    throw std::invalid_argument("tangent check: probes leave [0,T]");

  const double a_u = alpha(u);
  const std::size_t n_probe = probe_times.size();

  TangentReport rep;
  rep.process = kind;
  rep.u = u;
  rep.r_values = r_values;
  rep.band = 3.0 / std::sqrt(static_cast<double>(n_paths));

  // Joint theta grid: 21 points per axis for one or two probes, 7 beyond.
  const int g = n_probe <= 2 ? 21 : 7;
  std::vector<double> axis(g);
  for (int i = 0; i < g; ++i) axis[i] = -3.0 + 6.0 * i / (g - 1);

  for (double r : r_values) {
    std::vector<double> pts;
    pts.push_back(u);
    for (double t : probe_times) pts.push_back(u + r * t);
    const TimeGrid grid(pts);

    JointSamples z;
    z.dim = n_probe;
    z.data.assign(static_cast<std::size_t>(n_paths) * n_probe, 0.0);
    const double scale = std::pow(r, -1.0 / a_u);
    parallel_for(
        static_cast<std::size_t>(n_paths), n_threads, [&](std::size_t i) {
          const SeriesDraw d =
              draw_series(seed + i, n_terms, alpha.domain_end());
          const PathSample path = (kind == ProcessKind::kFieldBased)
                                      ? simulate_LF_fkl(d, alpha, grid, table)
                                      : simulate_LI_fkl(d, alpha, grid, table);
          for (std::size_t p = 0; p < n_probe; ++p)
            z.data[i * n_probe + p] =
                (path.values[p + 1] - path.values[0]) * scale;
        });

    // Sup CF distance over the joint grid.
    std::vector<int> idx(n_probe, 0);
    std::vector<double> theta(n_probe, 0.0);
    double sup = 0.0;
    for (;;) {
      for (std::size_t p = 0; p < n_probe; ++p) theta[p] = axis[idx[p]];
      const CFResult emp = ecf(z, theta);
      const std::complex<double> target =
          stable_joint_cf(a_u, probe_times, theta);
      sup = std::max(sup, std::abs(emp.value - target));
      std::size_t p = 0;
      while (p < n_probe && ++idx[p] == g) idx[p++] = 0;
      if (p == n_probe) break;
    }
    rep.distances.push_back(sup);
  }

  rep.pass = true;
  for (std::size_t i = 1; i < rep.distances.size(); ++i)
    if (rep.distances[i] > rep.distances[i - 1]) rep.pass = false;
  return rep;
}

double li_rescaled_logcf_ratio(const AlphaFunction& alpha, double u, double r,
                               double t, double theta) {
  if (!(r > 0.0 && t > 0.0 && theta != 0.0))
    throw std::invalid_argument("logcf ratio: need r > 0, t > 0, theta != 0");
  const double a_u = alpha(u);
  const double ln_scaled = std::log(std::abs(theta)) - std::log(r) / a_u;
  auto f = [&](double s) { return std::exp(alpha(s) * ln_scaled); };
  const double num = integrate_gk(f, u, u + r * t, 1e-13).value;
  const double den = t * std::pow(std::abs(theta), a_u);
  return num / den;
}

}  // namespace multistable
