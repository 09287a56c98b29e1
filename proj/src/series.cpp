#include "multistable/series.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "multistable/rng.hpp"

namespace multistable {

namespace {

// Per-term value C_a^{1/a} (Gamma/T)^{-1/a}, evaluated as one exponential so
// the independent-increments and field-based paths produce bit-identical
// terms whenever their exponents coincide.
inline double term_value(double ln_c, double a, double ln_gamma_over_t) {
  return std::exp((ln_c - ln_gamma_over_t) / a);
}

void check_grid_in_domain(const TimeGrid& grid, const AlphaFunction& alpha) {
  if (!grid.points().empty() && grid.back() > alpha.domain_end())
    throw std::domain_error("grid extends past the alpha domain end");
}

void check_draw(const SeriesDraw& draw, const AlphaFunction& alpha) {
  if (draw.horizon != alpha.domain_end())
    throw std::domain_error("draw horizon differs from the alpha domain end");
}

}  // namespace

SeriesDraw draw_series(std::uint64_t seed, int n_terms, double horizon) {
  if (n_terms < 1) throw std::invalid_argument("draw_series: need n >= 1");
  if (!(horizon > 0.0)) throw std::invalid_argument("draw_series: need T > 0");

  SeriesDraw d;
  d.seed = seed;
  d.n_terms = n_terms;
  d.horizon = horizon;
  d.gamma_arrivals.resize(n_terms);
  d.locations.resize(n_terms);
  d.signs.resize(n_terms);

  RandomStream gamma(seed, Stream::kGamma);
  RandomStream loc(seed, Stream::kLocation);
  RandomStream sign(seed, Stream::kSign);

  double acc = 0.0;
  for (int i = 0; i < n_terms; ++i) {
    acc += gamma.exponential();
    d.gamma_arrivals[i] = acc;
    d.locations[i] = horizon * loc.uniform01();
    d.signs[i] = sign.rademacher();
  }
  return d;
}

TimeGrid::TimeGrid(std::vector<double> points) : points_(std::move(points)) {
  if (points_.empty()) throw std::invalid_argument("TimeGrid: empty");
  if (points_.front() < 0.0)
    throw std::invalid_argument("TimeGrid: points must be nonnegative");
  for (std::size_t i = 1; i < points_.size(); ++i)
    if (!(points_[i] > points_[i - 1]))
      throw std::invalid_argument("TimeGrid: points must strictly increase");
}

TimeGrid TimeGrid::uniform(int n_points, double horizon) {
  if (n_points < 2) throw std::invalid_argument("TimeGrid: need >= 2 points");
  std::vector<double> pts(n_points);
  for (int i = 0; i < n_points; ++i)
    pts[i] = horizon * static_cast<double>(i) / (n_points - 1);
  pts.back() = horizon;
  return TimeGrid(std::move(pts));
}

std::string to_string(ProcessKind kind) {
  switch (kind) {
    case ProcessKind::kIndependent: return "independent";
    case ProcessKind::kFieldBased: return "field_based";
    case ProcessKind::kGeneral: return "general";
  }
  return "?";
}

Kernel Kernel::indicator() {
  Kernel k;
  k.f = [](double t, double x) { return x <= t ? 1.0 : 0.0; };
  k.l_inf = 1.0;
  k.variation = [](double) { return 1.0; };
  return k;
}

Kernel Kernel::min_kernel() {
  Kernel k;
  k.f = [](double t, double x) { return std::min(t, x); };
  k.l_inf = std::numeric_limits<double>::infinity();  // set by caller to T
  k.variation = [](double x) { return x; };
  return k;
}

Kernel Kernel::zero() {
  Kernel k;
  k.f = [](double, double) { return 0.0; };
  k.l_inf = 0.0;
  k.variation = [](double) { return 0.0; };
  return k;
}

TermAmplitudes li_term_amplitudes(const SeriesDraw& draw,
                                  const AlphaFunction& alpha,
                                  const CAlphaTable& table) {
  const int n = draw.n_terms;
  TermAmplitudes out;
  out.amplitude.resize(n);
  const double ln_t = std::log(draw.horizon);
  std::size_t head = 0;
  for (int i = 0; i < n; ++i) {
    const double g = draw.gamma_arrivals[i];
    if (g < 1.0) head = static_cast<std::size_t>(i) + 1;
    const double a = alpha(draw.locations[i]);
    const double ln_gt = std::log(g) - ln_t;
    out.amplitude[i] = draw.signs[i] * term_value(table.ln_c(a), a, ln_gt);
  }
  out.head_count = head;
  return out;
}

// Canonical per-point summation: terms are folded in index order with the
// fold split at the first arrival >= 1 and the two partial sums added once.
// The magnitude decomposition returns exactly these two folds, which is what
// makes its reconstruction bit-exact.
namespace {

PathSample sum_indicator_path(const SeriesDraw& draw, const TimeGrid& grid,
                              const TermAmplitudes& amps, ProcessKind kind) {
  PathSample out{grid, {}, kind, draw.seed, draw.n_terms};
  out.values.reserve(grid.size());
  const std::size_t hc = amps.head_count;
  const std::size_t n = amps.amplitude.size();
  for (std::size_t gi = 0; gi < grid.size(); ++gi) {
    const double t = grid[gi];
    double head = 0.0, tail = 0.0;
    for (std::size_t i = 0; i < hc; ++i)
      if (draw.locations[i] <= t) head += amps.amplitude[i];
    for (std::size_t i = hc; i < n; ++i)
      if (draw.locations[i] <= t) tail += amps.amplitude[i];
    out.values.push_back(head + tail);
  }
  return out;
}

}  // namespace

PathSample simulate_LI_fkl(const SeriesDraw& draw, const AlphaFunction& alpha,
                           const TimeGrid& grid, const CAlphaTable& table) {
  check_draw(draw, alpha);
  check_grid_in_domain(grid, alpha);
  const TermAmplitudes amps = li_term_amplitudes(draw, alpha, table);
  return sum_indicator_path(draw, grid, amps, ProcessKind::kIndependent);
}

PathSample simulate_LI_poisson(std::uint64_t seed, const AlphaFunction& alpha,
                               const TimeGrid& grid, int n_terms,
                               const CAlphaTable& table) {
  check_grid_in_domain(grid, alpha);
  if (n_terms < 0) throw std::invalid_argument("n_terms must be >= 0");

  SeriesDraw d;
  d.seed = seed;
  d.n_terms = n_terms;
  d.horizon = alpha.domain_end();
  d.gamma_arrivals.resize(n_terms);
  d.locations.resize(n_terms);
  d.signs.resize(n_terms);

  RandomStream mag(seed, Stream::kPoissonGamma);
  RandomStream loc(seed, Stream::kPoissonLocation);
  RandomStream sign(seed, Stream::kPoissonSign);
  double acc = 0.0;
  for (int i = 0; i < n_terms; ++i) {
    acc += mag.exponential();
    d.gamma_arrivals[i] = acc;
    d.locations[i] = d.horizon * loc.uniform01();
    d.signs[i] = sign.rademacher();
  }
  if (n_terms == 0) {
    PathSample out{grid, std::vector<double>(grid.size(), 0.0),
                   ProcessKind::kIndependent, seed, 0};
    return out;
  }
  const TermAmplitudes amps = li_term_amplitudes(d, alpha, table);
  return sum_indicator_path(d, grid, amps, ProcessKind::kIndependent);
}

namespace {

PathSample field_path(const SeriesDraw& draw, const AlphaFunction& alpha,
                      const Kernel* kernel, const TimeGrid& grid,
                      const CAlphaTable& table, ProcessKind kind) {
  const int n = draw.n_terms;
  std::vector<double> ln_gt(n);
  const double ln_t = std::log(draw.horizon);
  std::size_t hc = 0;
  for (int i = 0; i < n; ++i) {
    const double g = draw.gamma_arrivals[i];
    if (g < 1.0) hc = static_cast<std::size_t>(i) + 1;
    ln_gt[i] = std::log(g) - ln_t;
  }

  PathSample out{grid, {}, kind, draw.seed, draw.n_terms};
  out.values.reserve(grid.size());
  for (std::size_t gi = 0; gi < grid.size(); ++gi) {
    const double t = grid[gi];
    const double a = alpha(t);
    const double ln_c = table.ln_c(a);
    double head = 0.0, tail = 0.0;
    for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) {
      double w;
      if (kernel) {
        const double fv = kernel->f(t, draw.locations[i]);
        if (std::abs(fv) > kernel->l_inf)
          throw std::runtime_error("kernel exceeds its declared sup bound");
        if (fv == 0.0) continue;
        w = draw.signs[i] * term_value(ln_c, a, ln_gt[i]) * fv;
      } else {
        if (!(draw.locations[i] <= t)) continue;
        w = draw.signs[i] * term_value(ln_c, a, ln_gt[i]);
      }
      (i < hc ? head : tail) += w;
    }
    out.values.push_back(head + tail);
  }
  return out;
}

}  // namespace

PathSample simulate_LF_fkl(const SeriesDraw& draw, const AlphaFunction& alpha,
                           const TimeGrid& grid, const CAlphaTable& table) {
  check_draw(draw, alpha);
  check_grid_in_domain(grid, alpha);
  return field_path(draw, alpha, nullptr, grid, table,
                    ProcessKind::kFieldBased);
}

PathSample simulate_general_fkl(const SeriesDraw& draw,
                                const AlphaFunction& alpha, const Kernel& k,
                                const TimeGrid& grid,
                                const CAlphaTable& table) {
  check_draw(draw, alpha);
  check_grid_in_domain(grid, alpha);
  if (!k.f) throw std::invalid_argument("general process: kernel not set");
  return field_path(draw, alpha, &k, grid, table, ProcessKind::kGeneral);
}

ConvergenceReport partial_sum_convergence(const SeriesDraw& draw,
                                          const AlphaFunction& alpha,
                                          const std::vector<int>& n_list,
                                          const TimeGrid& grid) {
  if (n_list.empty())
    throw std::invalid_argument("partial_sum_convergence: empty n list");
  for (std::size_t i = 1; i < n_list.size(); ++i)
    if (n_list[i] <= n_list[i - 1])
      throw std::invalid_argument("partial_sum_convergence: n must increase");
  if (2 * n_list.back() > draw.n_terms)
    throw std::invalid_argument(
        "partial_sum_convergence: draw too short for 2*max(n)");
  check_grid_in_domain(grid, alpha);

  ConvergenceReport rep;
  rep.n_values = n_list;
  rep.gap_unit_weight.assign(n_list.size(), 0.0);
  rep.gap_log_weight.assign(n_list.size(), 0.0);

  std::vector<double> ln_gamma(draw.n_terms);
  for (int i = 0; i < draw.n_terms; ++i)
    ln_gamma[i] = std::log(draw.gamma_arrivals[i]);

  for (std::size_t gi = 0; gi < grid.size(); ++gi) {
    const double s = grid[gi];
    const double e = 1.0 / alpha(s);
    for (std::size_t k = 0; k < n_list.size(); ++k) {
      const int lo = n_list[k], hi = 2 * n_list[k];
      double block_unit = 0.0, block_log = 0.0;
      for (int i = lo; i < hi; ++i) {
        if (!(draw.locations[i] < s)) continue;
        const double w = draw.signs[i] * std::exp(-ln_gamma[i] * e);
        block_unit += w;
        block_log += w * ln_gamma[i];
      }
      rep.gap_unit_weight[k] =
          std::max(rep.gap_unit_weight[k], std::abs(block_unit));
      rep.gap_log_weight[k] =
          std::max(rep.gap_log_weight[k], std::abs(block_log));
    }
  }
  return rep;
}

}  // namespace multistable
