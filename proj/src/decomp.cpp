#include "multistable/decomp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "multistable/quadrature.hpp"

namespace multistable {

std::string to_string(SplitRule rule) {
  switch (rule) {
    case SplitRule::kMagnitude: return "magnitude_split";
    case SplitRule::kAlternate: return "alternate_split";
    case SplitRule::kFieldDrift: return "field_drift";
  }
  return "?";
}

namespace {

// Folds the selected terms per grid point in index order, keeping the
// simulator's split at the first arrival >= 1, so that selected + rest
// reproduces the simulated path bit-for-bit whenever the selection is a
// union of whole fold parts.
PathSample masked_path(const SeriesDraw& draw, const TimeGrid& grid,
                       const TermAmplitudes& amps,
                       const std::vector<char>& selected, bool keep) {
  PathSample out{grid, {}, ProcessKind::kIndependent, draw.seed,
                 draw.n_terms};
  out.values.reserve(grid.size());
  const std::size_t hc = amps.head_count;
  const std::size_t n = amps.amplitude.size();
  for (std::size_t gi = 0; gi < grid.size(); ++gi) {
    const double t = grid[gi];
    double head = 0.0, tail = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if ((selected[i] != 0) != keep) continue;
      if (!(draw.locations[i] <= t)) continue;
      (i < hc ? head : tail) += amps.amplitude[i];
    }
    out.values.push_back(head + tail);
  }
  return out;
}

}  // namespace

DecompositionResult decompose_LI_magnitude(const SeriesDraw& draw,
                                           const AlphaFunction& alpha,
                                           const TimeGrid& grid,
                                           const CAlphaTable& table) {
  const TermAmplitudes amps = li_term_amplitudes(draw, alpha, table);
  std::vector<char> in_a(draw.n_terms, 0);
  for (int i = 0; i < draw.n_terms; ++i)
    in_a[i] = draw.gamma_arrivals[i] < 1.0 ? 1 : 0;
  DecompositionResult res;
  res.rule = SplitRule::kMagnitude;
  res.a_path = masked_path(draw, grid, amps, in_a, true);
  res.m_path = masked_path(draw, grid, amps, in_a, false);
  return res;
}

DecompositionResult decompose_LI_alternate(const SeriesDraw& draw,
                                           const AlphaFunction& alpha,
                                           const TimeGrid& grid,
                                           const CAlphaTable& table) {
  const TermAmplitudes amps = li_term_amplitudes(draw, alpha, table);
  std::vector<char> in_a(draw.n_terms, 0);
  for (int i = 0; i < draw.n_terms; ++i) {
    // alpha >= c bounds the candidates to i+1 < 1/c; ties go to the
    // martingale part.
    const double threshold = 1.0 / (i + 1.0);
    if (alpha(draw.locations[i]) < threshold) in_a[i] = 1;
  }
  DecompositionResult res;
  res.rule = SplitRule::kAlternate;
  res.a_path = masked_path(draw, grid, amps, in_a, true);
  res.m_path = masked_path(draw, grid, amps, in_a, false);
  return res;
}

double g_eval(double gamma_value, const AlphaFunction& alpha, double t) {
  if (!(gamma_value > 0.0))
    throw std::domain_error("g_eval: arrival value must be positive");
  const double a = alpha(t);
  return std::exp((ln_c_alpha(a) - std::log(gamma_value)) / a);
}

double g_deriv(double gamma_value, const AlphaFunction& alpha, double t) {
  if (!(gamma_value > 0.0))
    throw std::domain_error("g_deriv: arrival value must be positive");
  const double a = alpha(t);
  const double da = alpha.deriv(t);
  const double ln_c = ln_c_alpha(a);
  const double ln_g = std::log(gamma_value);
  const double g = std::exp((ln_c - ln_g) / a);
  return g * da * (ln_c_alpha_deriv(a) * a - ln_c + ln_g) / (a * a);
}

namespace {

// Series sums P = sum gamma_i e_i, Q = sum gamma_i x_i e_i with
// e_i = exp((lnC - x_i)/a), x_i = ln(Gamma_i/T), over one cell's active
// terms. Evaluated exactly at the cell midpoint exponent; nearby exponents
// use the first-order expansion in a (dP/da = ((L'a - lnC)P + Q)/a^2),
// which keeps one exp call per term per cell. Falls back to direct
// summation when the cell spans too much of the alpha range.
class CellSeries {
 public:
  CellSeries(const SeriesDraw& draw, const std::vector<double>& ln_gt,
             std::size_t active_count, const AlphaFunction& alpha,
             const CAlphaTable& table, double a_mid)
      : draw_(draw), ln_gt_(ln_gt), active_(active_count), alpha_(alpha),
        table_(table), a_mid_(a_mid) {
    const double ln_c = table_.ln_c(a_mid_);
    p_ = q_ = r_ = 0.0;
    max_abs_x_ = 0.0;
    for (std::size_t i = 0; i < active_; ++i) {
      const double x = ln_gt_[i];
      const double e = draw_.signs[i] * std::exp((ln_c - x) / a_mid_);
      p_ += e;
      q_ += e * x;
      r_ += e * x * x;
      max_abs_x_ = std::max(max_abs_x_, std::abs(x));
    }
    lp_ = ln_c_alpha_deriv(a_mid_);
    ln_c_mid_ = ln_c;
  }

  // D(s) = alpha'(s)/a^2 * ((L'(a) a - lnC_a) P(a) + Q(a)) at a = alpha(s).
  double drift_sum(double s) const {
    const double da = alpha_.deriv(s);
    if (da == 0.0) return 0.0;
    const double a = alpha_(s);
    const double delta = a - a_mid_;
    double p = p_, q = q_;
    double ln_c = ln_c_mid_, lp = lp_;
    if (std::abs(delta) * (max_abs_x_ + std::abs(ln_c_mid_) + 2.0) /
            (a_mid_ * a_mid_) >
        1e-3) {
      // Wide cell: evaluate directly.
      ln_c = table_.ln_c(a);
      lp = ln_c_alpha_deriv(a);
      p = q = 0.0;
      for (std::size_t i = 0; i < active_; ++i) {
        const double x = ln_gt_[i];
        const double e = draw_.signs[i] * std::exp((ln_c - x) / a);
        p += e;
        q += e * x;
      }
    } else if (delta != 0.0) {
      const double a2 = a_mid_ * a_mid_;
      const double k = (lp_ * a_mid_ - ln_c_mid_);
      p = p_ + delta * (k * p_ + q_) / a2;
      q = q_ + delta * (k * q_ + r_) / a2;
      ln_c = ln_c_mid_ + delta * lp_;
      lp = lp_;  // second-order in the final product, negligible
    }
    return da * ((lp * a - ln_c) * p + q) / (a * a);
  }

 private:
  const SeriesDraw& draw_;
  const std::vector<double>& ln_gt_;
  std::size_t active_;
  const AlphaFunction& alpha_;
  const CAlphaTable& table_;
  double a_mid_, ln_c_mid_, lp_, p_, q_, r_, max_abs_x_;
};

}  // namespace

PathSample compute_A_field(const SeriesDraw& draw, const AlphaFunction& alpha,
                           const TimeGrid& grid, const CAlphaTable& table) {
  if (draw.horizon != alpha.domain_end())
    throw std::domain_error("draw horizon differs from the alpha domain end");
  const double t_max = grid.back();

  // Cell boundaries: sorted jump locations and grid points up to t_max.
  std::vector<double> cuts;
  cuts.reserve(grid.size() + draw.locations.size() + 1);
  cuts.push_back(0.0);
  for (double t : grid.points())
    if (t > 0.0) cuts.push_back(t);
  for (double v : draw.locations)
    if (v > 0.0 && v < t_max) cuts.push_back(v);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  // Terms sorted by location; within a cell the active set is fixed.
  std::vector<int> order(draw.n_terms);
  for (int i = 0; i < draw.n_terms; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return draw.locations[a] < draw.locations[b];
  });
  SeriesDraw sorted;
  sorted.seed = draw.seed;
  sorted.n_terms = draw.n_terms;
  sorted.horizon = draw.horizon;
  sorted.gamma_arrivals.reserve(draw.n_terms);
  sorted.locations.reserve(draw.n_terms);
  sorted.signs.reserve(draw.n_terms);
  for (int idx : order) {
    sorted.gamma_arrivals.push_back(draw.gamma_arrivals[idx]);
    sorted.locations.push_back(draw.locations[idx]);
    sorted.signs.push_back(draw.signs[idx]);
  }
  std::vector<double> ln_gt(draw.n_terms);
  const double ln_t = std::log(draw.horizon);
  for (int i = 0; i < draw.n_terms; ++i)
    ln_gt[i] = std::log(sorted.gamma_arrivals[i]) - ln_t;

  PathSample out{grid, std::vector<double>(grid.size(), 0.0),
                 ProcessKind::kFieldBased, draw.seed, draw.n_terms};

  double acc = 0.0;
  std::size_t active = 0;
  std::size_t next_grid = 0;
  // Grid may start at 0.
  while (next_grid < grid.size() && grid[next_grid] == 0.0) {
    out.values[next_grid] = 0.0;
    ++next_grid;
  }

  for (std::size_t ci = 0; ci + 1 < cuts.size(); ++ci) {
    const double left = cuts[ci], right = cuts[ci + 1];
    while (active < sorted.locations.size() &&
           sorted.locations[active] <= left)
      ++active;
    if (active > 0) {
      const double a_mid = alpha(0.5 * (left + right));
      CellSeries series(sorted, ln_gt, active, alpha, table, a_mid);
      auto integrand = [&](double s) { return series.drift_sum(s); };
      // One refinement pass over the base order-16 rule.
      const double mid = 0.5 * (left + right);
      acc += gauss16_panel(integrand, left, mid) +
             gauss16_panel(integrand, mid, right);
    }
    while (next_grid < grid.size() && grid[next_grid] == right) {
      out.values[next_grid] = acc;
      ++next_grid;
    }
  }
  return out;
}

DecompositionResult decompose_LF_field(const SeriesDraw& draw,
                                       const AlphaFunction& alpha,
                                       const TimeGrid& grid,
                                       const CAlphaTable& table) {
  DecompositionResult res;
  res.rule = SplitRule::kFieldDrift;
  res.a_path = compute_A_field(draw, alpha, grid, table);
  res.m_path = simulate_LI_fkl(draw, alpha, grid, table);
  return res;
}

double total_variation(const PathSample& path) {
  double tv = 0.0;
  for (std::size_t i = 1; i < path.values.size(); ++i)
    tv += std::abs(path.values[i] - path.values[i - 1]);
  return tv;
}

double simple_predictable_integral(const PathSample& path,
                                   const SimplePredictable& xi) {
  const auto& pts = path.grid.points();
  auto index_of = [&](double t) -> std::size_t {
    auto it = std::lower_bound(pts.begin(), pts.end(), t);
    if (it == pts.end() || *it != t)
      throw std::invalid_argument(
          "simple predictable integral: block endpoint not on the grid");
    return static_cast<std::size_t>(it - pts.begin());
  };

  double prev_end = -1.0;
  double total = 0.0;
  for (const auto& b : xi.blocks) {
    if (!(b.s < b.t))
      throw std::invalid_argument("simple predictable: need s < t per block");
    if (!(b.s >= 0.0) || b.s < prev_end)
      throw std::invalid_argument(
          "simple predictable: blocks must be disjoint and ordered");
    if (std::abs(b.xi) > 1.0)
      throw std::invalid_argument("simple predictable: |xi| must be <= 1");
    prev_end = b.t;
    total += b.xi * (path.values[index_of(b.t)] - path.values[index_of(b.s)]);
  }
  return total;
}

double levy_measure_LI(const AlphaFunction& alpha, double x, double z) {
  if (z == 0.0) throw std::domain_error("levy_measure: z must be nonzero");
  return std::pow(std::abs(z), -alpha(x) - 1.0);
}

double levy_jump_intensity_above(const AlphaFunction& alpha, double z0,
                                 double t_max) {
  if (!(z0 > 0.0)) throw std::domain_error("jump intensity: need z0 > 0");
  auto f = [&](double x) {
    const double a = alpha(x);
    return c_alpha(a) * std::pow(z0, -a);
  };
  return integrate_gk(f, 0.0, t_max, 1e-12).value;
}

}  // namespace multistable
