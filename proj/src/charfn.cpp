#include "multistable/charfn.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "multistable/parallel.hpp"
#include "multistable/quadrature.hpp"
#include "multistable/stable.hpp"

namespace multistable {

namespace {

constexpr double kPi = 3.141592653589793;

void validate_query(const AlphaFunction& alpha, const CFQuery& q) {
  if (q.times.empty() || q.times.size() != q.thetas.size())
    throw std::invalid_argument("CF query: need matching times and thetas");
  for (double t : q.times)
    if (!(t >= 0.0 && t <= alpha.domain_end()))
      throw std::invalid_argument("CF query: time outside [0,T]");
  for (double th : q.thetas)
    if (!std::isfinite(th))
      throw std::invalid_argument("CF query: theta not finite");
}

// Partition of [0, max t_j] at the sorted distinct query times, with the sum
// of thetas over the js still active on each cell (those with t_j >= cell).
struct Cells {
  std::vector<double> left, right;
  std::vector<std::vector<std::size_t>> active;  // query indices per cell
};

Cells build_cells(const CFQuery& q) {
  std::vector<double> cuts = q.times;
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  Cells cells;
  double prev = 0.0;
  for (double c : cuts) {
    if (c <= prev) {
      prev = std::max(prev, c);
      continue;
    }
    cells.left.push_back(prev);
    cells.right.push_back(c);
    cells.active.emplace_back();
    for (std::size_t j = 0; j < q.times.size(); ++j)
      if (q.times[j] >= c) cells.active.back().push_back(j);
    prev = c;
  }
  return cells;
}

}  // namespace

CFResult cf_LI_joint(const AlphaFunction& alpha, const CFQuery& q) {
  validate_query(alpha, q);
  const Cells cells = build_cells(q);
  double exponent = 0.0, err = 0.0;
  for (std::size_t k = 0; k < cells.left.size(); ++k) {
    double s_sum = 0.0;
    for (std::size_t j : cells.active[k]) s_sum += q.thetas[j];
    if (s_sum == 0.0) continue;
    const double ln_s = std::log(std::abs(s_sum));
    auto f = [&](double s) { return std::exp(alpha(s) * ln_s); };
    QuadResult cell =
        integrate_gk(f, cells.left[k], cells.right[k], 1e-12);
    exponent += cell.value;
    err += cell.error;
  }
  const double value = std::exp(-exponent);
  return {std::complex<double>(value, 0.0), value * err};
}

CFResult cf_LI_marginal(const AlphaFunction& alpha, double t, double theta) {
  return cf_LI_joint(alpha, CFQuery{{t}, {theta}});
}

CFResult cf_LI_increment(const AlphaFunction& alpha, double s, double t,
                         double theta) {
  if (!(0.0 <= s && s <= t && t <= alpha.domain_end()))
    throw std::invalid_argument("cf_LI_increment: need 0 <= s <= t <= T");
  if (theta == 0.0 || s == t) return {std::complex<double>(1.0, 0.0), 0.0};
  const double ln_th = std::log(std::abs(theta));
  auto f = [&](double u) { return std::exp(alpha(u) * ln_th); };
  QuadResult cell = integrate_gk(f, s, t, 1e-12);
  const double value = std::exp(-cell.value);
  return {std::complex<double>(value, 0.0), value * cell.error};
}

// ---------------------------------------------------------------------------
// Oscillatory engine for the field-based CF.
// ---------------------------------------------------------------------------

namespace detail {

namespace {

// h(y) = sum_l b_l y^{-e_l}, all b_l nonzero, exponents e_l = 1/a_l distinct.
struct PowerPhase {
  std::vector<double> b, e;

  double eval(double y) const {
    double h = 0.0;
    const double ln_y = std::log(y);
    for (std::size_t l = 0; l < b.size(); ++l) {
      const double ln_term = -e[l] * ln_y;
      if (ln_term > 700.0) {
        // The overflowing term dominates every other one at this y.
        return b[l] > 0.0 ? 1e300 : -1e300;
      }
      h += b[l] * std::exp(ln_term);
    }
    return h;
  }

  // Envelope H(y) = sum |b_l| y^{-e_l}; strictly decreasing, bounds both the
  // magnitude and the total variation of h.
  double envelope(double y) const {
    double h = 0.0;
    const double ln_y = std::log(y);
    for (std::size_t l = 0; l < b.size(); ++l) {
      const double ln_term = -e[l] * ln_y;
      h += std::abs(b[l]) * (ln_term > 700.0 ? 1e300 : std::exp(ln_term));
    }
    return h;
  }
};

// Decreasing solve of envelope(y) = target for target > envelope(hi).
double solve_envelope(const PowerPhase& p, double target, double hi) {
  double lo = hi;
  while (p.envelope(lo) < target) lo *= 0.5;
  // p.envelope(lo) >= target >= p.envelope(hi)
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (p.envelope(mid) >= target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double one_minus_cos_power_integral(std::span<const double> coeff,
                                    std::span<const double> alpha_exps,
                                    double* abs_err) {
  if (coeff.size() != alpha_exps.size())
    throw std::invalid_argument("phase: mismatched coefficient arrays");

  PowerPhase p;
  for (std::size_t l = 0; l < coeff.size(); ++l) {
    if (coeff[l] == 0.0) continue;
    if (!(alpha_exps[l] > 0.0 && alpha_exps[l] < 2.0))
      throw std::domain_error("phase: exponents must lie in (0,2)");
    p.b.push_back(coeff[l]);
    p.e.push_back(1.0 / alpha_exps[l]);
  }
  if (abs_err) *abs_err = 0.0;
  if (p.b.empty()) return 0.0;

  if (p.b.size() == 1) {
    const double a = 1.0 / p.e[0];
    return std::pow(std::abs(p.b[0]), a) / c_alpha(a);
  }

  const std::size_t n_terms = p.b.size();
  double err_total = 0.0;

  // Oscillation ends where the envelope falls below pi/2.
  double y_c = 0.0;
  for (std::size_t l = 0; l < n_terms; ++l) {
    const double yl = std::pow(
        2.0 * static_cast<double>(n_terms) * std::abs(p.b[l]) / kPi,
        1.0 / p.e[l]);
    y_c = std::max(y_c, yl);
  }
  y_c = std::max(y_c, 1e-12);

  // Smooth tail [y_c, inf): v = 1/y.
  auto tail_f = [&](double v) {
    double h = 0.0;
    for (std::size_t l = 0; l < n_terms; ++l)
      h += p.b[l] * std::pow(v, p.e[l]);
    const double s = std::sin(0.5 * h);
    return 2.0 * s * s / (v * v);
  };
  QuadResult tail = integrate_tanh_sinh(tail_f, 0.0, 1.0 / y_c, 1e-12);
  err_total += tail.error;

  // Monotonicity floor for the phase: below the smallest critical point of
  // h' in (0, y_c), or below the point where the strongest term dominates
  // the derivative outright.
  std::size_t lead = 0;
  for (std::size_t l = 1; l < n_terms; ++l)
    if (p.e[l] > p.e[lead]) lead = l;
  double y_dom = y_c;
  for (std::size_t l = 0; l < n_terms; ++l) {
    if (l == lead) continue;
    const double ratio =
        std::abs(p.b[lead]) * p.e[lead] /
        (2.0 * static_cast<double>(n_terms - 1) * std::abs(p.b[l]) * p.e[l]);
    const double yl = std::pow(ratio, 1.0 / (p.e[lead] - p.e[l]));
    y_dom = std::min(y_dom, yl);
  }

  // Critical points: roots of G(y) = sum b_l e_l y^{e_lead - e_l} in
  // (y_dom, y_c]; none exist below y_dom.
  auto g_of = [&](double y) {
    double g = 0.0;
    const double ln_y = std::log(y);
    for (std::size_t l = 0; l < n_terms; ++l)
      g += p.b[l] * p.e[l] * std::exp((p.e[lead] - p.e[l]) * ln_y);
    return g;
  };
  double y_mono = y_c;
  if (y_dom < y_c) {
    const double ln_lo = std::log(y_dom), ln_hi = std::log(y_c);
    const int scan = 512;
    double prev_y = y_dom, prev_g = g_of(y_dom);
    double first_root = y_c;
    for (int i = 1; i <= scan; ++i) {
      const double y =
          std::exp(ln_lo + (ln_hi - ln_lo) * i / static_cast<double>(scan));
      const double g = g_of(y);
      if (prev_g == 0.0 || g * prev_g < 0.0) {
        double lo = prev_y, hi = y;
        for (int it = 0; it < 100; ++it) {
          const double mid = 0.5 * (lo + hi);
          (g_of(mid) * g_of(lo) <= 0.0 ? hi : lo) = mid;
        }
        first_root = 0.5 * (lo + hi);
        break;
      }
      prev_y = y;
      prev_g = g;
    }
    y_mono = std::min(y_c, 0.999999 * first_root);
    y_mono = std::max(y_mono, 1e-300);
  }

  auto osc_f = [&](double y) {
    const double s = std::sin(0.5 * p.eval(y));
    return 2.0 * s * s;
  };

  // Middle [y_mono, y_c]: cells cut where the envelope advances by pi, so
  // the phase varies at most pi per cell.
  double middle = 0.0;
  if (y_mono < y_c) {
    const double env_hi = p.envelope(y_mono);
    const double env_lo = p.envelope(y_c);
    const double n_cells_d = (env_hi - env_lo) / kPi;
    if (n_cells_d > 2e5)
      throw QuadratureError("field CF: oscillation budget exceeded",
                            tail.value, 1.0);
    double right = y_c;
    double target = env_lo + kPi;
    while (right > y_mono * (1.0 + 1e-15)) {
      double left;
      if (target >= env_hi) {
        left = y_mono;
      } else {
        left = solve_envelope(p, target, right);
        left = std::max(left, y_mono);
      }
      QuadResult cell = integrate_gk(osc_f, left, right, 1e-12, 8);
      middle += cell.value;
      err_total += cell.error;
      right = left;
      target += kPi;
    }
  }

  // Head (0, y_mono]: 1 - cos has mean 1; the cosine part is summed over
  // half-period cells (phase monotone here) and accelerated.
  double head = y_mono;
  {
    const double phi0 = p.eval(y_mono);
    const double dir = (p.b[lead] > 0.0) ? 1.0 : -1.0;  // phase -> dir * inf

    // First zero of cos beyond phi0 in the dir direction.
    double m0 = (std::floor(dir * phi0 / kPi - 0.5) + 1.5) * kPi;
    // dir*phase crosses m0, m0+pi, ...

    auto solve_phase = [&](double target_signed, double hi) {
      // Find y < hi with dir*h(y) = target_signed (increasing as y drops).
      double lo = hi;
      while (dir * p.eval(lo) < target_signed) lo *= 0.5;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        (dir * p.eval(mid) >= target_signed ? lo : hi) = mid;
      }
      return 0.5 * (lo + hi);
    };

    auto cos_f = [&](double y) { return std::cos(p.eval(y)); };

    double j_osc = 0.0;
    double y_right = y_mono;
    double y0 = solve_phase(m0, y_mono);
    {
      // The pre-oscillation stretch can span many decades in y.
      QuadResult part = integrate_gk(cos_f, y0, y_right, 1e-12, 14);
      j_osc += part.value;
      err_total += part.error;
    }
    y_right = y0;

    std::vector<double> mags;
    mags.reserve(48);
    double first_sign = 0.0;
    double target = m0 + kPi;
    for (int k = 0; k < 48; ++k) {
      const double y_left = solve_phase(target, y_right);
      QuadResult cell = integrate_gk(cos_f, y_left, y_right, 1e-13, 6);
      err_total += cell.error;
      if (k == 0) first_sign = (cell.value >= 0.0) ? 1.0 : -1.0;
      mags.push_back(std::abs(cell.value));
      y_right = y_left;
      target += kPi;
      if (mags.back() < 1e-17) break;
    }
    QuadResult accel = alternating_series(mags);
    j_osc += first_sign * accel.value;
    err_total += accel.error;
    head -= j_osc;
  }

  if (abs_err) *abs_err = err_total;
  double total = tail.value + middle + head;
  if (total < 0.0) total = 0.0;  // roundoff guard; the integrand is >= 0
  return total;
}

}  // namespace detail

CFResult cf_LF_joint(const AlphaFunction& alpha, const CFQuery& q) {
  validate_query(alpha, q);
  const Cells cells = build_cells(q);
  double exponent = 0.0, err = 0.0;
  for (std::size_t k = 0; k < cells.left.size(); ++k) {
    // Group the active terms by their (exactly equal) exponents; the cell
    // integrand does not depend on x beyond the active set.
    std::map<double, double> theta_by_alpha;
    for (std::size_t j : cells.active[k])
      theta_by_alpha[alpha(q.times[j])] += q.thetas[j];
    std::vector<double> coeff, exps;
    for (const auto& [a, th] : theta_by_alpha) {
      if (th == 0.0) continue;
      coeff.push_back(th * c_alpha_pow(a));
      exps.push_back(a);
    }
    if (coeff.empty()) continue;
    double cell_err = 0.0;
    const double inner =
        detail::one_minus_cos_power_integral(coeff, exps, &cell_err);
    const double len = cells.right[k] - cells.left[k];
    exponent += len * inner;
    err += len * cell_err;
  }
  const double value = std::exp(-exponent);
  return {std::complex<double>(value, 0.0), value * err};
}

// ---------------------------------------------------------------------------
// Empirical CF machinery.
// ---------------------------------------------------------------------------

CFResult ecf(const JointSamples& samples, std::span<const double> thetas) {
  const std::size_t m = samples.count();
  if (m == 0) throw std::invalid_argument("ecf: empty sample set");
  if (thetas.size() != samples.dim)
    throw std::invalid_argument("ecf: theta count must match sample dim");
  double re = 0.0, im = 0.0;
  const double* row = samples.data.data();
  for (std::size_t k = 0; k < m; ++k, row += samples.dim) {
    double arg = 0.0;
    for (std::size_t j = 0; j < samples.dim; ++j) arg += thetas[j] * row[j];
    re += std::cos(arg);
    im += std::sin(arg);
  }
  const double inv = 1.0 / static_cast<double>(m);
  return {std::complex<double>(re * inv, im * inv),
          3.0 / std::sqrt(static_cast<double>(m))};
}

CFResult ecf(std::span<const double> samples, double theta) {
  JointSamples s;
  s.data.assign(samples.begin(), samples.end());
  s.dim = 1;
  return ecf(s, std::span<const double>(&theta, 1));
}

double cf_distance(const std::function<std::complex<double>(double)>& analytic,
                   std::span<const double> samples,
                   std::span<const double> theta_grid) {
  if (theta_grid.empty())
    throw std::invalid_argument("cf_distance: empty theta grid");
  JointSamples s;
  s.data.assign(samples.begin(), samples.end());
  s.dim = 1;
  double sup = 0.0;
  for (double th : theta_grid) {
    const CFResult e = ecf(s, std::span<const double>(&th, 1));
    sup = std::max(sup, std::abs(e.value - analytic(th)));
  }
  return sup;
}

IndependenceReport increment_independence_check(
    const AlphaFunction& alpha, ProcessKind kind,
    const std::vector<std::pair<double, double>>& increments, int n_paths,
    std::uint64_t seed, int n_terms, const CAlphaTable& table,
    int n_threads) {
  if (increments.size() < 2)
    throw std::invalid_argument("independence check: need >= 2 increments");
  double prev_end = 0.0;
  for (const auto& [s, t] : increments) {
    if (!(s >= prev_end && s < t && t <= alpha.domain_end()))
      throw std::invalid_argument(
          "independence check: increments must be disjoint, ordered and "
          "inside [0,T]");
    prev_end = t;
  }
  if (n_paths < 2)
    throw std::invalid_argument("independence check: insufficient samples");

  // Evaluation grid: all increment endpoints.
  std::vector<double> pts;
  for (const auto& [s, t] : increments) {
    if (s > 0.0) pts.push_back(s);
    pts.push_back(t);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const TimeGrid grid(pts);
  auto value_at = [&](const PathSample& path, double t) -> double {
    if (t == 0.0) return 0.0;
    auto it = std::lower_bound(pts.begin(), pts.end(), t);
    return path.values[static_cast<std::size_t>(it - pts.begin())];
  };

  const std::size_t k_inc = increments.size();
  JointSamples deltas;
  deltas.dim = k_inc;
  deltas.data.assign(static_cast<std::size_t>(n_paths) * k_inc, 0.0);
  parallel_for(static_cast<std::size_t>(n_paths), n_threads, [&](std::size_t i) {
    PathSample path = [&] {
      if (kind == ProcessKind::kFieldBased) {
        const SeriesDraw d = draw_series(seed + i, n_terms, alpha.domain_end());
        return simulate_LF_fkl(d, alpha, grid, table);
      }
      const SeriesDraw d = draw_series(seed + i, n_terms, alpha.domain_end());
      return simulate_LI_fkl(d, alpha, grid, table);
    }();
    for (std::size_t k = 0; k < k_inc; ++k)
      deltas.data[i * k_inc + k] = value_at(path, increments[k].second) -
                                   value_at(path, increments[k].first);
  });

  // Theta grid per increment.
  const int g = k_inc == 2 ? 21 : 7;
  std::vector<double> axis(g);
  for (int i = 0; i < g; ++i) axis[i] = -3.0 + 6.0 * i / (g - 1);

  // Marginal empirical CFs per increment per axis point.
  std::vector<std::vector<std::complex<double>>> marginal(
      k_inc, std::vector<std::complex<double>>(g));
  for (std::size_t k = 0; k < k_inc; ++k) {
    for (int i = 0; i < g; ++i) {
      double re = 0.0, im = 0.0;
      for (int s = 0; s < n_paths; ++s) {
        const double arg = axis[i] * deltas.data[s * k_inc + k];
        re += std::cos(arg);
        im += std::sin(arg);
      }
      marginal[k][i] = {re / n_paths, im / n_paths};
    }
  }

  // Walk the full grid (g^k points) via mixed-radix counting.
  std::vector<int> idx(k_inc, 0);
  std::vector<double> theta(k_inc, 0.0);
  double sup = 0.0;
  for (;;) {
    for (std::size_t k = 0; k < k_inc; ++k) theta[k] = axis[idx[k]];
    const CFResult joint = ecf(deltas, theta);
    std::complex<double> prod{1.0, 0.0};
    for (std::size_t k = 0; k < k_inc; ++k) prod *= marginal[k][idx[k]];
    sup = std::max(sup, std::abs(joint.value - prod));

    std::size_t k = 0;
    while (k < k_inc && ++idx[k] == g) idx[k++] = 0;
    if (k == k_inc) break;
  }

  IndependenceReport rep;
  rep.sup_gap = sup;
  rep.threshold = kIndependenceKappa / std::sqrt(static_cast<double>(n_paths));
  rep.pass = sup <= rep.threshold;
  rep.n_samples = n_paths;
  rep.n_increments = static_cast<int>(k_inc);
  return rep;
}

}  // namespace multistable
