#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "multistable/alpha.hpp"
#include "multistable/stable.hpp"

namespace multistable {

// One realization of the three random sequences driving the series
// representations: arrival times Gamma_1 < Gamma_2 < ... of a unit-rate
// Poisson process, uniform locations V_i on [0,T], Rademacher signs.
// Regenerating from (seed, n, T) reproduces the draw bit-exactly, and each
// sequence comes from its own sub-stream, so extending n keeps the prefix.
struct SeriesDraw {
  std::uint64_t seed = 0;
  int n_terms = 0;
  double horizon = 1.0;  // T
  std::vector<double> gamma_arrivals;
  std::vector<double> locations;
  std::vector<double> signs;  // +1 / -1 (tests may zero them out)
};

SeriesDraw draw_series(std::uint64_t seed, int n_terms, double horizon);

class TimeGrid {
 public:
  TimeGrid() = default;  // empty placeholder, not valid for simulation
  explicit TimeGrid(std::vector<double> points);
  static TimeGrid uniform(int n_points, double horizon);

  const std::vector<double>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  double operator[](std::size_t i) const { return points_[i]; }
  double front() const { return points_.front(); }
  double back() const { return points_.back(); }

 private:
  std::vector<double> points_;
};

enum class ProcessKind { kIndependent, kFieldBased, kGeneral };
std::string to_string(ProcessKind kind);

struct PathSample {
  TimeGrid grid;
  std::vector<double> values;
  ProcessKind kind = ProcessKind::kIndependent;
  std::uint64_t seed = 0;
  int n_terms = 0;
};

// Kernel f(t,x) for the general series process, with its declared sup bound
// and per-x total variation in t.
struct Kernel {
  std::function<double(double, double)> f;
  double l_inf = 1.0;
  std::function<double(double)> variation;  // x -> total variation of f(.,x)
  double p_exponent = 1.7;                  // in (d, 2)

  static Kernel indicator();          // f(t,x) = 1(x <= t)
  static Kernel min_kernel();         // f(t,x) = min(t,x), L_inf = T needed
  static Kernel zero();
};

// Independent-increments motion, series over jump locations:
//   L_I(t) = sum_i C_{alpha(V_i)}^{1/alpha(V_i)} gamma_i
//            (Gamma_i/T)^{-1/alpha(V_i)} 1(V_i <= t).
PathSample simulate_LI_fkl(const SeriesDraw& draw, const AlphaFunction& alpha,
                           const TimeGrid& grid, const CAlphaTable& table);

// Field-based motion, the diagonal of the stable field:
//   L_F(t) = sum_i C_{alpha(t)}^{1/alpha(t)} gamma_i
//            (Gamma_i/T)^{-1/alpha(t)} 1(V_i <= t).
PathSample simulate_LF_fkl(const SeriesDraw& draw, const AlphaFunction& alpha,
                           const TimeGrid& grid, const CAlphaTable& table);

// Poisson-representation route for L_I: points generated magnitude-sorted
// (arrivals scaled by T) with independent locations and signs, from streams
// disjoint from the ones draw_series uses. Agrees with simulate_LI_fkl in
// law, not per draw.
PathSample simulate_LI_poisson(std::uint64_t seed, const AlphaFunction& alpha,
                               const TimeGrid& grid, int n_terms,
                               const CAlphaTable& table);

// General kernel process:
//   X(t) = sum_i C_{alpha(t)}^{1/alpha(t)} gamma_i
//          (Gamma_i/T)^{-1/alpha(t)} f(t, V_i).
// With the indicator kernel this reproduces simulate_LF_fkl bit-for-bit.
PathSample simulate_general_fkl(const SeriesDraw& draw,
                                const AlphaFunction& alpha, const Kernel& k,
                                const TimeGrid& grid,
                                const CAlphaTable& table);

// Per-term signed amplitudes of the L_I series (the jump sizes), in index
// order, plus the count of leading terms with Gamma_i < 1.
struct TermAmplitudes {
  std::vector<double> amplitude;
  std::size_t head_count = 0;
};
TermAmplitudes li_term_amplitudes(const SeriesDraw& draw,
                                  const AlphaFunction& alpha,
                                  const CAlphaTable& table);

// Partial-sum convergence diagnostic for the series
//   D_N(s) = sum_{i<=N} gamma_i U_i Gamma_i^{-1/alpha(s)} 1(V_i < s)
// with the two weight families U_i = 1 and U_i = ln Gamma_i. For each N in
// n_list (the draw must hold at least 2*max n_list terms) reports
// sup over the grid of |D_{2N}(s) - D_N(s)|.
struct ConvergenceReport {
  std::vector<int> n_values;
  std::vector<double> gap_unit_weight;
  std::vector<double> gap_log_weight;
};
ConvergenceReport partial_sum_convergence(const SeriesDraw& draw,
                                          const AlphaFunction& alpha,
                                          const std::vector<int>& n_list,
                                          const TimeGrid& grid);

}  // namespace multistable
