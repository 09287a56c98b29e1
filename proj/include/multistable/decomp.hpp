#pragma once

#include <vector>

#include "multistable/alpha.hpp"
#include "multistable/series.hpp"

namespace multistable {

enum class SplitRule { kMagnitude, kAlternate, kFieldDrift };
std::string to_string(SplitRule rule);

// a_path + m_path reconstructs the target process per grid point: bit-level
// for the two series splits of L_I (they reuse the simulator's summation
// tree), within quadrature tolerance for the field drift.
struct DecompositionResult {
  PathSample a_path;  // finite-variation part
  PathSample m_path;  // martingale part
  SplitRule rule = SplitRule::kMagnitude;
};

// Split of the L_I series at arrival magnitude: the finitely many terms with
// Gamma_i < 1 form the finite-variation part, the rest the martingale.
DecompositionResult decompose_LI_magnitude(const SeriesDraw& draw,
                                           const AlphaFunction& alpha,
                                           const TimeGrid& grid,
                                           const CAlphaTable& table);

// Index-dependent split: terms with alpha(V_i) < 1/i form the
// finite-variation part (at most ceil(1/c) of them), the rest the
// martingale. Ties alpha(V_i) == 1/i go to the martingale.
DecompositionResult decompose_LI_alternate(const SeriesDraw& draw,
                                           const AlphaFunction& alpha,
                                           const TimeGrid& grid,
                                           const CAlphaTable& table);

// Pathwise field decomposition L_F = A + L_I: a_path is the absolutely
// continuous drift computed by compute_A_field, m_path the L_I path of the
// same draw.
DecompositionResult decompose_LF_field(const SeriesDraw& draw,
                                       const AlphaFunction& alpha,
                                       const TimeGrid& grid,
                                       const CAlphaTable& table);

// g(t) = C_{alpha(t)}^{1/alpha(t)} Gamma^{-1/alpha(t)} and its t-derivative
// (chain rule through the differentiated closed form of C).
double g_eval(double gamma_value, const AlphaFunction& alpha, double t);
double g_deriv(double gamma_value, const AlphaFunction& alpha, double t);

// Drift of the field-based motion,
//   A(t) = int_0^t sum_i gamma_i g_i'(s) 1(V_i < s) ds,
// integrated cell by cell on the partition cut at the jump locations and the
// grid points (Gauss order 16 with one refinement pass per cell).
PathSample compute_A_field(const SeriesDraw& draw, const AlphaFunction& alpha,
                           const TimeGrid& grid, const CAlphaTable& table);

// Sum of absolute increments over the grid.
double total_variation(const PathSample& path);

// Simple predictable integrand: xi_0 at {0} plus constants on disjoint
// ordered blocks (s_k, t_k], |xi_k| <= 1.
struct SimplePredictable {
  struct Block {
    double s, t, xi;
  };
  double initial = 0.0;
  std::vector<Block> blocks;
};

// Elementary integral  I_Y(xi) = sum_k xi_k (Y_{t_k} - Y_{s_k}).
// Block endpoints must coincide with grid points; no interpolation.
double simple_predictable_integral(const PathSample& path,
                                   const SimplePredictable& xi);

// Jump-measure density shape |z|^{-alpha(x)-1} of the independent-increments
// motion at location x, jump size z != 0.
double levy_measure_LI(const AlphaFunction& alpha, double x, double z);

// Expected number of jumps with |size| > z0 on [0, t_max]:
//   int_0^{t_max} C_{alpha(x)} z0^{-alpha(x)} dx.
double levy_jump_intensity_above(const AlphaFunction& alpha, double z0,
                                 double t_max);

}  // namespace multistable
