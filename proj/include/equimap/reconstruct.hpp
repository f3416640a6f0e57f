#pragma once

#include "equimap/gauge.hpp"
#include "equimap/radial.hpp"

namespace equimap {

// Recover (psi2, a2) from psi- by solving the reduced ODE system from
// r_max inward: a fixed point with the a2 = -sqrt(1 - |psi2|^2) substitution
// on an outer region where the tail mass certifies |psi2| <= 1/2, then direct
// RK4 integration of the coupled system further in. psi+, psi1, a0 complete
// the gauge. Throws ThresholdViolation when ||psi-||^2 >= 8.
GaugeState solve_gauge_from_psi_minus(const RadialField& psi_minus, int* iterations_out = nullptr);

// Rebuild the map and Coulomb frame from a solved gauge state with data
// (i, -j, -k) at infinity. The coefficient matrix is split as N + d_r K
// (K carries the d_r psi2 part of psi1 = (1+a2) psi1 + i d_r psi2); the
// resulting Volterra equation for (I + K) X is solved by Picard iteration
// interval by interval from the right.
MapState rebuild_map(const GaugeState& gauge);

struct ReconstructionReport {
  GaugeState gauge;
  MapState map;
  double mass = 0.0;    // ||psi-||^2
  double sup_a2 = 0.0;
  int fixed_point_iterations = 0;
  double ode_residual = 0.0;          // sup |d_r psi2 - (i a2 psi- - a2 psi2 / r)|
  double conservation_defect = 0.0;   // sup | |psi2|^2 + a2^2 - 1 |
  double compat_residual = 0.0;
};

ReconstructionReport reconstruct_report(const RadialField& psi_minus);

struct LpTransferReport {
  double p = 2.0;
  double ratio_psi_plus = 0.0;
  double ratio_psi2_over_r = 0.0;
  double ratio_one_plus_a2_over_r = 0.0;
  double pointwise_margin = 0.0;  // max_j (|psi2| - majorant), <= 0 when the bound holds
  ArrayXd majorant;               // r [r d_r]^{-1} |psi-|
};

LpTransferReport lp_transfer_check(const RadialField& psi_minus, double p);

}  // namespace equimap
