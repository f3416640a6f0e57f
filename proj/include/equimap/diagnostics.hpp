#pragma once

#include <vector>

#include "equimap/evolve.hpp"
#include "equimap/fixtures.hpp"
#include "equimap/gauge.hpp"
#include "equimap/hankel.hpp"

namespace equimap {

struct MomentaResult {
  ArrayXd m1;      // Re(psi1 conj(psi2)) / (1 - a2)
  ArrayXd m0;      // -Re(psi0 conj(psi2)) / (1 - a2), psi0 from compute_psi0
  ArrayXd m0_alt;  // the log-Laplacian closed form
  double route_discrepancy_rel = 0.0;  // interior L2(rdr) distance of the two routes
};

// Throws when 1 - a2 dips below 1e-6 anywhere (cannot happen sub-threshold).
MomentaResult momenta(const GaugeState& gauge);

struct VirialSample {
  double t = 0.0;
  double local_charge = 0.0;  // int a (1 + a2) r dr
  double flux = 0.0;          // -int r a' Re(psi1 conj(psi2)/r) r dr
  double a0_weighted = 0.0;   // int a' a0 dr
  double min_one_minus_a2 = 0.0;
  double scale = 0.0;  // ||psi1|| ||psi2/r||
};

std::vector<VirialSample> virial_samples(const TrajectoryRecord& traj, const CutoffProfile& a);

struct ChargeResidualSeries {
  std::vector<double> times;      // interior snapshot times
  std::vector<double> residual;   // |d/dt charge - sigma * int r a' Re(psi1 conj(psi2)/r) r dr|
  std::vector<double> scale;      // ||psi1|| ||psi2/r|| at those times
};

ChargeResidualSeries local_charge_residual(const TrajectoryRecord& traj, const CutoffProfile& a,
                                           int sigma);

// Re-derive the local charge identity numerically on the trajectory and
// return the sign with the smaller mean residual.
int fix_sigma(const TrajectoryRecord& traj, const CutoffProfile& a);

struct BalanceReport {
  double boundary_start = 0.0;  // int a m1 dr at the first snapshot
  double boundary_end = 0.0;    // ... at the last snapshot
  double log_laplacian = 0.0;   // int dt int d_r((1/r) a') d_r ln(1-a2) r dr
  double sign_definite = 0.0;   // int dt int (1/r) a' ((a2'/(1-a2))^2 - a2/(1-a2)(...)) r dr
  double a0_term = 0.0;         // int dt int a' a0 dr
  double closure_defect = 0.0;  // boundary difference + (LL - SD) - A0
  double closure_scale = 0.0;   // largest ledger entry magnitude
  double pointwise_residual = 0.0;  // interior L2(rdr) of d_t m1 - d_r m0 + d_r a0, mid snapshot
  double pointwise_scale = 0.0;
};

BalanceReport virial_balance(const TrajectoryRecord& traj, const CutoffProfile& a, int sigma);

// s(t) = sup_j | r_j int_{r_j}^{r_max} (e^{i t H2} f)(s) / s ds |.
std::vector<double> decay_probe(const RadialField& f, const HankelPlan& plan2,
                                const std::vector<double>& times);

}  // namespace equimap
