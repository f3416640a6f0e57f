#pragma once

#include <variant>
#include <vector>

#include "equimap/gauge.hpp"
#include "equimap/hankel.hpp"
#include "equimap/radial.hpp"

namespace equimap {

struct EvolutionConfig {
  double dt = 1e-3;
  double t_final = 1.0;
  int monitor_stride = 10;
  int n = 1024;
  double r_max = 32.0;
  double xi_max = 0.0;  // 0 -> default pi n / (2 r_max)
  double mass_drift_tol = 1e-8;
  double compat_alarm_tol = 1e-3;
  bool store_snapshots = true;
  std::vector<double> snapshot_times;
};

// Checks dt <= 0.1 and that t_final/dt is an integer within rounding;
// returns the step count.
long validate_config(const EvolutionConfig& cfg);

struct PairState {
  ArrayXcd psi_plus;
  ArrayXcd psi_minus;
};

struct Potentials {
  ArrayXd v_plus;
  ArrayXd v_minus;
  ArrayXd a2;
  ArrayXd a0;
};

// V-/+ = a0 -/+ 2 (a2+1)/r^2 -/+ Im(psi2 conj(psi-/+))/r assembled from the
// primitive ingredients; both potentials are exactly real by construction.
Potentials compute_potentials(const RadialGrid& g, const ArrayXcd& psi_plus,
                              const ArrayXcd& psi_minus);

struct Steppers {
  PlanPtr plan_plus;   // order 0, acts on psi+
  PlanPtr plan_minus;  // order 2, acts on psi-
  Eigen::MatrixXcd b_plus;
  Eigen::MatrixXcd b_minus;
  double dt = 0.0;
};

Steppers make_steppers(const PlanPtr& plan0, const PlanPtr& plan2, double dt);

// One Strang step: half kick, full spectral drift, half kick. Each kick
// freezes a real potential determined implicitly at the kick midpoint
// (fixed point, tol 1e-13), which keeps the composition exactly conjugate-
// reversible. Kicks preserve |psi| pointwise; the drift preserves the
// discrete mass up to the transform round-trip residual.
void strang_step(const RadialGrid& g, PairState& state, const Steppers& st);

struct Snapshot {
  double t = 0.0;
  ArrayXcd psi_plus;
  ArrayXcd psi_minus;
};

struct TrajectoryRecord {
  GridPtr grid;
  std::vector<double> times;
  std::vector<double> mass_minus;
  std::vector<double> mass_plus;
  std::vector<double> sup_a2;
  std::vector<double> compat_residual;
  std::vector<double> strichartz_accum;       // running int int |psi-|^4 r dr dt
  std::vector<double> strichartz_accum_plus;  // same for psi+
  std::vector<double> energy_proxy;           // pi * mass_minus
  std::vector<Snapshot> snapshots;            // at monitor times when enabled
  std::vector<Snapshot> timed_snapshots;      // at requested snapshot_times
  int alarm_count = 0;
  double alarm_first_time = -1.0;
};

TrajectoryRecord run(const GaugeState& initial, const EvolutionConfig& cfg,
                     PlanPtr plan0 = nullptr, PlanPtr plan2 = nullptr);

struct ProbeReport {
  std::vector<double> times;
  std::vector<double> pair_differences;  // L2 distance between consecutive back-propagated states
  double relation_residual = 0.0;        // scattering relation residual on the last snapshot
};

ProbeReport scattering_probe(const std::vector<Snapshot>& snaps, const HankelPlan& plan0,
                             const HankelPlan& plan2);

struct ScaleAction {
  double lambda = 1.0;
};
struct PhaseAction {
  double alpha = 0.0;
};
struct TimeReverseAction {};

using SymmetryAction = std::variant<ScaleAction, PhaseAction, TimeReverseAction>;

// scale: f -> lambda^{-1} f(lambda^{-1} r) by band-limited resampling;
// phase: f -> e^{i alpha} f; time_reverse: f -> conj(f).
PairState symmetry_transform(const RadialGrid& g, const PairState& state,
                             const SymmetryAction& action, const HankelPlan& plan0,
                             const HankelPlan& plan2);

}  // namespace equimap
