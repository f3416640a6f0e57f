#include "equimap/evolve.hpp"

#include <cmath>
#include <sstream>

namespace equimap {

long validate_config(const EvolutionConfig& cfg) {
  if (!(cfg.dt > 0.0) || cfg.dt > 0.1) throw InvalidInput("EvolutionConfig: dt must be in (0, 0.1]");
  if (!(cfg.t_final > 0.0)) throw InvalidInput("EvolutionConfig: t_final must be positive");
  if (cfg.monitor_stride < 1) throw InvalidInput("EvolutionConfig: monitor_stride must be >= 1");
  const double steps = cfg.t_final / cfg.dt;
  const long n = std::lround(steps);
  if (n < 1 || std::abs(steps - static_cast<double>(n)) > 1e-9 * steps)
    throw InvalidInput("EvolutionConfig: t_final/dt is not an integer within rounding");
  return n;
}

Potentials compute_potentials(const RadialGrid& g, const ArrayXcd& psi_plus,
                              const ArrayXcd& psi_minus) {
  Potentials p;
  const ArrayXcd p2r = (psi_plus - psi_minus) / Complex(0.0, 2.0);
  const ArrayXd dmod = psi_plus.abs2() - psi_minus.abs2();
  p.a2 = -1.0 + 0.25 * cumulative_from_zero(g, (dmod * g.nodes).eval());
  const ArrayXd gq = (psi_plus.conjugate() * psi_minus).real();
  p.a0 = -0.5 * gq + rdr_tail_exact(g, gq);
  const ArrayXd centr = 2.0 * (p.a2 + 1.0) / g.nodes.square();
  const ArrayXd cross_minus = (p2r * psi_minus.conjugate()).imag();
  const ArrayXd cross_plus = (p2r * psi_plus.conjugate()).imag();
  p.v_minus = p.a0 - centr - cross_minus;
  p.v_plus = p.a0 + centr + cross_plus;
  return p;
}

Steppers make_steppers(const PlanPtr& plan0, const PlanPtr& plan2, double dt) {
  if (!plan0 || !plan2) throw InvalidInput("make_steppers: null plan");
  if (plan0->order != 0 || plan2->order != 2)
    throw InvalidInput("make_steppers: expected plans of order 0 and 2");
  if (!same_grid(*plan0->grid, *plan2->grid)) throw GridMismatch("make_steppers: plans on different grids");
  Steppers st;
  st.plan_plus = plan0;
  st.plan_minus = plan2;
  st.dt = dt;
  st.b_plus = make_stepper(*plan0, dt);
  st.b_minus = make_stepper(*plan2, dt);
  return st;
}

namespace {

void phase_rotate(PairState& s, const Potentials& p, double tau) {
  const ArrayXd angp = -tau * p.v_plus;
  const ArrayXd angm = -tau * p.v_minus;
  s.psi_plus *= angp.cos().cast<Complex>() + Complex(0.0, 1.0) * angp.sin().cast<Complex>();
  s.psi_minus *= angm.cos().cast<Complex>() + Complex(0.0, 1.0) * angm.sin().cast<Complex>();
}

// Kick over duration tau with the potential fixed implicitly at the kick
// midpoint: W = V(e^{-i (tau/2) W} state). The fixed point makes the kick an
// exact involution partner under conjugation.
void kick(const RadialGrid& g, PairState& s, double tau) {
  Potentials pot = compute_potentials(g, s.psi_plus, s.psi_minus);
  for (int it = 0; it < 25; ++it) {
    PairState half = s;
    phase_rotate(half, pot, 0.5 * tau);
    Potentials mid = compute_potentials(g, half.psi_plus, half.psi_minus);
    const double delta = std::max((mid.v_plus - pot.v_plus).abs().maxCoeff(),
                                  (mid.v_minus - pot.v_minus).abs().maxCoeff());
    pot = mid;
    if (delta < 1e-13 * (1.0 + pot.v_plus.abs().maxCoeff() + pot.v_minus.abs().maxCoeff())) break;
  }
  phase_rotate(s, pot, tau);
}

}  // namespace

void strang_step(const RadialGrid& g, PairState& state, const Steppers& st) {
  kick(g, state, 0.5 * st.dt);
  state.psi_plus = (st.b_plus * state.psi_plus.matrix()).array();
  state.psi_minus = (st.b_minus * state.psi_minus.matrix()).array();
  kick(g, state, 0.5 * st.dt);
}

TrajectoryRecord run(const GaugeState& initial, const EvolutionConfig& cfg, PlanPtr plan0,
                     PlanPtr plan2) {
  const long nsteps = validate_config(cfg);
  GridPtr grid = initial.grid;
  const RadialGrid& g = *grid;
  if (g.n != cfg.n || g.r_max != cfg.r_max)
    throw GridMismatch("run: initial state grid does not match the configured grid");
  if (!plan0) plan0 = build_plan(0, grid, cfg.xi_max);
  if (!plan2) plan2 = build_plan(2, grid, cfg.xi_max);
  const Steppers st = make_steppers(plan0, plan2, cfg.dt);

  PairState state{initial.psi_plus, initial.psi_minus};
  if (!all_finite(state.psi_plus) || !all_finite(state.psi_minus))
    throw InvalidInput("run: non-finite initial data");
  const double m0 = mass(RadialField(grid, state.psi_minus));
  if (m0 >= 8.0) throw ThresholdViolation("run: initial mass >= 8");

  TrajectoryRecord rec;
  rec.grid = grid;
  double acc_minus = 0.0, acc_plus = 0.0;

  auto quartic = [&](const ArrayXcd& f) { return (g.weights * f.abs2().square()).sum(); };

  auto record = [&](long k) {
    const double t = k * cfg.dt;
    GaugeState gs = gauge_from_pair(grid, state.psi_plus, state.psi_minus);
    const double mm = mass(RadialField(grid, state.psi_minus));
    const double mp = mass(RadialField(grid, state.psi_plus));
    const double cr = compatibility_residual(gs);
    rec.times.push_back(t);
    rec.mass_minus.push_back(mm);
    rec.mass_plus.push_back(mp);
    rec.sup_a2.push_back(gs.a2.maxCoeff());
    rec.compat_residual.push_back(cr);
    rec.strichartz_accum.push_back(acc_minus);
    rec.strichartz_accum_plus.push_back(acc_plus);
    rec.energy_proxy.push_back(M_PI * mm);
    if (cr > cfg.compat_alarm_tol) {
      if (rec.alarm_count == 0) rec.alarm_first_time = t;
      ++rec.alarm_count;
    }
    if (cfg.store_snapshots) rec.snapshots.push_back({t, state.psi_plus, state.psi_minus});
  };

  auto maybe_timed_snapshot = [&](long k) {
    const double t = k * cfg.dt;
    for (double want : cfg.snapshot_times)
      if (std::abs(want - t) <= 1e-9 * std::max(1.0, std::abs(want)))
        rec.timed_snapshots.push_back({t, state.psi_plus, state.psi_minus});
  };

  record(0);
  maybe_timed_snapshot(0);
  for (long k = 0; k < nsteps; ++k) {
    acc_minus += cfg.dt * quartic(state.psi_minus);
    acc_plus += cfg.dt * quartic(state.psi_plus);
    strang_step(g, state, st);
    const long kk = k + 1;
    if (kk % cfg.monitor_stride == 0 || kk == nsteps) {
      if (!all_finite(state.psi_plus) || !all_finite(state.psi_minus)) {
        std::ostringstream os;
        os << "run: non-finite field values at t = " << kk * cfg.dt;
        throw Error(os.str());
      }
      record(kk);
    }
    maybe_timed_snapshot(kk);
  }
  return rec;
}

ProbeReport scattering_probe(const std::vector<Snapshot>& snaps, const HankelPlan& plan0,
                             const HankelPlan& plan2) {
  if (snaps.size() < 2) throw InvalidInput("scattering_probe: need at least two snapshots");
  const RadialGrid& g = *plan0.grid;
  ProbeReport rep;
  std::vector<ArrayXcd> phi_plus, phi_minus;
  for (const Snapshot& s : snaps) {
    rep.times.push_back(s.t);
    phi_plus.push_back(free_propagate(plan0, RadialField(plan0.grid, s.psi_plus), -s.t).v);
    phi_minus.push_back(free_propagate(plan2, RadialField(plan2.grid, s.psi_minus), -s.t).v);
  }
  for (size_t i = 0; i + 1 < snaps.size(); ++i) {
    const double dp = norm_l2_rdr(g, (phi_plus[i + 1] - phi_plus[i]).eval());
    const double dm = norm_l2_rdr(g, (phi_minus[i + 1] - phi_minus[i]).eval());
    rep.pair_differences.push_back(std::sqrt(dp * dp + dm * dm));
  }
  const ArrayXcd& fp = phi_plus.back();
  const ArrayXcd& fm = phi_minus.back();
  const ArrayXcd q = g.nodes.cast<Complex>() * (fp - fm);
  rep.relation_residual = norm_l2_rdr(g, (derivative_c4p(g, q, -1) - (fp + fm)).eval());
  return rep;
}

namespace {

double support_radius(const RadialGrid& g, const ArrayXcd& f) {
  const double peak = f.abs().maxCoeff();
  if (peak <= 0.0) return 0.0;
  for (int j = g.n - 1; j >= 0; --j)
    if (std::abs(f[j]) > 1e-10 * peak) return g.nodes[j];
  return 0.0;
}

}  // namespace

PairState symmetry_transform(const RadialGrid& g, const PairState& state,
                             const SymmetryAction& action, const HankelPlan& plan0,
                             const HankelPlan& plan2) {
  PairState out;
  if (std::holds_alternative<PhaseAction>(action)) {
    const Complex ph = std::polar(1.0, std::get<PhaseAction>(action).alpha);
    out.psi_plus = ph * state.psi_plus;
    out.psi_minus = ph * state.psi_minus;
    return out;
  }
  if (std::holds_alternative<TimeReverseAction>(action)) {
    out.psi_plus = state.psi_plus.conjugate();
    out.psi_minus = state.psi_minus.conjugate();
    return out;
  }
  const double lambda = std::get<ScaleAction>(action).lambda;
  if (!(lambda > 0.0)) throw InvalidInput("symmetry_transform: lambda must be positive");
  const double supp =
      std::max(support_radius(g, state.psi_plus), support_radius(g, state.psi_minus));
  if (lambda * supp > 0.5 * g.r_max)
    throw InvalidInput("symmetry_transform: rescaled support exceeds r_max/2 (aliasing guard)");
  const ArrayXd radii = g.nodes / lambda;
  GridPtr grid = plan0.grid;
  out.psi_plus =
      spectral_resample(plan0, RadialField(grid, state.psi_plus), radii) / lambda;
  out.psi_minus =
      spectral_resample(plan2, RadialField(grid, state.psi_minus), radii) / lambda;
  return out;
}

}  // namespace equimap
