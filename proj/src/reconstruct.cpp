#include "equimap/reconstruct.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>
#include <vector>

namespace equimap {

namespace {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

// U f (r) = r int_r^{r_max} f(s)/s ds, the r [r d_r]^{-1} composite with the
// sign folded in (so psi2 ~ i U psi- at leading order).
ArrayXcd big_u(const RadialGrid& g, const ArrayXcd& f) {
  ArrayXcd q = f / g.nodes.cast<Complex>();
  return g.nodes.cast<Complex>() * cumulative_to_rmax(g, q);
}

ArrayXd big_u(const RadialGrid& g, const ArrayXd& f) {
  ArrayXd q = f / g.nodes;
  return g.nodes * cumulative_to_rmax(g, q);
}

// cubic interpolation of a complex node array at arbitrary r
Complex interp_c(const RadialGrid& g, const ArrayXcd& f, double r) {
  const double h = g.spacing();
  int j = static_cast<int>(std::floor(r / h - 0.5));
  const int s = std::clamp(j - 1, 0, g.n - 4);
  const double x = (r - g.nodes[s]) / h;
  const double L0 = -(x - 1.0) * (x - 2.0) * (x - 3.0) / 6.0;
  const double L1 = x * (x - 2.0) * (x - 3.0) / 2.0;
  const double L2 = -x * (x - 1.0) * (x - 3.0) / 2.0;
  const double L3 = x * (x - 1.0) * (x - 2.0) / 6.0;
  return L0 * f[s] + L1 * f[s + 1] + L2 * f[s + 2] + L3 * f[s + 3];
}

struct PairDeriv {
  Complex dpsi2;
  double da2;
};

PairDeriv ode_rhs(double r, const Complex& psi2, double a2, const Complex& psim) {
  PairDeriv d;
  d.dpsi2 = Complex(0.0, 1.0) * a2 * psim - a2 * psi2 / r;
  d.da2 = std::imag(psim * std::conj(psi2)) + std::norm(psi2) / r;
  return d;
}

Mat3 field_mat(const Complex& z) {
  Mat3 m;
  m << 0.0, 0.0, -z.real(),
       0.0, 0.0, -z.imag(),
       z.real(), z.imag(), 0.0;
  return m;
}

// cumulative from the right over a node index range [ja, jb], 4th order, with
// an optional extrapolated stub [r_jb, r_max] when the interval touches the
// outer boundary. Integrand given as one 3x3 matrix per node.
std::vector<Mat3> cum_right_mats(const RadialGrid& g, const std::vector<Mat3>& q, int ja, int jb,
                                 bool outer_stub) {
  const int len = jb - ja + 1;
  std::vector<Mat3> out(len);
  const double h = g.spacing();
  auto seg = [&](double a, double b, int s) {
    auto ip = [](double c3, double c2, double c1, double c0, double x) {
      return ((c3 / 4.0 * x + c2 / 3.0) * x + c1 / 2.0) * x * x + c0 * x;
    };
    const double C[4][4] = {
        {-1.0 / 6.0, 1.0, -11.0 / 6.0, 1.0},
        {0.5, -2.5, 3.0, 0.0},
        {-0.5, 2.0, -1.5, 0.0},
        {1.0 / 6.0, -0.5, 1.0 / 3.0, 0.0},
    };
    Mat3 acc = Mat3::Zero();
    for (int i = 0; i < 4; ++i) {
      const double w =
          ip(C[i][0], C[i][1], C[i][2], C[i][3], b) - ip(C[i][0], C[i][1], C[i][2], C[i][3], a);
      acc += w * q[s + i];
    }
    return (h * acc).eval();
  };
  Mat3 acc = Mat3::Zero();
  if (outer_stub && len >= 4) acc = seg(3.0, 3.5, len - 4);
  out[len - 1] = acc;
  for (int j = len - 2; j >= 0; --j) {
    int s;
    double a;
    if (j == 0) {
      s = 0;
      a = 0.0;
    } else if (j >= len - 2) {
      s = len - 4;
      a = 2.0;
    } else {
      s = j - 1;
      a = 1.0;
    }
    acc += seg(a, a + 1.0, s);
    out[j] = acc;
  }
  return out;
}

}  // namespace

GaugeState solve_gauge_from_psi_minus(const RadialField& psi_minus, int* iterations_out) {
  const RadialGrid& g = *psi_minus.grid;
  const int n = g.n;
  const ArrayXcd& pm = psi_minus.v;
  if (!all_finite(pm)) throw InvalidInput("solve_gauge_from_psi_minus: non-finite input");
  const double m = (g.weights * pm.abs2()).sum();
  if (m >= 8.0) {
    std::ostringstream os;
    os << "solve_gauge_from_psi_minus: ||psi-||^2 = " << m << " >= 8, above the admissibility threshold";
    throw ThresholdViolation(os.str());
  }

  // outer region: smallest index whose tail mass is <= 0.25, certifying
  // |psi2| <= 0.25/sqrt(2) + slack < 1/2 via Cauchy-Schwarz
  ArrayXd cellmass = g.weights * pm.abs2();
  int j_outer = n - 1;
  double tail = 0.0;
  for (int j = n - 1; j >= 0; --j) {
    if (tail + cellmass[j] > 0.25) break;
    tail += cellmass[j];
    j_outer = j;
  }

  ArrayXcd psi2 = ArrayXcd::Zero(n);
  ArrayXd a2 = ArrayXd::Constant(n, -1.0);

  // fixed point on [j_outer, n)
  const ArrayXcd lead = Complex(0.0, 1.0) * big_u(g, pm);
  psi2.tail(n - j_outer) = lead.tail(n - j_outer);
  int iters = 0;
  double prev_incr = -1.0;
  int grow = 0;
  std::ostringstream trace;
  for (; iters < 100; ++iters) {
    for (int j = j_outer; j < n; ++j) {
      const double mod = std::abs(psi2[j]);
      if (mod >= 1.0)
        throw AdmissibilityFailure(
            "solve_gauge_from_psi_minus: |psi2| reached 1 in the outer region at r = " +
            std::to_string(g.nodes[j]));
      a2[j] = -std::sqrt(1.0 - mod * mod);
    }
    ArrayXcd rhs = ArrayXcd::Zero(n);
    for (int j = j_outer; j < n; ++j) {
      const double onepa = 1.0 + a2[j];
      rhs[j] = Complex(0.0, 1.0) * onepa * pm[j] - onepa * psi2[j] / g.nodes[j];
    }
    const ArrayXcd corr = big_u(g, rhs);
    double incr2 = 0.0;
    for (int j = j_outer; j < n; ++j) {
      const Complex next = lead[j] - corr[j];
      incr2 += g.weights[j] * std::norm(next - psi2[j]);
      psi2[j] = next;
    }
    const double incr = std::sqrt(incr2);
    trace << " it" << iters << "=" << incr;
    if (incr < 1e-12) break;
    if (prev_incr >= 0.0 && incr > prev_incr) {
      if (++grow >= 3)
        throw ConvergenceFailure("solve_gauge_from_psi_minus: fixed point not contracting;" +
                                 trace.str());
    } else {
      grow = 0;
    }
    prev_incr = incr;
  }
  if (iters >= 100)
    throw ConvergenceFailure("solve_gauge_from_psi_minus: fixed point cap reached;" + trace.str());
  for (int j = j_outer; j < n; ++j) {
    const double mod = std::abs(psi2[j]);
    if (mod >= 1.0)
      throw AdmissibilityFailure("solve_gauge_from_psi_minus: |psi2| reached 1 in the outer region");
    a2[j] = -std::sqrt(1.0 - mod * mod);
  }

  // inward continuation by RK4 on the coupled system
  const double h = g.spacing();
  for (int j = j_outer; j > 0; --j) {
    const double r0 = g.nodes[j];
    const double dr = -h;
    const Complex y0 = psi2[j];
    const double z0 = a2[j];
    const Complex pm0 = pm[j];
    const Complex pmh = interp_c(g, pm, r0 - 0.5 * h);
    const Complex pm1 = pm[j - 1];
    const PairDeriv k1 = ode_rhs(r0, y0, z0, pm0);
    const PairDeriv k2 = ode_rhs(r0 + 0.5 * dr, y0 + 0.5 * dr * k1.dpsi2, z0 + 0.5 * dr * k1.da2, pmh);
    const PairDeriv k3 = ode_rhs(r0 + 0.5 * dr, y0 + 0.5 * dr * k2.dpsi2, z0 + 0.5 * dr * k2.da2, pmh);
    const PairDeriv k4 = ode_rhs(r0 + dr, y0 + dr * k3.dpsi2, z0 + dr * k3.da2, pm1);
    psi2[j - 1] = y0 + dr / 6.0 * (k1.dpsi2 + 2.0 * k2.dpsi2 + 2.0 * k3.dpsi2 + k4.dpsi2);
    a2[j - 1] = z0 + dr / 6.0 * (k1.da2 + 2.0 * k2.da2 + 2.0 * k3.da2 + k4.da2);
  }

  if (iterations_out) *iterations_out = iters + 1;

  GaugeState gs;
  gs.grid = psi_minus.grid;
  gs.psi_minus = pm;
  gs.psi2 = psi2;
  gs.a2 = a2;
  const ArrayXcd p2r = psi2 / g.nodes.cast<Complex>();
  gs.psi1 = pm + Complex(0.0, 1.0) * p2r;
  gs.psi_plus = pm + Complex(0.0, 2.0) * p2r;
  const ArrayXd gq = (gs.psi_plus.conjugate() * gs.psi_minus).real();
  gs.a0 = -0.5 * gq + rdr_tail_exact(g, gq);
  return gs;
}

MapState rebuild_map(const GaugeState& gauge) {
  const RadialGrid& g = *gauge.grid;
  const int n = g.n;

  std::vector<Mat3> Nmat(n), Kmat(n), Gmat(n), Amat(n);
  ArrayXd contract(n);
  for (int j = 0; j < n; ++j) {
    const Complex psi1 = gauge.psi1[j];
    const Complex nn = (1.0 + gauge.a2[j]) * psi1;
    const Complex kk = Complex(0.0, 1.0) * gauge.psi2[j];
    Nmat[j] = field_mat(nn);
    Kmat[j] = field_mat(kk);
    Amat[j] = field_mat(psi1);
    Gmat[j] = Nmat[j] - Kmat[j] * Amat[j];
    contract[j] = std::abs(nn) + std::abs(kk) * std::abs(psi1);
  }

  const double h = g.spacing();
  Mat3 Y_data;  // rows (v, w, u) at the right end of the current interval
  Y_data << 1.0, 0.0, 0.0,
            0.0, -1.0, 0.0,
            0.0, 0.0, -1.0;

  Eigen::Matrix3Xd v(3, n), w(3, n), u(3, n);
  Mat3 K_right = Mat3::Zero();  // K at the data point (zero at infinity)
  bool outer = true;
  int jb = n - 1;
  double drift = 0.0;
  while (jb >= 0) {
    // choose [ja, jb] with small contraction budget, at least 4 nodes
    int ja = jb;
    double budget = 0.0;
    while (ja > 0 && (budget + h * contract[ja - 1] <= 0.25 || jb - ja < 3)) {
      budget += h * contract[--ja];
    }
    if (jb - ja < 3) ja = std::max(0, jb - 3);
    if (ja <= 3) ja = 0;
    const int len = jb - ja + 1;

    std::vector<Mat3> Y(len), Z(len), integ(len);
    const Mat3 Z0 = (Mat3::Identity() - K_right) * Y_data;
    for (int i = 0; i < len; ++i) {
      const Mat3 IK = Mat3::Identity() - Kmat[ja + i];
      Y[i] = IK.inverse() * Z0;
    }
    int it = 0;
    for (; it < 80; ++it) {
      for (int i = 0; i < len; ++i) integ[i] = Gmat[ja + i] * Y[i];
      std::vector<Mat3> acc = cum_right_mats(g, integ, ja, jb, outer);
      double delta = 0.0;
      for (int i = 0; i < len; ++i) {
        const Mat3 IK = Mat3::Identity() - Kmat[ja + i];
        const Mat3 Ynew = IK.inverse() * (Z0 - acc[i]);
        delta = std::max(delta, (Ynew - Y[i]).cwiseAbs().maxCoeff());
        Y[i] = Ynew;
      }
      if (delta < 1e-13) break;
    }
    if (it >= 80)
      throw ConvergenceFailure("rebuild_map: interval iteration did not converge near r = " +
                               std::to_string(g.nodes[ja]));
    for (int i = 0; i < len; ++i) {
      const int j = ja + i;
      drift = std::max(drift, (Y[i] * Y[i].transpose() - Mat3::Identity()).cwiseAbs().maxCoeff());
      Mat3 O = Y[i];
      for (int s = 0; s < 3; ++s) O = 1.5 * O - 0.5 * O * O.transpose() * O;
      v.col(j) = O.row(0).transpose();
      w.col(j) = O.row(1).transpose();
      u.col(j) = O.row(2).transpose();
    }
    // next interval: data at node ja
    Y_data = Y[0];
    K_right = Kmat[ja];
    outer = false;
    jb = ja - 1;
  }
  if (drift > 1e-6)
    throw ConvergenceFailure("rebuild_map: orthonormality drift " + std::to_string(drift) +
                             " exceeds 1e-6");

  MapState map;
  map.grid = gauge.grid;
  map.u = u;
  map.v = v;
  map.w = w;

  // exit checks tying the rebuilt frame to the gauge data
  double u3_defect = 0.0, zeta_defect = 0.0;
  for (int j = 0; j < n; ++j) {
    u3_defect = std::max(u3_defect, std::abs(u(2, j) - gauge.a2[j]));
    const Complex zeta(w(2, j), -v(2, j));
    zeta_defect = std::max(zeta_defect, std::abs(zeta - gauge.psi2[j]));
  }
  if (u3_defect > 1e-5 || zeta_defect > 1e-5) {
    std::ostringstream os;
    os << "rebuild_map: exit identities violated (u3 defect " << u3_defect << ", zeta defect "
       << zeta_defect << ")";
    throw ConvergenceFailure(os.str());
  }
  return map;
}

ReconstructionReport reconstruct_report(const RadialField& psi_minus) {
  ReconstructionReport rep;
  int iters = 0;
  rep.gauge = solve_gauge_from_psi_minus(psi_minus, &iters);
  rep.fixed_point_iterations = iters;
  rep.map = rebuild_map(rep.gauge);
  rep.mass = mass(psi_minus);
  rep.sup_a2 = rep.gauge.a2.maxCoeff();
  const RadialGrid& g = *psi_minus.grid;
  const ArrayXcd dpsi2 = derivative_c4p(g, rep.gauge.psi2, -1);
  double ode_res = 0.0;
  for (int j = 3; j < g.n - 3; ++j) {
    const Complex want = Complex(0.0, 1.0) * rep.gauge.a2[j] * psi_minus.v[j] -
                         rep.gauge.a2[j] * rep.gauge.psi2[j] / g.nodes[j];
    ode_res = std::max(ode_res, std::abs(dpsi2[j] - want));
  }
  rep.ode_residual = ode_res;
  rep.conservation_defect =
      (rep.gauge.psi2.abs2() + rep.gauge.a2.square() - 1.0).abs().maxCoeff();
  rep.compat_residual = compatibility_residual(rep.gauge);
  return rep;
}

LpTransferReport lp_transfer_check(const RadialField& psi_minus, double p) {
  if (!(p >= 1.0)) throw InvalidInput("lp_transfer_check: p must be in [1, inf)");
  LpTransferReport rep;
  rep.p = p;
  GaugeState gs = solve_gauge_from_psi_minus(psi_minus);
  const RadialGrid& g = *psi_minus.grid;
  const double base = norm_lp_rdr(psi_minus, p);
  const ArrayXcd p2r = gs.psi2 / g.nodes.cast<Complex>();
  const ArrayXd opa = (1.0 + gs.a2) / g.nodes;
  auto lp_real = [&](const ArrayXd& f) {
    return std::pow((g.weights * f.abs().pow(p)).sum(), 1.0 / p);
  };
  const double denom = base > 0.0 ? base : 1.0;
  rep.ratio_psi_plus = norm_lp_rdr(RadialField(psi_minus.grid, gs.psi_plus), p) / denom;
  rep.ratio_psi2_over_r = norm_lp_rdr(RadialField(psi_minus.grid, p2r), p) / denom;
  rep.ratio_one_plus_a2_over_r = lp_real(opa) / denom;
  rep.majorant = big_u(g, psi_minus.v.abs().eval());
  rep.pointwise_margin = (gs.psi2.abs() - rep.majorant).maxCoeff();
  return rep;
}

}  // namespace equimap
