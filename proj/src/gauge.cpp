#include "equimap/gauge.hpp"

#include <cmath>

namespace equimap {

namespace {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

// cubic Lagrange interpolation of per-component node data at arbitrary r
struct ProfileInterp {
  const RadialGrid& g;
  const Matrix3Xd& u;
  const Matrix3Xd& du;

  void window(double r, int& s, double& x) const {
    const double h = g.spacing();
    int j = static_cast<int>(std::floor(r / h - 0.5));
    s = std::clamp(j - 1, 0, g.n - 4);
    x = (r - g.nodes[s]) / h;
  }

  static void basis(double x, double L[4]) {
    L[0] = -(x - 1.0) * (x - 2.0) * (x - 3.0) / 6.0;
    L[1] = x * (x - 2.0) * (x - 3.0) / 2.0;
    L[2] = -x * (x - 1.0) * (x - 3.0) / 2.0;
    L[3] = x * (x - 1.0) * (x - 2.0) / 6.0;
  }

  void eval(double r, Vec3& ur, Vec3& dur) const {
    int s;
    double x, L[4];
    window(r, s, x);
    basis(x, L);
    ur.setZero();
    dur.setZero();
    for (int i = 0; i < 4; ++i) {
      ur += L[i] * u.col(s + i);
      dur += L[i] * du.col(s + i);
    }
  }
};

ArrayXd row_arr(const Matrix3Xd& m, int c) { return m.row(c).transpose().array(); }

Mat3 wedge(const Vec3& a, const Vec3& b) {
  return a * b.transpose() - b * a.transpose();
}

// rows of O are (v, w, u); Newton-Schulz polar orthonormalization
void reorthonormalize(Mat3& O) {
  for (int it = 0; it < 3; ++it) O = 1.5 * O - 0.5 * O * O.transpose() * O;
}

}  // namespace

namespace {

// map profile components are (odd, odd, even) through the origin
Matrix3Xd profile_derivative(const RadialGrid& g, const Matrix3Xd& u) {
  Matrix3Xd du(3, g.n);
  du.row(0) = derivative_c6p(g, row_arr(u, 0), -1).matrix().transpose();
  du.row(1) = derivative_c6p(g, row_arr(u, 1), -1).matrix().transpose();
  du.row(2) = derivative_c6p(g, row_arr(u, 2), 1).matrix().transpose();
  return du;
}

}  // namespace

MapState solve_coulomb_frame(const Matrix3Xd& u_profile, const GridPtr& grid,
                             const FrameOptions& opts) {
  const RadialGrid& g = *grid;
  if (u_profile.cols() != g.n) throw GridMismatch("solve_coulomb_frame: profile length != grid.n");
  for (int j = 0; j < g.n; ++j) {
    const double nrm = u_profile.col(j).norm();
    if (std::abs(nrm - 1.0) > 1e-10)
      throw InvalidInput("solve_coulomb_frame: profile is not unit length at node " + std::to_string(j));
  }
  const Vec3 khat(0.0, 0.0, 1.0);
  if (opts.check_boundary) {
    const double bdry = (u_profile.col(g.n - 1) + khat).norm();
    if (bdry > 0.05)
      throw InvalidInput("solve_coulomb_frame: boundary value is not near -k (defect " +
                         std::to_string(bdry) + ")");
  }

  Matrix3Xd du = profile_derivative(g, u_profile);
  ProfileInterp interp{g, u_profile, du};

  // frame at r_max: tangent projection of i at the last sampled map value
  const Vec3 u_end = u_profile.col(g.n - 1);
  Vec3 v_end = Vec3(1.0, 0.0, 0.0) - (u_end.x()) * u_end;
  const double vn = v_end.norm();
  if (vn < 1e-8)
    throw InvalidInput("solve_coulomb_frame: cannot seed frame, i is normal to the sphere there");
  v_end /= vn;
  const Vec3 w_end = u_end.cross(v_end);

  Mat3 O;  // rows v, w, u
  O.row(0) = v_end.transpose();
  O.row(1) = w_end.transpose();
  O.row(2) = u_end.transpose();

  MapState map;
  map.grid = grid;
  map.u = u_profile;
  map.v.resize(3, g.n);
  map.w.resize(3, g.n);

  auto rhs = [&](double r, const Mat3& X) -> Mat3 {
    Vec3 ur, dur;
    interp.eval(r, ur, dur);
    return X * wedge(dur, ur).transpose();  // row-vector convention: x' = x M^T
  };

  double r = g.r_max;
  for (int j = g.n - 1; j >= 0; --j) {
    const double target = g.nodes[j];
    const double dr = target - r;  // negative
    const Mat3 k1 = rhs(r, O);
    const Mat3 k2 = rhs(r + 0.5 * dr, O + (0.5 * dr) * k1);
    const Mat3 k3 = rhs(r + 0.5 * dr, O + (0.5 * dr) * k2);
    const Mat3 k4 = rhs(r + dr, O + dr * k3);
    O += (dr / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    reorthonormalize(O);
    r = target;
    // pin the map row to the exact sample and realign the tangent pair
    const Vec3 u_exact = u_profile.col(j);
    Vec3 v = O.row(0).transpose();
    v -= v.dot(u_exact) * u_exact;
    v.normalize();
    const Vec3 w = u_exact.cross(v);
    O.row(0) = v.transpose();
    O.row(1) = w.transpose();
    O.row(2) = u_exact.transpose();
    map.v.col(j) = v;
    map.w.col(j) = w;
  }
  return map;
}

GaugeState extract_fields(const MapState& map) {
  const RadialGrid& g = *map.grid;
  const int n = g.n;
  Matrix3Xd du = profile_derivative(g, map.u);

  GaugeState gs;
  gs.grid = map.grid;
  gs.psi1.resize(n);
  gs.psi2.resize(n);
  gs.a2.resize(n);
  for (int j = 0; j < n; ++j) {
    const Vec3 d = du.col(j);
    const Vec3 v = map.v.col(j);
    const Vec3 w = map.w.col(j);
    const Vec3 u = map.u.col(j);
    gs.psi1[j] = Complex(d.dot(v), d.dot(w));
    const Vec3 ku(-u.y(), u.x(), 0.0);  // k x u = d_theta u at theta = 0
    gs.psi2[j] = Complex(ku.dot(v), ku.dot(w));
    gs.a2[j] = u.z();
  }
  const ArrayXcd p2r = gs.psi2 / g.nodes.cast<Complex>();
  gs.psi_plus = gs.psi1 + Complex(0.0, 1.0) * p2r;
  gs.psi_minus = gs.psi1 - Complex(0.0, 1.0) * p2r;
  const ArrayXd gq = gs.psi1.abs2() - p2r.abs2();
  gs.a0 = -0.5 * gq + rdr_tail_exact(g, gq);
  return gs;
}

double energy(const MapState& map) {
  const RadialGrid& g = *map.grid;
  Matrix3Xd du = profile_derivative(g, map.u);
  ArrayXd q(g.n);  // density * r, integrated by the fourth-order cumulative rule
  for (int j = 0; j < g.n; ++j) {
    const double r = g.nodes[j];
    const double horiz = map.u(0, j) * map.u(0, j) + map.u(1, j) * map.u(1, j);
    q[j] = (du.col(j).squaredNorm() + horiz / (r * r)) * r;
  }
  const ArrayXd head = cumulative_from_zero(g, q);
  const ArrayXd tail = cumulative_to_rmax(g, q);
  return M_PI * (head[g.n - 1] + tail[g.n - 1]);
}

ArrayXcd compute_psi0(const GaugeState& gauge) {
  const RadialGrid& g = *gauge.grid;
  const ArrayXcd dpsi1 = derivative_c6p(g, gauge.psi1, 1);
  const ArrayXcd r = g.nodes.cast<Complex>();
  return Complex(0.0, 1.0) *
         (dpsi1 + gauge.psi1 / r + Complex(0.0, 1.0) * gauge.a2.cast<Complex>() * gauge.psi2 / (r * r));
}

double compatibility_residual(const GaugeState& gauge) {
  const RadialGrid& g = *gauge.grid;
  const ArrayXcd q = g.nodes.cast<Complex>() * (gauge.psi_plus - gauge.psi_minus);
  const ArrayXcd res = derivative_c6p(g, q, -1) + gauge.a2.cast<Complex>() * (gauge.psi_plus + gauge.psi_minus);
  const double num = norm_l2_rdr(g, res);
  const double den = norm_l2_rdr(g, gauge.psi_plus) + norm_l2_rdr(g, gauge.psi_minus);
  return den > 0.0 ? num / den : num;
}

GaugeState gauge_from_pair(const GridPtr& grid, const ArrayXcd& psi_plus, const ArrayXcd& psi_minus) {
  const RadialGrid& g = *grid;
  if (psi_plus.size() != g.n || psi_minus.size() != g.n)
    throw GridMismatch("gauge_from_pair: field length != grid.n");
  GaugeState gs;
  gs.grid = grid;
  gs.psi_plus = psi_plus;
  gs.psi_minus = psi_minus;
  gs.psi1 = 0.5 * (psi_plus + psi_minus);
  const ArrayXcd p2r = (psi_plus - psi_minus) / Complex(0.0, 2.0);
  gs.psi2 = g.nodes.cast<Complex>() * p2r;
  const ArrayXd dmod = psi_plus.abs2() - psi_minus.abs2();
  gs.a2 = -1.0 + 0.25 * cumulative_from_zero(g, (dmod * g.nodes).eval());
  const ArrayXd gq = (psi_plus.conjugate() * psi_minus).real();
  gs.a0 = -0.5 * gq + rdr_tail_exact(g, gq);
  return gs;
}

double frame_defect(const MapState& map) {
  double worst = 0.0;
  for (int j = 0; j < map.grid->n; ++j) {
    const Vec3 v = map.v.col(j), w = map.w.col(j), u = map.u.col(j);
    double d = std::abs(v.squaredNorm() - 1.0);
    d = std::max(d, std::abs(w.squaredNorm() - 1.0));
    d = std::max(d, std::abs(u.squaredNorm() - 1.0));
    d = std::max(d, std::abs(v.dot(u)));
    d = std::max(d, std::abs(w.dot(u)));
    d = std::max(d, std::abs(v.dot(w)));
    d = std::max(d, (v.cross(w) - u).cwiseAbs().maxCoeff());
    d = std::max(d, (w.cross(u) - v).cwiseAbs().maxCoeff());
    d = std::max(d, (u.cross(v) - w).cwiseAbs().maxCoeff());
    worst = std::max(worst, d);
  }
  return worst;
}

ArrayXd coulomb_defect(const MapState& map) {
  const RadialGrid& g = *map.grid;
  Matrix3Xd dv(3, g.n);
  dv.row(0) = derivative_c4p(g, row_arr(map.v, 0), 1).matrix().transpose();
  dv.row(1) = derivative_c4p(g, row_arr(map.v, 1), 1).matrix().transpose();
  dv.row(2) = derivative_c4p(g, row_arr(map.v, 2), -1).matrix().transpose();
  ArrayXd a1(g.n);
  for (int j = 0; j < g.n; ++j) a1[j] = dv.col(j).dot(map.w.col(j));
  return a1;
}

}  // namespace equimap
