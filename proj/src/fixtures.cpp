#include "equimap/fixtures.hpp"

#include <cmath>

namespace equimap {

Matrix3Xd bump_profile(const RadialGrid& g, double a, double center) {
  Matrix3Xd u(3, g.n);
  for (int j = 0; j < g.n; ++j) {
    const double r = g.nodes[j];
    const double phi = M_PI - a * r * std::exp(-0.5 * (r - center) * (r - center));
    u(0, j) = std::sin(phi);
    u(1, j) = 0.0;
    u(2, j) = std::cos(phi);
  }
  return u;
}

Matrix3Xd constant_south_profile(const RadialGrid& g) {
  Matrix3Xd u = Matrix3Xd::Zero(3, g.n);
  u.row(2).setConstant(-1.0);
  return u;
}

// quintic smoothstep on [1, 2], C^2 at both ends
double plateau_cutoff(double s) {
  if (s <= 1.0) return 1.0;
  if (s >= 2.0) return 0.0;
  const double x = s - 1.0;
  return 1.0 - x * x * x * (10.0 - 15.0 * x + 6.0 * x * x);
}

double plateau_cutoff_d(double s) {
  if (s <= 1.0 || s >= 2.0) return 0.0;
  const double x = s - 1.0;
  return -30.0 * x * x * (1.0 - 2.0 * x + x * x);
}

double plateau_cutoff_dd(double s) {
  if (s <= 1.0 || s >= 2.0) return 0.0;
  const double x = s - 1.0;
  return -60.0 * x * (1.0 - 3.0 * x + 2.0 * x * x);
}

CutoffProfile make_plateau_cutoff(const RadialGrid& g, double R) {
  CutoffProfile c;
  c.a.resize(g.n);
  c.da.resize(g.n);
  c.dda.resize(g.n);
  for (int j = 0; j < g.n; ++j) {
    const double s = g.nodes[j] / R;
    c.a[j] = plateau_cutoff(s);
    c.da[j] = plateau_cutoff_d(s) / R;
    c.dda[j] = plateau_cutoff_dd(s) / (R * R);
  }
  return c;
}

CutoffProfile make_virial_weight(const RadialGrid& g, double R) {
  CutoffProfile c;
  c.a.resize(g.n);
  c.da.resize(g.n);
  c.dda.resize(g.n);
  for (int j = 0; j < g.n; ++j) {
    const double r = g.nodes[j];
    const double s = r / R;
    const double p = plateau_cutoff(s);
    const double dp = plateau_cutoff_d(s) / R;
    const double ddp = plateau_cutoff_dd(s) / (R * R);
    c.a[j] = r * r * p;
    c.da[j] = 2.0 * r * p + r * r * dp;
    c.dda[j] = 2.0 * p + 4.0 * r * dp + r * r * ddp;
  }
  return c;
}

}  // namespace equimap
