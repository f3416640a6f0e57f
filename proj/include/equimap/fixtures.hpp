#pragma once

#include <Eigen/Dense>

#include "equimap/radial.hpp"

namespace equimap {

using Matrix3Xd = Eigen::Matrix3Xd;

// Map profile from the polar angle phi(r) = pi - a r e^{-(r-center)^2/2}:
// u(r) = (sin phi, 0, cos phi). Tends to -k at both ends, energy < 4 pi for
// moderate a. A nonzero center keeps the reduced fields exponentially small
// at the origin, which the evolution fixtures use.
Matrix3Xd bump_profile(const RadialGrid& g, double a, double center = 0.0);

// The constant map -k.
Matrix3Xd constant_south_profile(const RadialGrid& g);

// Smooth plateau cutoff: 1 for s <= 1, 0 for s >= 2, C^2 quintic bridge.
// Used as a(r) = plateau(r/R) in the localized charge identity.
double plateau_cutoff(double s);
double plateau_cutoff_d(double s);   // d/ds
double plateau_cutoff_dd(double s);  // d^2/ds^2

// Virial weight a(r) = r^2 plateau(r/R) and its first two derivatives.
struct CutoffProfile {
  ArrayXd a;
  ArrayXd da;
  ArrayXd dda;
};

CutoffProfile make_plateau_cutoff(const RadialGrid& g, double R);
CutoffProfile make_virial_weight(const RadialGrid& g, double R);

}  // namespace equimap
