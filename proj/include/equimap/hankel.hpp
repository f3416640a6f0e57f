#pragma once

#include <Eigen/Dense>

#include "equimap/radial.hpp"

namespace equimap {

// Order-k discrete Hankel transform pair on a shared radial grid.
//
// The pair diagonalizes a sixth-order, exactly W-symmetric discretization of
// H_k = d_r^2 + (1/r) d_r - k^2/r^2: freq_nodes are the discrete
// eigenfrequencies sqrt(-lambda_l) (a lattice close to the Bessel zeros of
// order k over r_max), modes are the W-orthonormal eigenvectors, and the
// forward/inverse matrices expand in and synthesize from that basis. That
// makes the round trip, the Plancherel identity and every propagator
// e^{i t H_k} exact in the discrete rdr inner product; spectrum values track
// the continuum transform to the accuracy of the mode shapes.
struct HankelPlan {
  int order = 0;
  GridPtr grid;
  double xi_max = 0.0;
  ArrayXd freq_nodes;
  ArrayXd freq_weights;  // per-mode weights for the discrete xi dxi measure
  ArrayXd lambdas;       // eigenvalues of the discrete H_k, lambda_l ~ -xi_l^2
  Eigen::MatrixXd modes;  // W-orthonormal eigenvectors, one per column
  Eigen::MatrixXd forward;
  Eigen::MatrixXd inverse;
  double cond_estimate = 0.0;
};

using PlanPtr = std::shared_ptr<const HankelPlan>;

double default_xi_max(int order, const RadialGrid& g);

// xi_max <= 0 lets the plan expose its own lattice edge; a positive value is
// validated against the attainable bandwidth and recorded.
PlanPtr build_plan(int order, const GridPtr& grid, double xi_max = 0.0);

enum class Direction { Forward, Inverse };

// Forward: field on grid -> spectrum on freq_nodes. Inverse: spectrum -> field.
ArrayXcd transform_forward(const HankelPlan& plan, const RadialField& f);
RadialField transform_inverse(const HankelPlan& plan, const ArrayXcd& spectrum);

// H_k f = d_r^2 f + (1/r) d_r f - (k^2/r^2) f, applied spectrally as
// inverse(-xi^2 forward(f)).
RadialField apply_hk(const HankelPlan& plan, const RadialField& f);

// e^{i t H_k} f = inverse(e^{-i t xi^2} forward(f)).
RadialField free_propagate(const HankelPlan& plan, const RadialField& f, double t);

// Dense one-step propagator matrix inverse * diag(e^{-i dt xi^2}) * forward,
// precomputed once per (plan, dt) for time stepping.
Eigen::MatrixXcd make_stepper(const HankelPlan& plan, double dt);

double norm_l2_xidxi(const HankelPlan& plan, const ArrayXcd& spectrum);

// Band-limited interpolation: evaluate the plan's spectral representation of f
// at arbitrary radii (used for rescaling fields onto the same grid).
ArrayXcd spectral_resample(const HankelPlan& plan, const RadialField& f, const ArrayXd& radii);

}  // namespace equimap
