#pragma once

#include <Eigen/Dense>

#include "equimap/radial.hpp"

namespace equimap {

using Matrix3Xd = Eigen::Matrix3Xd;

// Equivariant map profile u(r) with its Coulomb frame (v, w), one unit
// 3-vector per node each. Orientation convention: v x w = u, w x u = v,
// u x v = w, with (v, w, u) -> (i, -j, -k) at r = r_max.
struct MapState {
  GridPtr grid;
  Matrix3Xd u;
  Matrix3Xd v;
  Matrix3Xd w;
};

// Reduced fields. psi_plus/minus = psi1 +/- i psi2 / r; a2 = u3;
// a0 from the zero-mean normalization at infinity.
struct GaugeState {
  GridPtr grid;
  ArrayXcd psi1;
  ArrayXcd psi2;
  ArrayXcd psi_plus;
  ArrayXcd psi_minus;
  ArrayXd a2;
  ArrayXd a0;

  ArrayXcd psi2_over_r() const { return (psi_plus - psi_minus) / Complex(0.0, 2.0); }
};

struct FrameOptions {
  bool check_boundary = true;  // require |u(r_n) + k| <= 0.05
};

// Solve d_r O = (d_r u (x) u - u (x) d_r u) O inward from r_max by RK4 with
// per-step polar re-orthonormalization; the frame at r_max is the tangent
// projection of i, with w = u x v.
MapState solve_coulomb_frame(const Matrix3Xd& u_profile, const GridPtr& grid,
                             const FrameOptions& opts = {});

// psi1 = d_r u . v + i d_r u . w (five-point derivative), psi2 from the
// angular derivative, a2 = u3, a0 per the zero-mean primitive.
GaugeState extract_fields(const MapState& map);

// E = pi int (|d_r u|^2 + (u1^2 + u2^2)/r^2) r dr.
double energy(const MapState& map);

// psi0 = i (d_r psi1 + psi1 / r + i a2 psi2 / r^2).
ArrayXcd compute_psi0(const GaugeState& gauge);

// || d_r [r (psi+ - psi-)] + a2 (psi+ + psi-) || / (||psi+|| + ||psi-||);
// absolute residual when the denominator vanishes.
double compatibility_residual(const GaugeState& gauge);

// Assemble a gauge state from a (psi+, psi-) pair: (2.25)-linear recovery,
// a2 from the cumulative quadrature, a0 from the zero-mean primitive.
GaugeState gauge_from_pair(const GridPtr& grid, const ArrayXcd& psi_plus,
                           const ArrayXcd& psi_minus);

// Orthonormality / orientation defect of a frame (max over nodes).
double frame_defect(const MapState& map);

// A1 = d_r v . w sampled on the grid (should vanish in the Coulomb gauge).
ArrayXd coulomb_defect(const MapState& map);

}  // namespace equimap
