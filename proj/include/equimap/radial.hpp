#pragma once

#include <Eigen/Dense>
#include <complex>
#include <memory>

#include "equimap/errors.hpp"

namespace equimap {

using Complex = std::complex<double>;
using ArrayXd = Eigen::ArrayXd;
using ArrayXcd = Eigen::ArrayXcd;

// Uniform midpoint grid on (0, r_max]: r_j = (j - 1/2) h, h = r_max / n.
// Node 0 is never included so 1/r and 1/r^2 factors are always evaluable.
// Quadrature weights w_j = r_j h implement the rdr measure (w_j equals the
// exact integral of r over the j-th cell).
struct RadialGrid {
  int n = 0;
  double r_max = 0.0;
  ArrayXd nodes;
  ArrayXd weights;

  double spacing() const { return r_max / n; }
};

using GridPtr = std::shared_ptr<const RadialGrid>;

GridPtr make_grid(int n, double r_max);

inline bool same_grid(const RadialGrid& a, const RadialGrid& b) {
  return a.n == b.n && a.r_max == b.r_max;
}

// Complex samples on a radial grid. Plain value semantics: copies never alias.
struct RadialField {
  GridPtr grid;
  ArrayXcd v;

  RadialField() = default;
  RadialField(GridPtr g, ArrayXcd values) : grid(std::move(g)), v(std::move(values)) {
    if (!grid || v.size() != grid->n) throw InvalidInput("RadialField: length != grid.n");
  }
  int n() const { return grid ? grid->n : 0; }
};

RadialField make_field(const GridPtr& g, const ArrayXcd& values);
RadialField zero_field(const GridPtr& g);
void require_same_grid(const RadialField& f, const RadialGrid& g, const char* where);
bool all_finite(const ArrayXcd& v);
bool all_finite(const ArrayXd& v);

// ---- quadrature -----------------------------------------------------------

Complex integrate_rdr(const RadialField& f);
double integrate_rdr(const RadialGrid& g, const ArrayXd& f);
Complex integrate_rdr(const RadialGrid& g, const ArrayXcd& f);

// Cumulative integrals against plain ds on the grid, 4th order (cubic
// segment interpolation). `from_zero` returns I_j = int_0^{r_j} q ds,
// `to_rmax` returns I_j = int_{r_j}^{r_max} q ds with zero tail beyond r_max.
ArrayXd cumulative_from_zero(const RadialGrid& g, const ArrayXd& q);
ArrayXcd cumulative_from_zero(const RadialGrid& g, const ArrayXcd& q);
ArrayXd cumulative_to_rmax(const RadialGrid& g, const ArrayXd& q);
ArrayXcd cumulative_to_rmax(const RadialGrid& g, const ArrayXcd& q);

// Tail integral T g (r_j) ~= int_{r_j}^{r_max} g(s)/s ds by a midpoint-split
// rule whose half-cell coefficients are chosen so that the discrete identity
//   sum_j w_j T g (r_j) = 1/2 sum_j w_j g_j
// holds exactly.  That identity is what makes the A_0 mean vanish to rounding.
ArrayXd rdr_tail_exact(const RadialGrid& g, const ArrayXd& f);
ArrayXcd rdr_tail_exact(const RadialGrid& g, const ArrayXcd& f);

// ---- the three integral operators -----------------------------------------

enum class RadialInverse {
  D_INV,        // [d_r]^{-1} f = -int_r^inf f ds
  RDR_INV,      // [r d_r]^{-1} f = -int_r^inf f/s ds
  RINV_DR_INV,  // [r^{-1} d_r]^{-1} f = int_0^r f s ds
};

RadialField apply_radial_inverse(RadialInverse kind, const RadialField& f);
ArrayXd apply_radial_inverse(RadialInverse kind, const RadialGrid& g, const ArrayXd& f);

// ---- derivatives -----------------------------------------------------------

// Second-order centered first derivative, one-sided at both ends.
ArrayXd derivative_c2(const RadialGrid& g, const ArrayXd& f);
ArrayXcd derivative_c2(const RadialGrid& g, const ArrayXcd& f);

// Fourth-order five-point first derivative, one-sided stencils at the ends.
ArrayXd derivative_c4(const RadialGrid& g, const ArrayXd& f);
ArrayXcd derivative_c4(const RadialGrid& g, const ArrayXcd& f);

// Parity-aware fourth-order derivatives: the midpoint lattice mirrors through
// r = 0, so fields with definite parity (f(-r) = parity * f(r)) keep centered
// stencils all the way to the first node. One-sided closure only at r_max.
ArrayXd derivative_c4p(const RadialGrid& g, const ArrayXd& f, int parity);
ArrayXcd derivative_c4p(const RadialGrid& g, const ArrayXcd& f, int parity);
ArrayXd derivative2_c4p(const RadialGrid& g, const ArrayXd& f, int parity);
ArrayXcd derivative2_c4p(const RadialGrid& g, const ArrayXcd& f, int parity);

// Sixth-order parity-aware first derivative (fourth-order one-sided rows at
// the outer edge, where the fields of interest have decayed).
ArrayXd derivative_c6p(const RadialGrid& g, const ArrayXd& f, int parity);
ArrayXcd derivative_c6p(const RadialGrid& g, const ArrayXcd& f, int parity);

// ---- norms ------------------------------------------------------------------

double norm_l2_rdr(const RadialField& f);
double norm_l2_rdr(const RadialGrid& g, const ArrayXcd& f);
double norm_l2_rdr(const RadialGrid& g, const ArrayXd& f);
double norm_lp_rdr(const RadialField& f, double p);  // rejects p < 1
double norm_l1_rdr(const RadialGrid& g, const ArrayXcd& f);

// ||f||_{H1e}^2 = ||d_r f||_{L2(rdr)}^2 + ||f/r||_{L2(rdr)}^2, d_r by
// the centered second-order difference.
double norm_h1e(const RadialField& f);
double norm_h1e(const RadialGrid& g, const ArrayXcd& f);

double mass(const RadialField& f);  // ||f||_{L2(rdr)}^2

}  // namespace equimap
