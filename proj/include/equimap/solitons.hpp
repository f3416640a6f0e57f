#pragma once

#include "equimap/gauge.hpp"
#include "equimap/radial.hpp"

namespace equimap {

// Harmonic-map family parameters: lambda = 0 degenerates to the constant map.
struct SolitonParams {
  double lambda = 1.0;
  double alpha = 0.0;
};

struct HarmonicProfile {
  ArrayXcd psi2;
  ArrayXd a2;
};

inline double soliton_h1(double r) { return 2.0 * r / (1.0 + r * r); }
inline double soliton_h3(double r) { return (r * r - 1.0) / (r * r + 1.0); }

// (psi2, a2) = (e^{i alpha} h1(lambda r), h3(lambda r)) sampled on the grid.
HarmonicProfile harmonic_profile(const SolitonParams& p, const RadialGrid& g);

// The harmonic map u = (h1(lambda r) cos alpha, h1(lambda r) sin alpha,
// h3(lambda r)) with its Coulomb frame. Leaves the u3(inf) = -1 class, so the
// frame is seeded without the boundary check. lambda = 0 gives the constant
// map -k.
MapState soliton_map(const SolitonParams& p, const GridPtr& grid);

}  // namespace equimap
