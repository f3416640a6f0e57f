#include "equimap/solitons.hpp"

#include <cmath>

#include "equimap/fixtures.hpp"

namespace equimap {

HarmonicProfile harmonic_profile(const SolitonParams& p, const RadialGrid& g) {
  if (p.lambda < 0.0) throw InvalidInput("harmonic_profile: lambda must be nonnegative");
  HarmonicProfile out;
  out.psi2.resize(g.n);
  out.a2.resize(g.n);
  const Complex phase = std::polar(1.0, p.alpha);
  for (int j = 0; j < g.n; ++j) {
    const double s = p.lambda * g.nodes[j];
    out.psi2[j] = phase * soliton_h1(s);
    out.a2[j] = p.lambda == 0.0 ? -1.0 : soliton_h3(s);
  }
  return out;
}

MapState soliton_map(const SolitonParams& p, const GridPtr& grid) {
  if (p.lambda < 0.0) throw InvalidInput("soliton_map: lambda must be nonnegative");
  const RadialGrid& g = *grid;
  Matrix3Xd u(3, g.n);
  if (p.lambda == 0.0) {
    u = constant_south_profile(g);
  } else {
    const double ca = std::cos(p.alpha), sa = std::sin(p.alpha);
    for (int j = 0; j < g.n; ++j) {
      const double s = p.lambda * g.nodes[j];
      const double h1 = soliton_h1(s);
      u(0, j) = h1 * ca;
      u(1, j) = h1 * sa;
      u(2, j) = soliton_h3(s);
    }
  }
  FrameOptions opts;
  opts.check_boundary = false;  // h3 -> +1 leaves the -k class
  return solve_coulomb_frame(u, grid, opts);
}

}  // namespace equimap
