#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "equimap/bessel.hpp"
#include "equimap/hankel.hpp"
#include "support/oracles.hpp"

using namespace equimap;

namespace {

RadialField gaussian(const GridPtr& g) {
  return RadialField(g, oracle::sample(*g, [](double r) { return std::exp(-0.5 * r * r); }));
}

// random field band-limited by construction: inverse transform of a smooth
// spectrum supported below 0.8 xi_max
RadialField random_band_limited(const HankelPlan& plan, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> nd(0.0, 1.0);
  const int n = plan.grid->n;
  ArrayXcd spec(n);
  const double cut = 0.8 * plan.xi_max;
  for (int l = 0; l < n; ++l) {
    const double xi = plan.freq_nodes[l];
    const double env = std::exp(-8.0 * xi * xi / (cut * cut));
    spec[l] = Complex(nd(rng), nd(rng)) * env * (xi < cut ? 1.0 : 0.0);
  }
  return transform_inverse(plan, spec);
}

double rel_l2(const RadialGrid& g, const ArrayXcd& got, const ArrayXcd& want) {
  return norm_l2_rdr(g, (got - want).eval()) / norm_l2_rdr(g, want);
}

}  // namespace

TEST_CASE("plan construction contracts") {
  auto g = make_grid(1024, 32.0);
  auto p0 = build_plan(0, g);
  auto p2 = build_plan(2, g);
  // eigenfrequency lattice: spacing ~ pi/r_max at the bottom of the band
  CHECK(p0->freq_nodes[0] < 0.2);
  CHECK(std::abs((p0->freq_nodes[10] - p0->freq_nodes[9]) - M_PI / 32.0) < 0.01);
  CHECK(p0->xi_max == p0->freq_nodes[p0->grid->n - 1]);
  CHECK_THROWS_AS(build_plan(-1, g), InvalidInput);

  for (auto& plan : {p0, p2}) {
    RadialField f = gaussian(g);
    RadialField back = transform_inverse(*plan, transform_forward(*plan, f));
    CHECK(rel_l2(*g, back.v, f.v) < 1e-10);
  }

  // determinism: rebuilding the plan gives bit-identical matrices
  auto p0b = build_plan(0, g);
  CHECK((p0->forward - p0b->forward).cwiseAbs().maxCoeff() == 0.0);
  CHECK((p0->inverse - p0b->inverse).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("forward transform of self-reciprocal profiles") {
  auto g = make_grid(1024, 32.0);
  auto p0 = build_plan(0, g);
  ArrayXcd spec = transform_forward(*p0, gaussian(g));
  ArrayXcd want(g->n);
  for (int l = 0; l < g->n; ++l) {
    const double xi = p0->freq_nodes[l];
    want[l] = std::exp(-0.5 * xi * xi);
  }
  // compare in L2(xi dxi), relative. The order-0 spectrum carries the
  // intrinsic h^2/24 |f(0)| origin bias of the midpoint rdr quadrature, so
  // the agreement floor sits near 1e-4 at this resolution rather than at
  // the transform's own rounding level.
  const double err = std::sqrt((p0->freq_weights * (spec - want).abs2()).sum()) /
                     std::sqrt((p0->freq_weights * want.abs2()).sum());
  CHECK(err < 3e-4);

  auto p2 = build_plan(2, g);
  RadialField f2(g, oracle::sample(*g, [](double r) { return r * r * std::exp(-0.5 * r * r); }));
  ArrayXcd spec2 = transform_forward(*p2, f2);
  ArrayXcd want2(g->n);
  for (int l = 0; l < g->n; ++l) {
    const double xi = p2->freq_nodes[l];
    want2[l] = xi * xi * std::exp(-0.5 * xi * xi);
  }
  const double err2 = std::sqrt((p2->freq_weights * (spec2 - want2).abs2()).sum()) /
                      std::sqrt((p2->freq_weights * want2.abs2()).sum());
  CHECK(err2 < 1e-5);
}

TEST_CASE("round trip on random band-limited fields") {
  auto g = make_grid(1024, 32.0);
  for (int order : {0, 2}) {
    auto plan = build_plan(order, g);
    for (unsigned seed = 1; seed <= 10; ++seed) {
      RadialField f = random_band_limited(*plan, seed);
      RadialField back = transform_inverse(*plan, transform_forward(*plan, f));
      CHECK(rel_l2(*g, back.v, f.v) < 1e-10);
    }
  }
}

TEST_CASE("H_k on closed forms") {
  auto g = make_grid(1024, 32.0);
  auto p0 = build_plan(0, g);
  RadialField f = gaussian(g);
  RadialField hf = apply_hk(*p0, f);
  double worst = 0.0;
  for (int j = 3; j < g->n; ++j) {  // interior sup-norm
    if (g->nodes[j] > 16.0) break;
    const double r = g->nodes[j];
    const double want = (r * r - 2.0) * std::exp(-0.5 * r * r);
    worst = std::max(worst, std::abs(hf.v[j] - want));
  }
  CHECK(worst < 1e-6);

  // H_2 on its own grid frequency: the discrete mode at xi0 is an exact
  // eigenvector, and the sampled Bessel profile at the same frequency agrees
  // with the mode up to the discretization of the operator
  auto p2 = build_plan(2, g);
  const int l0 = 200;
  const double xi0 = p2->freq_nodes[l0];
  {
    RadialField mode(g, p2->modes.col(l0).array().cast<Complex>());
    RadialField hm = apply_hk(*p2, mode);
    double worst2 = 0.0;
    for (int j = 0; j < g->n; ++j)
      worst2 = std::max(worst2, std::abs(hm.v[j] - p2->lambdas[l0] * mode.v[j]));
    CHECK(worst2 < 1e-8 * xi0 * xi0 * mode.v.abs().maxCoeff());
    CHECK(std::abs(-p2->lambdas[l0] - xi0 * xi0) < 1e-10 * xi0 * xi0);
  }
  {
    RadialField j2(g, oracle::sample(*g, [&](double r) { return bessel_j(2, xi0 * r); }));
    RadialField hj2 = apply_hk(*p2, j2);
    double worst2 = 0.0;
    for (int j = 3; j < g->n - 3; ++j)
      worst2 = std::max(worst2, std::abs(hj2.v[j] + xi0 * xi0 * j2.v[j]));
    CHECK(worst2 < 2e-2 * xi0 * xi0);  // boundary-condition mismatch at r_max dominates
  }

  RadialField hz = apply_hk(*p0, zero_field(g));
  CHECK(hz.v.abs().maxCoeff() == 0.0);
}

TEST_CASE("free propagator: identity, closed form, semigroup, mass") {
  auto g = make_grid(1024, 32.0);
  auto p0 = build_plan(0, g);
  RadialField f = gaussian(g);

  RadialField id = free_propagate(*p0, f, 0.0);
  CHECK(rel_l2(*g, id.v, f.v) < 1e-12);

  // closed-form spreading gaussian at t = 1
  const double t = 1.0;
  ArrayXcd want(g->n);
  const Complex denom(1.0, 2.0 * t);
  for (int j = 0; j < g->n; ++j) {
    const double r = g->nodes[j];
    want[j] = std::exp(-0.5 * r * r / denom) / denom;
  }
  // same origin-bias floor as the forward values: ~1e-4 at n = 1024
  RadialField got = free_propagate(*p0, f, t);
  CHECK(rel_l2(*g, got.v, want) < 4e-4);

  // semigroup property
  RadialField ab = free_propagate(*p0, free_propagate(*p0, f, 0.3), 0.7);
  RadialField once = free_propagate(*p0, f, 1.0);
  CHECK(norm_l2_rdr(*g, (ab.v - once.v).eval()) < 1e-9 * norm_l2_rdr(f));

  // mass conservation across t in [-10, 10]
  const double m0 = norm_l2_rdr(f);
  for (double tt : {-10.0, -3.5, 0.25, 2.0, 10.0}) {
    const double m = norm_l2_rdr(free_propagate(*p0, f, tt));
    CHECK(std::abs(m - m0) < 1e-9 * m0);
  }
}

TEST_CASE("Plancherel on smooth fixtures") {
  auto g = make_grid(1024, 32.0);
  for (int order : {0, 2}) {
    auto plan = build_plan(order, g);
    RadialField f(g, oracle::sample(*g, [order](double r) {
                    return std::pow(r, order) * std::exp(-0.55 * r * r);
                  }));
    const double space = norm_l2_rdr(f);
    const double freq = norm_l2_xidxi(*plan, transform_forward(*plan, f));
    CHECK(std::abs(space - freq) < 1e-6 * space);
  }
}

TEST_CASE("equivariant lifting: H1e equals the order-1 spectral norm") {
  auto g = make_grid(2048, 32.0);
  auto p1 = build_plan(1, g);
  RadialField f(g, oracle::sample(*g, [](double r) { return r * std::exp(-0.5 * r * r); }));
  const double spectral = std::sqrt(
      (p1->freq_weights * (p1->freq_nodes.square() * transform_forward(*p1, f).abs2())).sum());
  CHECK(std::abs(norm_h1e(f) - spectral) < 1e-4);

  // order-2 analogue carries the k^2 = 4 weight on the 1/r term
  auto p2 = build_plan(2, g);
  RadialField f2(g, oracle::sample(*g, [](double r) { return r * r * std::exp(-0.5 * r * r); }));
  const double spectral2 = std::sqrt(
      (p2->freq_weights * (p2->freq_nodes.square() * transform_forward(*p2, f2).abs2())).sum());
  const ArrayXcd df2 = derivative_c2(*g, f2.v);
  const double direct2 = std::sqrt((g->weights * df2.abs2()).sum() +
                                   4.0 * (g->weights * (f2.v / g->nodes.cast<Complex>()).abs2()).sum());
  CHECK(std::abs(direct2 - spectral2) < 1e-4 * direct2);
}

TEST_CASE("grid mismatch is rejected") {
  auto g = make_grid(256, 32.0);
  auto g2 = make_grid(256, 16.0);
  auto plan = build_plan(0, g);
  RadialField f = gaussian(g2);
  CHECK_THROWS_AS(transform_forward(*plan, f), GridMismatch);
}
