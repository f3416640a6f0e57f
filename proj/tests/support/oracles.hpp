#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "equimap/radial.hpp"

// Test-only reference machinery, kept independent of the library's grid
// quadratures: adaptive Simpson in extended precision, plus fixture
// generators shared across the suites.
namespace oracle {

using Fn = std::function<long double(long double)>;

inline long double simpson(const Fn& f, long double a, long double b) {
  const long double c = 0.5L * (a + b);
  return (b - a) / 6.0L * (f(a) + 4.0L * f(c) + f(b));
}

inline long double adaptive_step(const Fn& f, long double a, long double b, long double whole,
                                 long double tol, int depth) {
  const long double c = 0.5L * (a + b);
  const long double left = simpson(f, a, c);
  const long double right = simpson(f, c, b);
  if (depth <= 0 || std::fabs((double)(left + right - whole)) < 15.0L * tol)
    return left + right + (left + right - whole) / 15.0L;
  return adaptive_step(f, a, c, left, 0.5L * tol, depth - 1) +
         adaptive_step(f, c, b, right, 0.5L * tol, depth - 1);
}

// integral of f over [a, b]; panelled so localized integrands cannot fool the
// first adaptive estimate
inline double integrate(const Fn& f, double a, double b, double tol = 1e-14) {
  const int panels = 64;
  long double acc = 0.0L;
  const long double w = (static_cast<long double>(b) - a) / panels;
  for (int i = 0; i < panels; ++i) {
    const long double pa = a + i * w;
    const long double pb = pa + w;
    acc += adaptive_step(f, pa, pb, simpson(f, pa, pb), tol / panels, 40);
  }
  return (double)acc;
}

// integral of f r dr over [a, b]
inline double integrate_rdr(const Fn& f, double a, double b, double tol = 1e-14) {
  return integrate([&](long double r) { return f(r) * r; }, a, b, tol);
}

// smooth random test field: a few Gaussian bumps under a compact window,
// deterministic per seed
struct SmoothBumps {
  std::vector<double> amp, center, width;
  double r_lo, r_hi;

  static SmoothBumps make(unsigned seed, double r_lo = 0.5, double r_hi = 12.0) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> ua(-1.0, 1.0);
    std::uniform_real_distribution<double> uc(r_lo + 1.0, r_hi - 3.0);
    std::uniform_real_distribution<double> uw(0.4, 1.4);
    SmoothBumps b;
    b.r_lo = r_lo;
    b.r_hi = r_hi;
    for (int i = 0; i < 3; ++i) {
      b.amp.push_back(ua(rng));
      b.center.push_back(uc(rng));
      b.width.push_back(uw(rng));
    }
    return b;
  }

  double window(double r) const {
    if (r <= r_lo || r >= r_hi) return 0.0;
    const double x = (r - r_lo) / (r_hi - r_lo);
    const double y = x * (1.0 - x);
    return std::exp(-0.02 / (y * y));  // flat bump, vanishes to all orders
  }

  double operator()(double r) const {
    double acc = 0.0;
    for (size_t i = 0; i < amp.size(); ++i) {
      const double z = (r - center[i]) / width[i];
      acc += amp[i] * std::exp(-z * z);
    }
    return acc * window(r);
  }
};

inline equimap::ArrayXcd sample(const equimap::RadialGrid& g,
                                const std::function<double(double)>& f) {
  equimap::ArrayXcd v(g.n);
  for (int j = 0; j < g.n; ++j) v[j] = f(g.nodes[j]);
  return v;
}

inline equimap::ArrayXcd sample_c(const equimap::RadialGrid& g,
                                  const std::function<equimap::Complex(double)>& f) {
  equimap::ArrayXcd v(g.n);
  for (int j = 0; j < g.n; ++j) v[j] = f(g.nodes[j]);
  return v;
}

}  // namespace oracle
