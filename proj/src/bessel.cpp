#include "equimap/bessel.hpp"

#include <cmath>
#include <cstdlib>

#include "equimap/errors.hpp"

namespace equimap {

namespace {

constexpr double kSeriesCut = 17.0;

// Ascending series sum_m (-1)^m (x/2)^{k+2m} / (m! (m+k)!), accumulated in
// long double; the worst cancellation near the crossover costs ~6 digits,
// which extended precision absorbs.
long double series_j(int k, long double x) {
  const long double half = x / 2.0L;
  long double term = 1.0L;
  for (int i = 1; i <= k; ++i) term *= half / i;
  long double sum = term;
  const long double x2 = half * half;
  for (int m = 1; m <= 80; ++m) {
    term *= -x2 / (static_cast<long double>(m) * (m + k));
    sum += term;
    if (std::fabs((double)term) < 1e-24L * (1.0L + std::fabs((double)sum))) break;
  }
  return sum;
}

// Hankel asymptotic expansion: J_k(x) = sqrt(2/(pi x)) (P cos(chi) - Q sin(chi)),
// chi = x - k pi/2 - pi/4.  Terms added until they stop decreasing.
long double asymptotic_j(int k, long double x) {
  const long double mu = 4.0L * k * k;
  const long double invz = 1.0L / (8.0L * x);
  long double c = 1.0L;  // c_j = prod(mu - (2i-1)^2)/(j! (8x)^j)
  long double P = 1.0L, Q = 0.0L;
  long double prev = 1e30L;
  for (int j = 1; j <= 40; ++j) {
    c *= (mu - (2.0L * j - 1.0L) * (2.0L * j - 1.0L)) * invz / j;
    const long double a = std::fabs((double)c);
    if (a >= prev) break;
    prev = a;
    switch (j % 4) {
      case 1: Q += c; break;
      case 2: P -= c; break;
      case 3: Q -= c; break;
      case 0: P += c; break;
    }
    if (a < 1e-22L) break;
  }
  const long double chi = x - (0.5L * k + 0.25L) * 3.14159265358979323846264338328L;
  return std::sqrt(2.0L / (3.14159265358979323846264338328L * x)) *
         (P * std::cos(chi) - Q * std::sin(chi));
}

}  // namespace

double bessel_j(int k, double x) {
  if (k < 0 || k > 6) throw InvalidInput("bessel_j: order must be in [0, 6]");
  if (!(x >= 0.0)) throw InvalidInput("bessel_j: argument must be nonnegative");
  if (x == 0.0) return k == 0 ? 1.0 : 0.0;
  if (x < kSeriesCut) return static_cast<double>(series_j(k, x));
  long double j0 = asymptotic_j(0, x);
  if (k == 0) return static_cast<double>(j0);
  long double j1 = asymptotic_j(1, x);
  if (k == 1) return static_cast<double>(j1);
  // upward recurrence, stable here since x > 2k
  long double jm = j0, jc = j1;
  for (int m = 1; m < k; ++m) {
    long double jn = (2.0L * m / x) * jc - jm;
    jm = jc;
    jc = jn;
  }
  return static_cast<double>(jc);
}

}  // namespace equimap
