#pragma once

namespace equimap {

// Bessel function of the first kind J_k(x), integer order 0 <= k <= 6, x >= 0.
// Power series in extended precision below the crossover, Hankel asymptotic
// expansion for J0/J1 above it with stable upward recurrence for k >= 2.
// Absolute accuracy ~1e-13 over the argument range used by the transforms.
double bessel_j(int k, double x);

}  // namespace equimap
