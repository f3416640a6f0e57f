#include "equimap/radial.hpp"

#include <cmath>

namespace equimap {

GridPtr make_grid(int n, double r_max) {
  if (n < 8) throw InvalidInput("RadialGrid: n must be at least 8");
  if (!(r_max > 0.0) || !std::isfinite(r_max)) throw InvalidInput("RadialGrid: r_max must be positive");
  auto g = std::make_shared<RadialGrid>();
  g->n = n;
  g->r_max = r_max;
  const double h = r_max / n;
  g->nodes.resize(n);
  g->weights.resize(n);
  for (int j = 0; j < n; ++j) {
    const double r = (j + 0.5) * h;
    g->nodes[j] = r;
    g->weights[j] = r * h;
  }
  return g;
}

RadialField make_field(const GridPtr& g, const ArrayXcd& values) { return RadialField(g, values); }

RadialField zero_field(const GridPtr& g) { return RadialField(g, ArrayXcd::Zero(g->n)); }

void require_same_grid(const RadialField& f, const RadialGrid& g, const char* where) {
  if (!f.grid || !same_grid(*f.grid, g))
    throw GridMismatch(std::string(where) + ": field lives on a different grid");
}

bool all_finite(const ArrayXcd& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!std::isfinite(v[i].real()) || !std::isfinite(v[i].imag())) return false;
  return true;
}

bool all_finite(const ArrayXd& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!std::isfinite(v[i])) return false;
  return true;
}

Complex integrate_rdr(const RadialField& f) { return integrate_rdr(*f.grid, f.v); }

double integrate_rdr(const RadialGrid& g, const ArrayXd& f) {
  return (g.weights * f).sum();
}

Complex integrate_rdr(const RadialGrid& g, const ArrayXcd& f) {
  return Complex((g.weights * f.real()).sum(), (g.weights * f.imag()).sum());
}

// ---- cumulative quadrature --------------------------------------------------
//
// Segment rule: integrate the Lagrange cubic through four consecutive nodes.
// The grid is uniform so only a handful of weight patterns occur; they are
// derived here once by integrating the cardinal cubics
//   L0 = -(x-1)(x-2)(x-3)/6, L1 = x(x-2)(x-3)/2,
//   L2 = -x(x-1)(x-3)/2,     L3 = x(x-1)(x-2)/6
// over [a, b] in node units.

namespace {

struct Quad4 {
  double w[4];
};

Quad4 cubic_weights(double a, double b) {
  auto ip = [](double c3, double c2, double c1, double c0, double x) {
    return ((c3 / 4.0 * x + c2 / 3.0) * x + c1 / 2.0) * x * x + c0 * x;
  };
  Quad4 q;
  // monomial coefficients (c3,c2,c1,c0) of the cardinal cubics
  const double C[4][4] = {
      {-1.0 / 6.0, 1.0, -11.0 / 6.0, 1.0},
      {0.5, -2.5, 3.0, 0.0},
      {-0.5, 2.0, -1.5, 0.0},
      {1.0 / 6.0, -0.5, 1.0 / 3.0, 0.0},
  };
  for (int i = 0; i < 4; ++i)
    q.w[i] = ip(C[i][0], C[i][1], C[i][2], C[i][3], b) - ip(C[i][0], C[i][1], C[i][2], C[i][3], a);
  return q;
}

template <typename Array>
Array cum_from_zero_impl(const RadialGrid& g, const Array& q) {
  const int n = g.n;
  const double h = g.spacing();
  Array out(n);
  // [0, r_1]: cubic through nodes 0..3, node 0 sits at x=0, the lower limit
  // r=0 is x=-1/2.
  static const Quad4 head = cubic_weights(-0.5, 0.0);
  static const Quad4 left = cubic_weights(0.0, 1.0);    // stencil at segment start
  static const Quad4 mid = cubic_weights(1.0, 2.0);     // centered stencil
  static const Quad4 right = cubic_weights(2.0, 3.0);   // stencil at segment end
  typename Array::Scalar acc = head.w[0] * q[0] + head.w[1] * q[1] + head.w[2] * q[2] + head.w[3] * q[3];
  out[0] = h * acc;
  for (int j = 0; j < n - 1; ++j) {
    const Quad4* w;
    int s;
    if (j == 0) {
      w = &left;
      s = 0;
    } else if (j >= n - 2) {
      w = &right;
      s = n - 4;
    } else {
      w = &mid;
      s = j - 1;
    }
    acc += w->w[0] * q[s] + w->w[1] * q[s + 1] + w->w[2] * q[s + 2] + w->w[3] * q[s + 3];
    out[j + 1] = h * acc;
  }
  return out;
}

template <typename Array>
Array cum_to_rmax_impl(const RadialGrid& g, const Array& q) {
  const int n = g.n;
  const double h = g.spacing();
  Array out(n);
  // [r_n, r_max]: cubic through the last 4 nodes; r_n is x=3, r_max is x=3.5.
  static const Quad4 tail = cubic_weights(3.0, 3.5);
  static const Quad4 left = cubic_weights(0.0, 1.0);
  static const Quad4 mid = cubic_weights(1.0, 2.0);
  static const Quad4 right = cubic_weights(2.0, 3.0);
  typename Array::Scalar acc =
      tail.w[0] * q[n - 4] + tail.w[1] * q[n - 3] + tail.w[2] * q[n - 2] + tail.w[3] * q[n - 1];
  out[n - 1] = h * acc;
  for (int j = n - 2; j >= 0; --j) {
    const Quad4* w;
    int s;
    if (j == 0) {
      w = &left;
      s = 0;
    } else if (j >= n - 2) {
      w = &right;
      s = n - 4;
    } else {
      w = &mid;
      s = j - 1;
    }
    acc += w->w[0] * q[s] + w->w[1] * q[s + 1] + w->w[2] * q[s + 2] + w->w[3] * q[s + 3];
    out[j] = h * acc;
  }
  return out;
}

template <typename Array>
Array rdr_tail_impl(const RadialGrid& g, const Array& f) {
  const int n = g.n;
  const double h = g.spacing();
  Array out(n);
  typename Array::Scalar suffix{};
  for (int j = n - 1; j >= 0; --j) {
    const double gamma = (j + 0.25) / (j + 0.5);  // (l - 3/4)/(l - 1/2), 1-based l
    out[j] = (0.5 * h * gamma / g.nodes[j]) * f[j] + suffix;
    suffix += (h / g.nodes[j]) * f[j];
  }
  return out;
}

}  // namespace

ArrayXd cumulative_from_zero(const RadialGrid& g, const ArrayXd& q) { return cum_from_zero_impl(g, q); }
ArrayXcd cumulative_from_zero(const RadialGrid& g, const ArrayXcd& q) { return cum_from_zero_impl(g, q); }
ArrayXd cumulative_to_rmax(const RadialGrid& g, const ArrayXd& q) { return cum_to_rmax_impl(g, q); }
ArrayXcd cumulative_to_rmax(const RadialGrid& g, const ArrayXcd& q) { return cum_to_rmax_impl(g, q); }
ArrayXd rdr_tail_exact(const RadialGrid& g, const ArrayXd& f) { return rdr_tail_impl(g, f); }
ArrayXcd rdr_tail_exact(const RadialGrid& g, const ArrayXcd& f) { return rdr_tail_impl(g, f); }

RadialField apply_radial_inverse(RadialInverse kind, const RadialField& f) {
  const RadialGrid& g = *f.grid;
  switch (kind) {
    case RadialInverse::D_INV:
      return RadialField(f.grid, (-cumulative_to_rmax(g, f.v)).eval());
    case RadialInverse::RDR_INV:
      return RadialField(f.grid, (-rdr_tail_exact(g, f.v)).eval());
    case RadialInverse::RINV_DR_INV: {
      ArrayXcd q = f.v * g.nodes.cast<Complex>();
      return RadialField(f.grid, cumulative_from_zero(g, q));
    }
  }
  throw InvalidInput("apply_radial_inverse: unknown kind");
}

ArrayXd apply_radial_inverse(RadialInverse kind, const RadialGrid& g, const ArrayXd& f) {
  switch (kind) {
    case RadialInverse::D_INV:
      return -cumulative_to_rmax(g, f);
    case RadialInverse::RDR_INV:
      return -rdr_tail_exact(g, f);
    case RadialInverse::RINV_DR_INV:
      return cumulative_from_zero(g, (f * g.nodes).eval());
  }
  throw InvalidInput("apply_radial_inverse: unknown kind");
}

// ---- derivatives ------------------------------------------------------------

namespace {

template <typename Array>
Array deriv_c2_impl(const RadialGrid& g, const Array& f) {
  const int n = g.n;
  const double h = g.spacing();
  Array out(n);
  out[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
  for (int j = 1; j < n - 1; ++j) out[j] = (f[j + 1] - f[j - 1]) / (2.0 * h);
  out[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
  return out;
}

template <typename Array>
Array deriv_c4_impl(const RadialGrid& g, const Array& f) {
  const int n = g.n;
  const double h = g.spacing();
  Array out(n);
  const double d = 12.0 * h;
  out[0] = (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) / d;
  out[1] = (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) / d;
  for (int j = 2; j < n - 2; ++j)
    out[j] = (f[j - 2] - 8.0 * f[j - 1] + 8.0 * f[j + 1] - f[j + 2]) / d;
  out[n - 2] = (3.0 * f[n - 1] + 10.0 * f[n - 2] - 18.0 * f[n - 3] + 6.0 * f[n - 4] - f[n - 5]) / d;
  out[n - 1] = (25.0 * f[n - 1] - 48.0 * f[n - 2] + 36.0 * f[n - 3] - 16.0 * f[n - 4] + 3.0 * f[n - 5]) / d;
  return out;
}

}  // namespace

namespace {

template <typename Array>
Array deriv_c4p_impl(const RadialGrid& g, const Array& f, int parity, bool second) {
  const int n = g.n;
  const double h = g.spacing();
  const double p = parity >= 0 ? 1.0 : -1.0;
  Array out(n);
  const double d1[5] = {1.0, -8.0, 0.0, 8.0, -1.0};
  const double d2[5] = {-1.0, 16.0, -30.0, 16.0, -1.0};
  const double* c = second ? d2 : d1;
  const double scale = second ? 1.0 / (12.0 * h * h) : 1.0 / (12.0 * h);
  for (int j = 0; j < n - 2; ++j) {
    typename Array::Scalar acc{};
    for (int o = -2; o <= 2; ++o) {
      const int m = j + o;
      if (m < 0)
        acc += c[o + 2] * (p * f[-m - 1]);
      else
        acc += c[o + 2] * f[m];
    }
    out[j] = scale * acc;
  }
  // one-sided closure at the outer edge only
  if (second) {
    const double s1[5] = {11.0 / 12, -5.0 / 3, 0.5, 1.0 / 3, -1.0 / 12};   // offsets +1..-3
    const double s0[5] = {35.0 / 12, -26.0 / 3, 19.0 / 2, -14.0 / 3, 11.0 / 12};  // offsets 0..-4
    typename Array::Scalar acc{};
    for (int i = 0; i < 5; ++i) acc += s1[i] * f[n - 1 - i];
    out[n - 2] = acc / (h * h);
    acc = typename Array::Scalar{};
    for (int i = 0; i < 5; ++i) acc += s0[i] * f[n - 1 - i];
    out[n - 1] = acc / (h * h);
  } else {
    out[n - 2] =
        (3.0 * f[n - 1] + 10.0 * f[n - 2] - 18.0 * f[n - 3] + 6.0 * f[n - 4] - f[n - 5]) / (12.0 * h);
    out[n - 1] = (25.0 * f[n - 1] - 48.0 * f[n - 2] + 36.0 * f[n - 3] - 16.0 * f[n - 4] +
                  3.0 * f[n - 5]) /
                 (12.0 * h);
  }
  return out;
}

}  // namespace

ArrayXd derivative_c2(const RadialGrid& g, const ArrayXd& f) { return deriv_c2_impl(g, f); }
ArrayXcd derivative_c2(const RadialGrid& g, const ArrayXcd& f) { return deriv_c2_impl(g, f); }
ArrayXd derivative_c4(const RadialGrid& g, const ArrayXd& f) { return deriv_c4_impl(g, f); }
ArrayXcd derivative_c4(const RadialGrid& g, const ArrayXcd& f) { return deriv_c4_impl(g, f); }
ArrayXd derivative_c4p(const RadialGrid& g, const ArrayXd& f, int parity) {
  return deriv_c4p_impl(g, f, parity, false);
}
ArrayXcd derivative_c4p(const RadialGrid& g, const ArrayXcd& f, int parity) {
  return deriv_c4p_impl(g, f, parity, false);
}
ArrayXd derivative2_c4p(const RadialGrid& g, const ArrayXd& f, int parity) {
  return deriv_c4p_impl(g, f, parity, true);
}
ArrayXcd derivative2_c4p(const RadialGrid& g, const ArrayXcd& f, int parity) {
  return deriv_c4p_impl(g, f, parity, true);
}

namespace {

template <typename Array>
Array deriv_c6p_impl(const RadialGrid& g, const Array& f, int parity) {
  const int n = g.n;
  const double h = g.spacing();
  const double p = parity >= 0 ? 1.0 : -1.0;
  const double c[7] = {-1.0 / 60, 3.0 / 20, -0.75, 0.0, 0.75, -3.0 / 20, 1.0 / 60};
  Array out(n);
  for (int j = 0; j < n - 3; ++j) {
    typename Array::Scalar acc{};
    for (int o = -3; o <= 3; ++o) {
      const int m = j + o;
      if (m < 0)
        acc += c[o + 3] * (p * f[-m - 1]);
      else
        acc += c[o + 3] * f[m];
    }
    out[j] = acc / h;
  }
  out[n - 3] = (-f[n - 1] + 8.0 * f[n - 2] - 8.0 * f[n - 4] + f[n - 5]) / (12.0 * h);
  out[n - 2] =
      (3.0 * f[n - 1] + 10.0 * f[n - 2] - 18.0 * f[n - 3] + 6.0 * f[n - 4] - f[n - 5]) / (12.0 * h);
  out[n - 1] = (25.0 * f[n - 1] - 48.0 * f[n - 2] + 36.0 * f[n - 3] - 16.0 * f[n - 4] +
                3.0 * f[n - 5]) /
               (12.0 * h);
  return out;
}

}  // namespace

ArrayXd derivative_c6p(const RadialGrid& g, const ArrayXd& f, int parity) {
  return deriv_c6p_impl(g, f, parity);
}
ArrayXcd derivative_c6p(const RadialGrid& g, const ArrayXcd& f, int parity) {
  return deriv_c6p_impl(g, f, parity);
}

// ---- norms ------------------------------------------------------------------

double norm_l2_rdr(const RadialGrid& g, const ArrayXcd& f) {
  return std::sqrt((g.weights * f.abs2()).sum());
}

double norm_l2_rdr(const RadialGrid& g, const ArrayXd& f) {
  return std::sqrt((g.weights * f.square()).sum());
}

double norm_l2_rdr(const RadialField& f) { return norm_l2_rdr(*f.grid, f.v); }

double norm_lp_rdr(const RadialField& f, double p) {
  if (!(p >= 1.0)) throw InvalidInput("norm_lp_rdr: p must be >= 1");
  const RadialGrid& g = *f.grid;
  return std::pow((g.weights * f.v.abs().pow(p)).sum(), 1.0 / p);
}

double norm_l1_rdr(const RadialGrid& g, const ArrayXcd& f) {
  return (g.weights * f.abs()).sum();
}

double norm_h1e(const RadialGrid& g, const ArrayXcd& f) {
  ArrayXcd df = derivative_c2(g, f);
  const double a = (g.weights * df.abs2()).sum();
  const double b = (g.weights * (f / g.nodes.cast<Complex>()).abs2()).sum();
  return std::sqrt(a + b);
}

double norm_h1e(const RadialField& f) { return norm_h1e(*f.grid, f.v); }

double mass(const RadialField& f) {
  const double nrm = norm_l2_rdr(f);
  return nrm * nrm;
}

}  // namespace equimap
