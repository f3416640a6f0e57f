#include "equimap/hankel.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>

#include "equimap/bessel.hpp"

namespace equimap {

namespace {

// real matrix times complex vector without materializing a complex matrix
ArrayXcd apply_real(const Eigen::MatrixXd& M, const ArrayXcd& x) {
  Eigen::VectorXd re = M * x.real().matrix();
  Eigen::VectorXd im = M * x.imag().matrix();
  ArrayXcd out(x.size());
  out.real() = re.array();
  out.imag() = im.array();
  return out;
}

double bessel_j_prime(int k, double x) {
  if (k == 0) return -bessel_j(1, x);
  return 0.5 * (bessel_j(k - 1, x) - bessel_j(k + 1, x));
}

// Weighted matrix W H_k assembled as an explicitly negative-semidefinite
// quadratic form: W H_k = -G^T R_e G - W k^2/r^2, where G is the sixth-order
// staggered derivative from nodes to cell edges and R_e carries the edge
// weights r_e h of the flux form (1/r) d_r (r d_r). The r = 0 edge has zero
// weight, so no origin closure is needed; ghost nodes below the origin fold
// back with the parity of order k. The result is exactly symmetric, and
// every eigenvalue is nonpositive by construction.
Eigen::MatrixXd build_whk_form(int k, const RadialGrid& g) {
  const int n = g.n;
  const double h = g.spacing();
  const ArrayXd& r = g.nodes;
  const ArrayXd& w = g.weights;
  const double cst[6] = {-3.0 / 640, 25.0 / 384, -75.0 / 64, 75.0 / 64, -25.0 / 384, 3.0 / 640};
  const double sgn = (k % 2 == 0) ? 1.0 : -1.0;

  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(n + 1, n);
  for (int e = 1; e <= n; ++e) {
    for (int i = 0; i < 6; ++i) {
      const int m = e - 3 + i;
      const double c = cst[i] / h;
      if (m < 0)
        G(e, -m - 1) += sgn * c;
      else if (m < n)
        G(e, m) += c;
    }
  }
  Eigen::VectorXd edge_w(n + 1);
  for (int e = 0; e <= n; ++e) edge_w[e] = e * h * h;  // r_e * h
  Eigen::MatrixXd WA = -(G.transpose() * edge_w.asDiagonal() * G);
  for (int j = 0; j < n; ++j) WA(j, j) -= w[j] * k * k / (r[j] * r[j]);
  return WA;
}

}  // namespace

double default_xi_max(int order, const RadialGrid& g) {
  return M_PI * (g.n + 0.5 * order + 0.75) / g.r_max;
}

PlanPtr build_plan(int order, const GridPtr& grid, double xi_max) {
  if (order < 0) throw InvalidInput("build_plan: order must be nonnegative");
  if (order > 4) throw InvalidInput("build_plan: orders above 4 are not supported");
  if (!grid) throw InvalidInput("build_plan: null grid");
  const RadialGrid& g = *grid;
  const int n = g.n;
  auto plan = std::make_shared<HankelPlan>();
  plan->order = order;
  plan->grid = grid;

  Eigen::MatrixXd WA = build_whk_form(order, g);
  const Eigen::ArrayXd sw = g.weights.sqrt();
  Eigen::MatrixXd S =
      sw.inverse().matrix().asDiagonal() * WA * sw.inverse().matrix().asDiagonal();
  S = 0.5 * (S + S.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(S);
  if (eig.info() != Eigen::Success) throw Error("build_plan: eigendecomposition failed");

  // eigenvalues ascending (most negative first); flip so frequencies increase
  plan->lambdas.resize(n);
  plan->freq_nodes.resize(n);
  plan->modes.resize(n, n);
  for (int l = 0; l < n; ++l) {
    const int src = n - 1 - l;
    const double lam = eig.eigenvalues()(src);
    plan->lambdas[l] = lam;
    plan->freq_nodes[l] = std::sqrt(std::max(-lam, 0.0));
    plan->modes.col(l) = eig.eigenvectors().col(src).array() / sw;
  }

  // per-mode weights from the sampled-Bessel normalization so spectrum values
  // track the continuum transform; sign convention from the same pairing
  plan->freq_weights.resize(n);
  for (int l = 0; l < n; ++l) {
    const double xi = plan->freq_nodes[l];
    double ip = 0.0, norm2 = 0.0;
    for (int j = 0; j < n; ++j) {
      const double bs = bessel_j(order, xi * g.nodes[j]);
      ip += g.weights[j] * plan->modes(j, l) * bs;
      norm2 += g.weights[j] * bs * bs;
    }
    if (ip < 0) plan->modes.col(l) = -plan->modes.col(l);
    plan->freq_weights[l] =
        norm2 > 1e-12 ? 1.0 / norm2 : M_PI * std::max(xi, plan->freq_nodes[0]) / g.r_max;
  }
  plan->xi_max = xi_max > 0.0 ? xi_max : plan->freq_nodes[n - 1];
  if (xi_max > 0.0 && xi_max > plan->freq_nodes[n - 1]) {
    std::ostringstream os;
    os << "build_plan: requested xi_max " << xi_max << " exceeds the attainable bandwidth "
       << plan->freq_nodes[n - 1] << " for n=" << n << " r_max=" << g.r_max;
    throw InvalidInput(os.str());
  }

  plan->forward.resize(n, n);
  plan->inverse.resize(n, n);
  for (int l = 0; l < n; ++l) {
    const double s = std::sqrt(plan->freq_weights[l]);
    plan->forward.row(l) = (plan->modes.col(l).array() * g.weights).matrix().transpose() / s;
    plan->inverse.col(l) = plan->modes.col(l) * s;
  }
  const double norm1 = plan->forward.cwiseAbs().colwise().sum().maxCoeff();
  const double inv1 = plan->inverse.cwiseAbs().colwise().sum().maxCoeff();
  plan->cond_estimate = norm1 * inv1;
  if (!(plan->cond_estimate < 1e12)) {
    std::ostringstream os;
    os << "build_plan: transform numerically singular (cond ~ " << plan->cond_estimate
       << ") for n=" << n << " r_max=" << g.r_max << " xi_max=" << plan->xi_max;
    throw InvalidInput(os.str());
  }
  return plan;
}

ArrayXcd transform_forward(const HankelPlan& plan, const RadialField& f) {
  require_same_grid(f, *plan.grid, "transform_forward");
  return apply_real(plan.forward, f.v);
}

RadialField transform_inverse(const HankelPlan& plan, const ArrayXcd& spectrum) {
  if (spectrum.size() != plan.grid->n)
    throw GridMismatch("transform_inverse: spectrum length != plan size");
  return RadialField(plan.grid, apply_real(plan.inverse, spectrum));
}

RadialField apply_hk(const HankelPlan& plan, const RadialField& f) {
  ArrayXcd spec = transform_forward(plan, f);
  spec *= plan.lambdas.cast<Complex>();
  return transform_inverse(plan, spec);
}

RadialField free_propagate(const HankelPlan& plan, const RadialField& f, double t) {
  ArrayXcd spec = transform_forward(plan, f);
  const ArrayXd phase = t * plan.lambdas;
  spec *= phase.cos().cast<Complex>() + Complex(0.0, 1.0) * phase.sin().cast<Complex>();
  return transform_inverse(plan, spec);
}

Eigen::MatrixXcd make_stepper(const HankelPlan& plan, double dt) {
  const int n = plan.grid->n;
  const ArrayXd phase = dt * plan.lambdas;
  const Eigen::VectorXd c = phase.cos().matrix();
  const Eigen::VectorXd s = phase.sin().matrix();
  Eigen::MatrixXd re = plan.inverse * (c.asDiagonal() * plan.forward);
  Eigen::MatrixXd im = plan.inverse * (s.asDiagonal() * plan.forward);
  Eigen::MatrixXcd B(n, n);
  B.real() = re;
  B.imag() = im;
  return B;
}

double norm_l2_xidxi(const HankelPlan& plan, const ArrayXcd& spectrum) {
  return std::sqrt((plan.freq_weights * spectrum.abs2()).sum());
}

ArrayXcd spectral_resample(const HankelPlan& plan, const RadialField& f, const ArrayXd& radii) {
  ArrayXcd spec = transform_forward(plan, f);
  ArrayXcd out(radii.size());
  for (Eigen::Index i = 0; i < radii.size(); ++i) {
    Complex acc(0.0, 0.0);
    for (int l = 0; l < plan.grid->n; ++l)
      acc += bessel_j(plan.order, plan.freq_nodes[l] * radii[i]) *
             std::sqrt(plan.freq_weights[l]) * spec[l];
    out[i] = acc;
  }
  return out;
}

}  // namespace equimap
