#include "mpt/verify.hpp"

#include <cmath>
#include <utility>

#include "mpt/geometry.hpp"

namespace mpt {

namespace {

struct NodalStats {
  double mean = 0.0;
  double deviation = 0.0;
};

// Arclength-weighted mean and sup deviation of samples f_j with weights w_j.
NodalStats nodal_stats(const std::vector<double>& f,
                       const std::vector<double>& w) {
  double fw = 0.0, ws = 0.0;
  for (size_t j = 0; j < f.size(); ++j) {
    fw += f[j] * w[j];
    ws += w[j];
  }
  NodalStats s;
  s.mean = fw / ws;
  for (double v : f) s.deviation = std::max(s.deviation, std::abs(v - s.mean));
  return s;
}

}  // namespace

OverdeterminedReport check_overdetermined(const LayeredGeometry& geometry,
                                          const std::vector<int>& orders,
                                          SolverConfig config) {
  geometry.validate();
  if (orders.empty()) throw validation_error("no derivative orders requested");
  for (int k : orders)
    if (k < 1 || k > 4)
      throw validation_error(
          "overdetermined checks cover orders 1..4; higher orders lose all "
          "trustworthy digits to series differentiation");
  PiecewiseSolution sol = solve(geometry, FourierField::zero(), {}, config);

  const int outer = geometry.layers() - 1;
  const StarCurve& curve = geometry.interfaces[static_cast<size_t>(outer)];
  const int M = std::max(4 * config.K, 256);
  std::vector<double> w(static_cast<size_t>(M));
  for (int j = 0; j < M; ++j)
    w[static_cast<size_t>(j)] = curve.metric(2.0 * pi * j / M);

  OverdeterminedReport report;
  report.orders = orders;
  for (int k : orders) {
    std::vector<double> f(static_cast<size_t>(M));
    for (int j = 0; j < M; ++j)
      f[static_cast<size_t>(j)] =
          sol.normal_derivative(outer, 2.0 * pi * j / M, k);
    const NodalStats s = nodal_stats(f, w);
    report.constants.push_back(s.mean);
    report.deviations.push_back(s.deviation);
  }
  for (const StarCurve& c : geometry.interfaces) {
    double energy = 0.0;
    for (const FourierMode& m : c.modes()) energy += m.a * m.a + m.b * m.b;
    report.nonradiality = std::max(report.nonradiality, std::sqrt(energy));
  }
  report.solve_residual = sol.residual();
  report.condition = sol.condition_estimate();
  return report;
}

double laplacian_decomposition_residual(const PiecewiseSolution& solution,
                                        int curve_index) {
  const LayeredGeometry& g = solution.geometry();
  if (curve_index < 0 || curve_index >= g.layers())
    throw validation_error("curve index out of range");
  if (solution.config().max_dn_order < 2)
    throw validation_error(
        "decomposition needs order-2 normal derivatives; raise max_dn_order");
  const StarCurve& curve = g.interfaces[static_cast<size_t>(curve_index)];
  const double sigma = g.sigmas[static_cast<size_t>(curve_index)];
  const int M = std::max(4 * solution.config().K, 256);
  const int Kp = M / 2 - 1;

  std::vector<double> u(static_cast<size_t>(M)), w(static_cast<size_t>(M));
  for (int j = 0; j < M; ++j) {
    const double theta = 2.0 * pi * j / M;
    u[static_cast<size_t>(j)] = solution.value(curve.point(theta));
    w[static_cast<size_t>(j)] = curve.metric(theta);
  }
  // Lap_tau u = (1/w) d/dtheta ( (1/w) du/dtheta ): two spectral derivative
  // stages with a metric division between them.
  const FourierField U = FourierField::project(u, Kp);
  std::vector<double> h(static_cast<size_t>(M));
  for (int j = 0; j < M; ++j)
    h[static_cast<size_t>(j)] =
        U.eval(2.0 * pi * j / M, 1) / w[static_cast<size_t>(j)];
  const FourierField H = FourierField::project(h, Kp);

  double worst = 0.0;
  for (int j = 0; j < M; ++j) {
    const double theta = 2.0 * pi * j / M;
    const double lap_tau = H.eval(theta, 1) / w[static_cast<size_t>(j)];
    const double dn1 = solution.normal_derivative(curve_index, theta, 1);
    const double dn2 = solution.normal_derivative(curve_index, theta, 2);
    const double res =
        dn2 + curve.curvature(theta) * dn1 + lap_tau + g.f0 / sigma;
    worst = std::max(worst, std::abs(res));
  }
  return worst;
}

RigidityReport rigidity_witness(const LayeredGeometry& geometry,
                                double condition_tol, double curvature_tol,
                                SolverConfig config) {
  if (geometry.layers() != 2)
    throw validation_error("the rigidity witness expects a two-layer geometry");
  if (!(condition_tol > 0.0 && curvature_tol > 0.0))
    throw validation_error("witness tolerances must be positive");
  const OverdeterminedReport od =
      check_overdetermined(geometry, {1, 2}, config);

  const StarCurve& curve = geometry.interfaces[1];
  const int M = std::max(4 * config.K, 256);
  std::vector<double> kappa(static_cast<size_t>(M)), w(static_cast<size_t>(M));
  for (int j = 0; j < M; ++j) {
    const double theta = 2.0 * pi * j / M;
    kappa[static_cast<size_t>(j)] = curve.curvature(theta);
    w[static_cast<size_t>(j)] = curve.metric(theta);
  }
  const NodalStats ks = nodal_stats(kappa, w);

  RigidityReport r;
  r.c1 = od.constants[0];
  r.c2 = od.constants[1];
  r.dev1 = od.deviations[0];
  r.dev2 = od.deviations[1];
  r.mean_curvature = ks.mean;
  r.curvature_variation = ks.deviation;
  r.identity_error =
      std::abs(r.c2 + ks.mean * r.c1 + geometry.f0 / geometry.sigmas[1]);
  r.condition_tol = condition_tol;
  r.curvature_tol = curvature_tol;
  r.conditions_hold = r.dev1 <= condition_tol && r.dev2 <= condition_tol;
  r.curvature_constant = r.curvature_variation <= curvature_tol;
  r.witness = !r.conditions_hold || r.curvature_constant;
  return r;
}

}  // namespace mpt
