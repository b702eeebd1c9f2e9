#include "mpt/shape.hpp"

#include <cmath>
#include <utility>

#include "mpt/dtn.hpp"
#include "mpt/geometry.hpp"

namespace mpt {

ShapeDerivative shape_derivative(const FourierField& xi, double R,
                                 double sigma1, double sigma3,
                                 SolverConfig config) {
  config.validate();
  if (!(R > 0.0 && R < 1.0))
    throw validation_error("inclusion radius must lie in (0, 1)");
  if (!(sigma1 > 0.0 && sigma3 > 0.0))
    throw validation_error("conductivities must be positive");
  const double c_bc = 0.5 * (1.0 - 1.0 / sigma3);
  LayeredGeometry geometry{{StarCurve::circle(R), StarCurve::circle(1.0)},
                           {sigma1, 1.0},
                           0.0};
  PiecewiseSolution sol = solve(geometry, c_bc * xi, {}, config);
  FourierField neumann = boundary_trace(sol, 1, 1);
  return ShapeDerivative{xi, c_bc, std::move(sol), std::move(neumann)};
}

FdReport fd_validate(const FourierField& xi, const FourierField& eta,
                     const std::vector<double>& eps,
                     const ConstructParams& params) {
  params.validate();
  if (eps.size() < 2)
    throw validation_error("need at least two step sizes for an order fit");
  for (double e : eps)
    if (!(e > 0.0)) throw validation_error("step sizes must be positive");
  if (xi.max_mode() > params.solver.K || eta.max_mode() > params.solver.K)
    throw validation_error("direction has modes beyond the solver truncation");

  const DtnSpectrum spectrum = DtnSpectrum::compute(
      params.config.radii[0], params.config.sigmas[0] / params.config.sigmas[1],
      2, std::max(1, xi.max_mode()));
  FourierField reference = params.c_bc() * dtn_apply(spectrum, xi);

  std::vector<double> errors;
  errors.reserve(eps.size());
  for (double e : eps) {
    const FourierField plus = psi_map(e * xi, eta, params).residual;
    const FourierField minus = psi_map(-1.0 * (e * xi), eta, params).residual;
    const FourierField quotient = (1.0 / (2.0 * e)) * (plus - minus);
    errors.push_back((quotient - reference).sup_norm());
  }

  // Least-squares slope of log(err) against log(eps).
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const int n = static_cast<int>(eps.size());
  for (int i = 0; i < n; ++i) {
    const double x = std::log(eps[static_cast<size_t>(i)]);
    const double y = std::log(std::max(errors[static_cast<size_t>(i)], 1e-300));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double order = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return FdReport{eps, std::move(errors), order, std::move(reference)};
}

}  // namespace mpt
