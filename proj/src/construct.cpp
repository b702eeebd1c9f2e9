#include "mpt/construct.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <optional>
#include <sstream>
#include <utility>

#include "mpt/geometry.hpp"

namespace mpt {

void ConstructParams::validate() const {
  config.validate();
  solver.validate();
  if (config.N != 2)
    throw validation_error("construction numerics are two-dimensional (N == 2)");
  if (config.layers() < 3)
    throw validation_error("construction needs at least three layers");
  if (std::abs(config.radii[1] - 1.0) > 1e-12)
    throw validation_error(
        "middle interface must be the unit circle; rescale lengths by 1/R_2");
  if (!(newton_tol > 0.0))
    throw validation_error("newton tolerance must be positive");
  if (max_iterations < 1)
    throw validation_error("need at least one Newton iteration");
  if (!(mean_tol > 0.0))
    throw validation_error("mean tolerance must be positive");
  if (!(amplitude_cap > 0.0))
    throw validation_error("amplitude cap must be positive");
  if (c_bc() == 0.0)
    throw validation_error(
        "linearization coefficient (1/N)(1/sigma2 - 1/sigma3) vanishes: "
        "sigma_3 must differ from sigma_2");
}

double ConstructParams::c_bc() const {
  const double s2 = config.sigmas[1], s3 = config.sigmas[2];
  return (1.0 / config.N) * (1.0 / s2 - 1.0 / s3);
}

namespace {

StarCurve perturbed_circle(double r0, const FourierField& f) {
  return StarCurve({0.0, 0.0}, r0 + f.mean(), f.modes());
}

// v0 trace on r = 1 + xi as an exact trigonometric polynomial:
// v0 = q r^2 + A on the merged inner disk, so the pullback is q (1+xi)^2 + A.
FourierField pulled_back_data(const FourierField& xi, double q, double A) {
  FourierField s = xi;
  s.set_mean(xi.mean() + 1.0);
  FourierField data = q * s.multiply(s, 2 * std::max(1, s.max_mode()));
  data.set_mean(data.mean() + A);
  return data;
}

}  // namespace

PsiEvaluation psi_map(const FourierField& xi, const FourierField& eta,
                      const ConstructParams& params) {
  params.validate();
  const int K = params.solver.K;
  const FourierField xi_t = xi.truncated(K);
  const FourierField eta_t = eta.truncated(K);
  const double s1 = params.config.sigmas[0];
  const double s2 = params.config.sigmas[1];
  const double s3 = params.config.sigmas[2];

  const StarCurve middle = perturbed_circle(1.0, xi_t);
  if (!(middle.max_radius() < params.config.radii[2]))
    throw validation_error(
        "deformed middle interface must stay inside the first concentric shell");
  LayeredGeometry two_phase{
      {perturbed_circle(params.config.radii[0], eta_t), middle}, {s1, s2}, 1.0};

  const RadialProfile merged = merged_solution(params.config);
  const FourierField data =
      pulled_back_data(xi_t, merged.shell_quad(0), merged.shell_const(0));

  PiecewiseSolution sol = solve(two_phase, data, {}, params.solver);

  const int M = params.solver.nodes();
  std::vector<double> samples(static_cast<size_t>(M));
  double mean = 0.0;
  for (int j = 0; j < M; ++j) {
    const double theta = 2.0 * pi * j / M;
    const double r = middle.radius(theta);
    const Vec2 p = middle.point(theta);
    const Vec2 n = middle.normal(theta);
    const double dnv = sol.normal_derivative(1, theta, 1);
    // v0 is radial about the origin; p / r is the radial unit vector.
    const double dnv0 = merged.deriv(r, 1) * dot(p, n) / r;
    const double psi =
        (dnv - (s3 / s2) * dnv0) * tangential_jacobian(xi_t, theta);
    samples[static_cast<size_t>(j)] = psi;
    mean += psi;
  }
  mean /= M;
  // Both fluxes integrate to -f0 |Omega_xi| (divergence theorem), so the
  // theta-mean of Psi vanishes analytically; a violation means the solve
  // cannot be trusted.
  if (!(std::abs(mean) <= params.mean_tol))
    throw convergence_error("zero-average identity violated: |mean Psi| = " +
                                std::to_string(std::abs(mean)) +
                                " exceeds the mean tolerance",
                            std::abs(mean));
  FourierField residual = FourierField::project(samples, K).zero_mean_part();
  return PsiEvaluation{xi_t, eta_t, std::move(residual), mean, data,
                       std::move(sol)};
}

namespace {

void pack_modes(const FourierField& f, int K, Eigen::VectorXd& v) {
  for (int k = 1; k <= K; ++k) {
    v(k - 1) = f.coeff_a(k);
    v(K + k - 1) = f.coeff_b(k);
  }
}

// Central-difference Jacobian over the 2K active modes; 1e-6 balances the
// O(h^2) stencil error against round-off in the Psi samples.
FourierField fd_newton_step(const FourierField& xi, const FourierField& eta,
                            const ConstructParams& params,
                            const FourierField& residual) {
  const int K = params.solver.K;
  const int n = 2 * K;
  const double h = 1e-6;
  Eigen::MatrixXd J(n, n);
  Eigen::VectorXd rp(n), rm(n);
  for (int col = 0; col < n; ++col) {
    const int k = col % K + 1;
    const bool sine = col >= K;
    FourierField plus = xi, minus = xi;
    plus.set_mode(k, plus.coeff_a(k) + (sine ? 0.0 : h),
                  plus.coeff_b(k) + (sine ? h : 0.0));
    minus.set_mode(k, minus.coeff_a(k) - (sine ? 0.0 : h),
                   minus.coeff_b(k) - (sine ? h : 0.0));
    pack_modes(psi_map(plus, eta, params).residual, K, rp);
    pack_modes(psi_map(minus, eta, params).residual, K, rm);
    J.col(col) = (rp - rm) / (2.0 * h);
  }
  Eigen::VectorXd rhs(n);
  pack_modes(residual, K, rhs);
  const Eigen::VectorXd d = J.colPivHouseholderQr().solve(rhs);
  FourierField step;
  for (int k = 1; k <= K; ++k)
    if (d(k - 1) != 0.0 || d(K + k - 1) != 0.0)
      step.set_mode(k, d(k - 1), d(K + k - 1));
  return step;
}

}  // namespace

ConstructionResult construct(const FourierField& eta,
                             const ConstructParams& params) {
  params.validate();
  const int K = params.solver.K;
  const double R1 = params.config.radii[0];
  std::vector<std::string> warnings;
  if (eta.max_mode() > K)
    warnings.push_back("eta modes above the solver truncation were dropped");
  const FourierField eta_t = eta.truncated(K);
  if (!(eta_t.sup_norm() <= params.amplitude_cap))
    throw validation_error("eta amplitude " + std::to_string(eta_t.sup_norm()) +
                           " exceeds the cap " +
                           std::to_string(params.amplitude_cap));
  if (!(eta_t.sup_norm() < 0.5 * R1))
    throw validation_error("eta amplitude leaves no inner layer");
  if (params.config.sigmas[0] == params.config.sigmas[1])
    warnings.push_back(
        "sigma_1 == sigma_2: the inner interface carries no contrast, the "
        "trivial xi = 0 solves the problem");

  const double cbc = params.c_bc();
  const DtnSpectrum spectrum = DtnSpectrum::compute(
      R1, params.config.sigmas[0] / params.config.sigmas[1], 2, K);

  FourierField xi;
  std::vector<double> history;
  bool full_newton = false;
  bool converged = false;
  std::optional<PsiEvaluation> eval;

  for (int updates = 0;; ++updates) {
    eval.emplace(psi_map(xi, eta_t, params));
    const double rn = eval->residual.norm_l2();
    history.push_back(rn);
    if (rn <= params.newton_tol) {
      converged = true;
      break;
    }
    if (updates == params.max_iterations) break;
    if (history.size() >= 2 && rn > 0.9 * history[history.size() - 2])
      full_newton = true;  // quasi-Newton stalled; pay for the true Jacobian
    FourierField step;
    if (full_newton) {
      step = fd_newton_step(xi, eta_t, params, eval->residual);
    } else {
      step = dtn_invert(spectrum, eval->residual, InvertMode::dtn);
      step *= 1.0 / cbc;
    }
    xi = xi - step;  // zero-mean by construction: the step has no k = 0 part
    if (!(xi.sup_norm() <= params.amplitude_cap))
      throw convergence_error(
          "Newton iterate left the amplitude trust region", xi.sup_norm());
  }

  if (!converged) {
    std::ostringstream msg;
    msg << "Newton did not reach " << params.newton_tol << " within "
        << params.max_iterations << " updates; residual history:";
    for (double r : history) msg << " " << r;
    throw convergence_error(msg.str(), history.back());
  }
  return ConstructionResult{eta_t,       xi,       std::move(history),
                            converged,   full_newton, std::move(warnings),
                            std::move(*eval)};
}

GluedSystem glue(const ConstructionResult& result,
                 const ConstructParams& params) {
  params.validate();
  if (!result.converged)
    throw validation_error(
        "glue requires a converged construction (contract violation)");
  const PhaseConfig& cfg = params.config;
  std::vector<StarCurve> curves{perturbed_circle(cfg.radii[0], result.eta),
                                perturbed_circle(1.0, result.xi)};
  for (int i = 2; i < cfg.layers(); ++i)
    curves.push_back(StarCurve::circle(cfg.radii[static_cast<size_t>(i)]));
  LayeredGeometry geometry{std::move(curves), cfg.sigmas, 1.0};
  geometry.validate();

  const RadialProfile outer = merged_solution(cfg);
  const PiecewiseSolution& inner = result.final_state.state;
  const StarCurve& middle = geometry.interfaces[1];
  const double s2 = cfg.sigmas[1], s3 = cfg.sigmas[2];
  const int M = params.solver.nodes();
  double vjump = 0.0, fjump = 0.0;
  for (int j = 0; j < M; ++j) {
    const double theta = 2.0 * pi * j / M;
    const double r = middle.radius(theta);
    const Vec2 p = middle.point(theta);
    const Vec2 n = middle.normal(theta);
    vjump = std::max(vjump, std::abs(outer.value(r) - inner.value(p)));
    fjump = std::max(fjump,
                     std::abs(s3 * outer.deriv(r, 1) * dot(p, n) / r -
                              s2 * inner.normal_derivative(1, theta, 1)));
  }
  return GluedSystem{std::move(geometry), inner, outer, vjump, fjump};
}

}  // namespace mpt
