#pragma once

#include <string>
#include <vector>

#include "mpt/dtn.hpp"
#include "mpt/fourier.hpp"
#include "mpt/radial.hpp"
#include "mpt/solver.hpp"

namespace mpt {

// Parameters of the counterexample construction. config is the concentric
// reference; only the two innermost interfaces get deformed, the rest stay
// circles. The middle interface is normalized to the unit circle (R_2 == 1)
// so perturbation fields live on the standard circle.
struct ConstructParams {
  PhaseConfig config;          // m >= 3 concentric reference, R_2 == 1, N == 2
  SolverConfig solver = perturbed_defaults();
  double newton_tol = 1e-10;   // convergence threshold, L2 norm of residual
  int max_iterations = 50;     // Newton updates before giving up
  double mean_tol = 1e-9;      // allowed |raw mean| of the map
  double amplitude_cap = 0.05; // sup-norm cap on eta and on xi iterates;
                               // lengths are normalized to R_2 == 1, so this
                               // is a fraction of the middle radius

  void validate() const;
  // Linearization coefficient (1/N)(1/sigma_2 - 1/sigma_3). Zero exactly
  // when sigma_3 == sigma_2, which validate() rejects: the frozen Newton
  // operator c_bc * DtN is not invertible there.
  double c_bc() const;
};

// One evaluation of the Neumann-tracking map
//   Psi(xi, eta) = (dn v - (sigma3/sigma2) dn v0) o (Id + xi n) * J_tau(xi)
// on the deformed middle interface r = 1 + xi. v solves the two-phase
// problem on Omega_xi (inner interface r = R_1 + eta, conductivities
// sigma_1/sigma_2, f0 = 1) with Dirichlet data v0 o (Id + xi n), where v0 is
// the merged radial profile of config. Zeros of Psi are flux matches:
// sigma_2 dn v = sigma_3 dn v0, the glue condition for the outer shells.
struct PsiEvaluation {
  FourierField xi, eta;     // inputs as used (truncated to solver.K)
  FourierField residual;    // zero-mean projection of Psi onto K modes
  double raw_mean = 0.0;    // plain theta-mean of Psi before projection
  FourierField trace;       // Dirichlet trace of v on the deformed curve
  PiecewiseSolution state;  // the two-phase inner solution
};

// The raw mean vanishes by the divergence theorem (both fluxes integrate to
// -f0 |Omega_xi|); |raw_mean| > mean_tol therefore signals an untrustworthy
// solve and throws.
PsiEvaluation psi_map(const FourierField& xi, const FourierField& eta,
                      const ConstructParams& params);

struct ConstructionResult {
  FourierField eta, xi;
  std::vector<double> newton_residuals;  // L2 norms, one per Psi evaluation
  bool converged = false;
  bool used_full_newton = false;
  std::vector<std::string> warnings;
  PsiEvaluation final_state;
};

// Quasi-Newton solve of Psi(xi, eta) = 0 for xi, starting from xi = 0 with
// the update xi -= (1/c_bc) DtN^{-1}(residual) (the linearization at (0,0),
// inverted mode-by-mode through the closed-form spectrum). A stalling step
// (residual reduction below 10%) switches to full Newton with a
// finite-difference Jacobian over the 2K active modes. Iterates stay
// zero-mean exactly.
ConstructionResult construct(const FourierField& eta,
                             const ConstructParams& params);

// The deformed two-phase core glued to the concentric outer shells.
struct GluedSystem {
  LayeredGeometry geometry;  // D_eta, Omega_xi, then circles R_3..R_m
  PiecewiseSolution inner;   // converged two-phase solution on Omega_xi
  RadialProfile outer;       // merged radial profile, valid outside Omega_xi
  double value_jump_sup = 0.0;  // sup |v0 - v| over middle-interface nodes
  double flux_jump_sup = 0.0;   // sup |sigma3 dn v0 - sigma2 dn v|
};

// Requires a converged result. The composite field (inner in Omega_xi, outer
// merged profile beyond) solves the full m-layer problem up to the recorded
// jump sups; the outer region is radial, so every normal derivative is
// constant on the outer boundary.
GluedSystem glue(const ConstructionResult& result,
                 const ConstructParams& params);

}  // namespace mpt
