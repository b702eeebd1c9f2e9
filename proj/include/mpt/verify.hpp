#pragma once

#include <vector>

#include "mpt/fourier.hpp"
#include "mpt/solver.hpp"

namespace mpt {

// Result of the overdetermined-condition check on the outer boundary: for
// each requested order k, the arclength-weighted mean c_k of (dn)^k u and
// the sup deviation from it over the sampling nodes.
struct OverdeterminedReport {
  std::vector<int> orders;
  std::vector<double> constants;   // c_k
  std::vector<double> deviations;  // sup |(dn)^k u - c_k|
  // Max over interfaces of the Fourier energy sqrt(sum a^2 + b^2) of the
  // radius perturbation. Center offsets are a separate degree of freedom and
  // deliberately not counted here.
  double nonradiality = 0.0;
  double solve_residual = 0.0;
  double condition = 0.0;
};

// Re-solves the full multi-phase problem from scratch (homogeneous Dirichlet
// data, the geometry's own f0) and measures how close each (dn)^k u is to a
// constant on the outer boundary. Orders are capped at 4: series
// differentiation amplifies truncation error by roughly a factor K per
// order, so higher orders carry no trustworthy digits at desk truncations.
OverdeterminedReport check_overdetermined(const LayeredGeometry& geometry,
                                          const std::vector<int>& orders,
                                          SolverConfig config =
                                              perturbed_defaults());

// Sup over collocation nodes of (dn)^2 u + kappa dn u + Lap_tau u + f0/sigma
// on the indexed curve, evaluated from the inner side. The surface Laplacian
// Lap_tau u = d/ds (du/ds) is computed spectrally from the trace with the
// metric factor. Vanishes identically for any solution of the PDE; this is
// the boundary split of the Laplacian that drives the rigidity argument.
double laplacian_decomposition_residual(const PiecewiseSolution& solution,
                                        int curve_index);

// Numerical witness of the two-condition rigidity mechanism on a two-layer
// geometry: if both dn u and (dn)^2 u are constant on the outer boundary,
// the decomposition forces kappa constant there, i.e. the boundary is a
// circle. The report records the deviations, the curvature variation, and
// whether the implication holds on this instance.
struct RigidityReport {
  double c1 = 0.0, c2 = 0.0;
  double dev1 = 0.0, dev2 = 0.0;
  double mean_curvature = 0.0;
  double curvature_variation = 0.0;  // sup |kappa - mean kappa|
  // |c2 + H c1 + f0/sigma_outer| with H the mean curvature: the scalar
  // identity linking the two boundary constants on a circle.
  double identity_error = 0.0;
  double condition_tol = 0.0, curvature_tol = 0.0;
  bool conditions_hold = false;     // dev1, dev2 <= condition_tol
  bool curvature_constant = false;  // curvature_variation <= curvature_tol
  bool witness = false;             // conditions_hold implies curvature_constant
};

RigidityReport rigidity_witness(const LayeredGeometry& geometry,
                                double condition_tol = 1e-8,
                                double curvature_tol = 1e-8,
                                SolverConfig config = perturbed_defaults());

}  // namespace mpt
