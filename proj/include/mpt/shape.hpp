#pragma once

#include <vector>

#include "mpt/construct.hpp"
#include "mpt/fourier.hpp"
#include "mpt/solver.hpp"

namespace mpt {

// The derivative of the two-phase state with respect to a normal
// perturbation xi of the outer boundary: the unique transmission solution
// with zero source and Dirichlet data c_bc * xi, c_bc = (1/N)(1 - 1/sigma3).
// Conductivities are (sigma1, 1): the middle phase is normalized away.
struct ShapeDerivative {
  FourierField xi;
  double c_bc = 0.0;
  PiecewiseSolution solution;  // two-phase, f0 = 0, Dirichlet c_bc * xi
  FourierField neumann;        // dn of the solution on the unit circle
};

ShapeDerivative shape_derivative(const FourierField& xi, double R,
                                 double sigma1, double sigma3,
                                 SolverConfig config = {});

// Central-difference probe of the linearization of the Neumann-tracking map:
// (Psi(eps xi, eta) - Psi(-eps xi, eta)) / (2 eps) against the closed-form
// reference c_bc * DtN(xi). The reference is exact at eta = 0; errors then
// measure pure differencing truncation and should shrink at order 2.
struct FdReport {
  std::vector<double> eps;
  std::vector<double> errors;  // sup-norm of (difference quotient - reference)
  double order = 0.0;          // least-squares slope of log err vs log eps
  FourierField reference;      // c_bc * DtN(xi)
};

FdReport fd_validate(const FourierField& xi, const FourierField& eta,
                     const std::vector<double>& eps,
                     const ConstructParams& params);

}  // namespace mpt
