#pragma once

#include <vector>

#include "mpt/fourier.hpp"
#include "mpt/radial.hpp"
#include "mpt/solver.hpp"

namespace mpt {

// Closed-form eigenvalue of the two-phase Dirichlet-to-Neumann map on the
// unit sphere with a concentric inclusion of radius R and conductivity
// sigma1 (outer conductivity normalized to 1):
//   mu_k = k [ (2-N-k)(1-sigma1) + (N-2+k+k sigma1) R^{2-N-2k} ] / F,
//   F    =   k (1-sigma1)        + (N-2+k+k sigma1) R^{2-N-2k}.
// mu_0 = 0; for k >= 1 both F > 0 and mu_k > 0 hold and are asserted.
double dtn_eigenvalue(int k, double R, double sigma1, int N = 2);

struct DtnSpectrum {
  double R = 0.5;
  double sigma1 = 1.0;
  int N = 2;
  std::vector<double> mu;  // mu[k], k = 0..K

  static DtnSpectrum compute(double R, double sigma1, int N, int K);
  int truncation() const { return static_cast<int>(mu.size()) - 1; }
};

// Mode-wise multiplication by mu_k; the mean maps to zero.
FourierField dtn_apply(const DtnSpectrum& spectrum, const FourierField& xi);

enum class InvertMode { dtn, id_plus_dtn };

// Mode-wise division by mu_k (requires zero mean: k = 0 is the kernel) or by
// 1 + mu_k (defined for any mean).
FourierField dtn_invert(const DtnSpectrum& spectrum, const FourierField& eta,
                        InvertMode mode);

// Independent oracle for dtn_eigenvalue: solves the two-phase problem with
// f0 = 0 and Dirichlet data cos(k theta) on the unit circle by collocation
// and reads off the cos(k theta) coefficient of the normal derivative.
double numerical_dtn(double R, double sigma1, int k, SolverConfig config = {});

// The jump-to-Neumann diagnostic: prescribe a value jump xi across the second
// interface (zero flux jump, homogeneous data elsewhere, f0 = 0) and return
// the normal derivative on the outer boundary. Concentric configurations
// only; requires at least three layers.
FourierField jump_to_neumann(const PhaseConfig& config, const FourierField& xi,
                             SolverConfig solver = {});

// Per-mode gains g_k of jump_to_neumann for xi = cos(k theta), k = 1..kmax.
// The map is diagonal on concentric circles; the gains decay geometrically
// like k (R_2/R_m)^k, which is the quantitative face of the smoothing that
// makes inverting the map ill-conditioned.
std::vector<double> jump_mode_gains(const PhaseConfig& config, int kmax,
                                    SolverConfig solver = {});

}  // namespace mpt
