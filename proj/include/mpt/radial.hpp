#pragma once

#include <vector>

#include "mpt/common.hpp"

namespace mpt {

// Concentric layer configuration: radii R_1 < ... < R_m with conductivity
// sigma_k on the k-th shell (R_0 := 0). Closed forms keep general N >= 2.
struct PhaseConfig {
  std::vector<double> radii;
  std::vector<double> sigmas;
  int N = 2;

  int layers() const { return static_cast<int>(radii.size()); }
  void validate() const;
  // Adjacent equal conductivities are legal (deliberately merged phases)
  // but worth reporting; returns false when any sigma_k == sigma_{k+1}.
  bool adjacent_sigmas_distinct() const;
};

// Piecewise profile u(r) = q_k r^2 + A_k on shell k. The radial torsion
// solution has no singular (r^{2-N} or log) component, so two numbers per
// shell represent it exactly; q_k = -1/(2 N sigma_k).
class RadialProfile {
 public:
  RadialProfile(PhaseConfig config, std::vector<double> quad,
                std::vector<double> constant);

  const PhaseConfig& config() const { return cfg_; }
  // Shell containing r; an interface radius belongs to the inner shell.
  int shell_of(double r) const;
  double value(double r) const;
  double deriv(double r, int order = 1) const;
  double shell_quad(int k) const { return quad_[static_cast<size_t>(k)]; }
  double shell_const(int k) const { return const_[static_cast<size_t>(k)]; }

 private:
  PhaseConfig cfg_;
  std::vector<double> quad_, const_;
};

// Closed-form radial solution of -div(sigma grad u) = 1, u = 0 at R_m:
// u = -r^2/(2 N sigma_k) + A_k with
// A_k = (1/(2N)) (R_{k+1}^2/sigma_{k+1} + sum_{j>k} (R_{j+1}^2 - R_j^2)/sigma_{j+1})
// (empty sum for k = m-1). Flux law sigma_k u' = -r/N holds in every shell.
RadialProfile radial_solution(const PhaseConfig& config);

// Auxiliary merged profile: the innermost three layers replaced by a single
// sigma_3 disk of radius R_3; equals the radial solution outside R_3.
// Requires m >= 3.
RadialProfile merged_solution(const PhaseConfig& config);

// Removes the innermost layer by the affine rescaling
// u~ = (sigma_1/sigma_2)(u - alpha1) + alpha1 on shell 1, u unchanged outside,
// where alpha1 is the (constant) value of u on the first interface. Verifies
// that the transform reproduces the closed form of the collapsed
// configuration and returns that (m-1)-layer profile.
RadialProfile phase_collapse(const RadialProfile& profile, double alpha1);

}  // namespace mpt
