#pragma once

#include <optional>
#include <vector>

#include "mpt/common.hpp"
#include "mpt/fourier.hpp"
#include "mpt/geometry.hpp"
#include "mpt/series.hpp"

namespace mpt {

struct SolverConfig {
  int K = 16;                  // series truncation per phase
  int M = 0;                   // collocation nodes per curve; 0 means 4K
  double residual_tol = 1e-9;  // max allowed collocation mismatch
  double svd_cutoff = 1e-13;   // relative singular value cutoff (fallback path)
  int max_dn_order = 6;        // highest normal-derivative order served
  double probe_margin = 1e-6;  // keep-out distance from interfaces for probes

  int nodes() const { return M > 0 ? M : 4 * K; }
  void validate() const;
};

// Tolerance preset for deformed interfaces. The least-squares mismatch is
// truncation-limited and grows with perturbation amplitude (about 1e-6 at
// K = 16 for amplitude 0.03), so operations on perturbed geometry accept
// 1e-4 by default while concentric solves keep the tight 1e-9 default.
SolverConfig perturbed_defaults();

// Nested star-curve interfaces, innermost first; sigma_k on the k-th layer.
// The torsion right-hand side f0 is constant (0 for homogeneous problems).
struct LayeredGeometry {
  std::vector<StarCurve> interfaces;
  std::vector<double> sigmas;
  double f0 = 1.0;

  int layers() const { return static_cast<int>(interfaces.size()); }
  // Nestedness uses the sufficient near-circular test
  // max radius of curve k < min radius of curve k+1.
  void validate() const;
};

// Converged collocation solution. Immutable; evaluation is thread-safe.
// Invariant: the innermost expansion has no singular modes; the recorded
// residual (max collocation mismatch) is at most the configured tolerance.
class PiecewiseSolution {
 public:
  PiecewiseSolution(LayeredGeometry geometry, std::vector<PhaseSeries> phases,
                    SolverConfig config, double residual, double condition);

  const LayeredGeometry& geometry() const { return geom_; }
  const SolverConfig& config() const { return cfg_; }
  double residual() const { return residual_; }
  double condition_estimate() const { return condition_; }
  const PhaseSeries& phase(int i) const { return phases_[static_cast<size_t>(i)]; }

  // Phase index whose closure contains p; a point on interface i resolves to
  // the inner phase i. Throws for points outside the outer boundary.
  int locate(Vec2 p) const;
  double value(Vec2 p) const;
  Vec2 gradient(Vec2 p) const;
  // (n . grad)^order of the solution at angle theta on the indexed curve,
  // evaluated from the inner side (phase curve_index).
  double normal_derivative(int curve_index, double theta, int order) const;

 private:
  LayeredGeometry geom_;
  std::vector<PhaseSeries> phases_;
  SolverConfig cfg_;
  double residual_;
  double condition_;
};

// Least-squares spectral collocation for the transmission problem
//   -div(sigma grad u) = f0,  u = dirichlet on the outer curve,
//   [u] = jump_i (default 0) and [sigma dn u] = 0 across interface i,
// where [g] denotes outer trace minus inner trace. jumps is either empty or
// one field per interior interface (layers-1 entries).
PiecewiseSolution solve(const LayeredGeometry& geometry,
                        const FourierField& dirichlet,
                        const std::vector<FourierField>& jumps = {},
                        const SolverConfig& config = {});

// (d_n)^order u sampled on the indexed curve and projected onto K modes.
FourierField boundary_trace(const PiecewiseSolution& solution, int curve_index,
                            int order);

// max |sigma Lap(u) + f0| over probes; zero for the ansatz by construction,
// so this asserts the series calculus, not the solve.
double interior_residual(const PiecewiseSolution& solution,
                         const std::vector<Vec2>& probes);

}  // namespace mpt
