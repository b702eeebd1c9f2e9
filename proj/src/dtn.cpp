#include "mpt/dtn.hpp"

#include <cmath>

namespace mpt {

double dtn_eigenvalue(int k, double R, double sigma1, int N) {
  if (!(R > 0.0 && R <= 1.0)) throw validation_error("inclusion radius must lie in (0,1]");
  if (!(sigma1 > 0.0)) throw validation_error("conductivity must be positive");
  if (N < 2) throw validation_error("dimension must be >= 2");
  if (k < 0) throw validation_error("mode index must be >= 0");
  if (k == 0) return 0.0;  // constants are the kernel
  const double pow_term = std::pow(R, 2.0 - N - 2.0 * k);
  const double common = (N - 2.0 + k + k * sigma1) * pow_term;
  const double F = k * (1.0 - sigma1) + common;
  if (!(F > 0.0))
    throw validation_error("positivity of the eigenvalue denominator failed");
  const double mu = k * ((2.0 - N - k) * (1.0 - sigma1) + common) / F;
  if (!(mu > 0.0))
    throw validation_error("positivity of the eigenvalue failed");
  return mu;
}

DtnSpectrum DtnSpectrum::compute(double R, double sigma1, int N, int K) {
  if (K < 0) throw validation_error("spectrum truncation must be >= 0");
  DtnSpectrum s{R, sigma1, N, {}};
  s.mu.reserve(static_cast<size_t>(K) + 1);
  for (int k = 0; k <= K; ++k) s.mu.push_back(dtn_eigenvalue(k, R, sigma1, N));
  return s;
}

FourierField dtn_apply(const DtnSpectrum& spectrum, const FourierField& xi) {
  if (xi.max_mode() > spectrum.truncation())
    throw validation_error("field truncation exceeds spectrum truncation");
  FourierField out(0.0);
  for (const auto& m : xi.modes()) {
    const double mu = spectrum.mu[static_cast<size_t>(m.k)];
    out.set_mode(m.k, mu * m.a, mu * m.b);
  }
  return out.zero_mean_part();
}

FourierField dtn_invert(const DtnSpectrum& spectrum, const FourierField& eta,
                        InvertMode mode) {
  if (eta.max_mode() > spectrum.truncation())
    throw validation_error("field truncation exceeds spectrum truncation");
  if (mode == InvertMode::dtn && eta.mean() != 0.0)
    throw validation_error("constants lie in the kernel: the map inverts only zero-mean fields");
  FourierField out(mode == InvertMode::dtn ? 0.0 : eta.mean());
  for (const auto& m : eta.modes()) {
    const double mu = spectrum.mu[static_cast<size_t>(m.k)];
    const double d = mode == InvertMode::dtn ? mu : 1.0 + mu;
    out.set_mode(m.k, m.a / d, m.b / d);
  }
  if (mode == InvertMode::dtn) return out.zero_mean_part();
  return out;
}

double numerical_dtn(double R, double sigma1, int k, SolverConfig config) {
  if (!(R > 0.0 && R < 1.0))
    throw validation_error("numerical route needs R strictly inside (0,1)");
  if (k < 0) throw validation_error("mode index must be >= 0");
  config.K = std::max(config.K, k + 4);
  LayeredGeometry g;
  g.interfaces = {StarCurve::circle(R), StarCurve::circle(1.0)};
  g.sigmas = {sigma1, 1.0};
  g.f0 = 0.0;
  const FourierField data = k == 0 ? FourierField(1.0) : FourierField::cosine(k, 1.0);
  const PiecewiseSolution sol = solve(g, data, {}, config);
  const FourierField trace = boundary_trace(sol, 1, 1);
  return k == 0 ? trace.mean() : trace.coeff_a(k);
}

FourierField jump_to_neumann(const PhaseConfig& config, const FourierField& xi,
                             SolverConfig solver) {
  config.validate();
  if (config.layers() < 3)
    throw validation_error("jump diagnostic needs at least three layers");
  if (config.N != 2)
    throw validation_error("collocation numerics are two-dimensional");
  solver.K = std::max(solver.K, xi.max_mode() + 4);
  LayeredGeometry g;
  for (double R : config.radii) g.interfaces.push_back(StarCurve::circle(R));
  g.sigmas = config.sigmas;
  g.f0 = 0.0;
  std::vector<FourierField> jumps(static_cast<size_t>(config.layers()) - 1,
                                  FourierField::zero());
  jumps[1] = xi;  // value jump across the second interface
  const PiecewiseSolution sol = solve(g, FourierField::zero(), jumps, solver);
  return boundary_trace(sol, config.layers() - 1, 1);
}

std::vector<double> jump_mode_gains(const PhaseConfig& config, int kmax,
                                    SolverConfig solver) {
  if (kmax < 1) throw validation_error("gain sweep needs kmax >= 1");
  std::vector<double> gains;
  gains.reserve(static_cast<size_t>(kmax));
  for (int k = 1; k <= kmax; ++k) {
    const FourierField out =
        jump_to_neumann(config, FourierField::cosine(k, 1.0), solver);
    gains.push_back(out.coeff_a(k));
  }
  return gains;
}

}  // namespace mpt
