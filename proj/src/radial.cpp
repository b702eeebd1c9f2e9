#include "mpt/radial.hpp"

#include <algorithm>
#include <cmath>

namespace mpt {

void PhaseConfig::validate() const {
  if (radii.empty()) throw validation_error("config needs at least one layer");
  if (radii.size() != sigmas.size())
    throw validation_error("radii and sigmas must have equal length");
  if (N < 2) throw validation_error("dimension N must be >= 2");
  double prev = 0.0;
  for (double R : radii) {
    if (!(R > prev)) throw validation_error("radii must be positive and strictly increasing");
    prev = R;
  }
  for (double s : sigmas)
    if (!(s > 0.0)) throw validation_error("conductivities must be positive");
}

bool PhaseConfig::adjacent_sigmas_distinct() const {
  for (size_t k = 0; k + 1 < sigmas.size(); ++k)
    if (sigmas[k] == sigmas[k + 1]) return false;
  return true;
}

RadialProfile::RadialProfile(PhaseConfig config, std::vector<double> quad,
                             std::vector<double> constant)
    : cfg_(std::move(config)), quad_(std::move(quad)), const_(std::move(constant)) {
  cfg_.validate();
  if (quad_.size() != cfg_.radii.size() || const_.size() != cfg_.radii.size())
    throw validation_error("profile coefficient count mismatch");
}

int RadialProfile::shell_of(double r) const {
  if (r < 0.0 || r > cfg_.radii.back() * (1.0 + 1e-12))
    throw validation_error("radius outside the domain");
  for (size_t k = 0; k < cfg_.radii.size(); ++k)
    if (r <= cfg_.radii[k]) return static_cast<int>(k);
  return cfg_.layers() - 1;
}

double RadialProfile::value(double r) const {
  const size_t k = static_cast<size_t>(shell_of(r));
  return quad_[k] * r * r + const_[k];
}

double RadialProfile::deriv(double r, int order) const {
  const size_t k = static_cast<size_t>(shell_of(r));
  if (order == 1) return 2.0 * quad_[k] * r;
  if (order == 2) return 2.0 * quad_[k];
  return 0.0;
}

RadialProfile radial_solution(const PhaseConfig& config) {
  config.validate();
  const int m = config.layers();
  const double N = config.N;
  std::vector<double> quad(static_cast<size_t>(m)), cons(static_cast<size_t>(m));
  for (int k = 0; k < m; ++k) {
    quad[static_cast<size_t>(k)] = -1.0 / (2.0 * N * config.sigmas[static_cast<size_t>(k)]);
    // Shell k's constant: own outer radius over own sigma, plus the
    // telescoped contributions of every shell further out.
    double A = config.radii[static_cast<size_t>(k)] * config.radii[static_cast<size_t>(k)] /
               config.sigmas[static_cast<size_t>(k)];
    for (int j = k + 1; j < m; ++j) {
      const double Rj = config.radii[static_cast<size_t>(j)];
      const double Rp = config.radii[static_cast<size_t>(j) - 1];
      A += (Rj * Rj - Rp * Rp) / config.sigmas[static_cast<size_t>(j)];
    }
    cons[static_cast<size_t>(k)] = A / (2.0 * N);
  }
  return RadialProfile(config, quad, cons);
}

RadialProfile merged_solution(const PhaseConfig& config) {
  config.validate();
  if (config.layers() < 3)
    throw validation_error("merged profile needs at least three layers");
  PhaseConfig collapsed;
  collapsed.N = config.N;
  collapsed.radii.assign(config.radii.begin() + 2, config.radii.end());
  collapsed.sigmas.assign(config.sigmas.begin() + 2, config.sigmas.end());
  return radial_solution(collapsed);
}

RadialProfile phase_collapse(const RadialProfile& profile, double alpha1) {
  const PhaseConfig& cfg = profile.config();
  if (cfg.layers() < 2)
    throw validation_error("phase collapse needs at least two layers");
  PhaseConfig collapsed;
  collapsed.N = cfg.N;
  collapsed.radii.assign(cfg.radii.begin() + 1, cfg.radii.end());
  collapsed.sigmas.assign(cfg.sigmas.begin() + 1, cfg.sigmas.end());
  RadialProfile out = radial_solution(collapsed);

  // The rescaled inner branch (s1/s2)(u - alpha1) + alpha1 must coincide with
  // the collapsed closed form on shell 0; its quadratic coefficient matches by
  // construction, so the constant is the only nontrivial check.
  const double ratio = cfg.sigmas[0] / cfg.sigmas[1];
  const double tilde_const = ratio * (profile.shell_const(0) - alpha1) + alpha1;
  if (std::abs(tilde_const - out.shell_const(0)) >
      1e-12 * std::max(1.0, std::abs(out.shell_const(0))))
    throw convergence_error("collapsed profile does not solve the reduced problem",
                            std::abs(tilde_const - out.shell_const(0)));
  return out;
}

}  // namespace mpt
