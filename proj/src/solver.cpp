#include "mpt/solver.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

namespace mpt {

void SolverConfig::validate() const {
  if (K < 1) throw validation_error("solver truncation K must be >= 1");
  if (M < 0) throw validation_error("node count must be nonnegative");
  if (!(residual_tol > 0.0)) throw validation_error("residual tolerance must be positive");
  if (!(svd_cutoff > 0.0)) throw validation_error("svd cutoff must be positive");
  if (max_dn_order < 1) throw validation_error("max derivative order must be >= 1");
}

SolverConfig perturbed_defaults() {
  SolverConfig cfg;
  cfg.residual_tol = 1e-4;
  return cfg;
}

void LayeredGeometry::validate() const {
  if (interfaces.empty()) throw validation_error("geometry needs at least one curve");
  if (interfaces.size() != sigmas.size())
    throw validation_error("one conductivity per layer required");
  for (double s : sigmas)
    if (!(s > 0.0)) throw validation_error("conductivities must be positive");
  for (size_t i = 0; i + 1 < interfaces.size(); ++i) {
    const double gap = interfaces[i + 1].min_radius() - interfaces[i].max_radius();
    // Offset centers shrink the true clearance by the center distance.
    const double shift = norm(interfaces[i + 1].center() - interfaces[i].center());
    if (!(gap - shift > 0.0))
      throw validation_error("interfaces must be strictly nested");
  }
}

PiecewiseSolution::PiecewiseSolution(LayeredGeometry geometry,
                                     std::vector<PhaseSeries> phases,
                                     SolverConfig config, double residual,
                                     double condition)
    : geom_(std::move(geometry)), phases_(std::move(phases)),
      cfg_(config), residual_(residual), condition_(condition) {}

int PiecewiseSolution::locate(Vec2 p) const {
  for (int i = 0; i < geom_.layers(); ++i) {
    const StarCurve& c = geom_.interfaces[static_cast<size_t>(i)];
    const Vec2 d = p - c.center();
    const double rho = norm(d);
    const double theta = std::atan2(d.y, d.x);
    if (rho <= c.radius(theta) * (1.0 + 1e-12)) return i;
  }
  throw validation_error("point outside the outer boundary");
}

double PiecewiseSolution::value(Vec2 p) const {
  return phases_[static_cast<size_t>(locate(p))].value(p);
}

Vec2 PiecewiseSolution::gradient(Vec2 p) const {
  return phases_[static_cast<size_t>(locate(p))].gradient(p);
}

double PiecewiseSolution::normal_derivative(int curve_index, double theta,
                                            int order) const {
  if (curve_index < 0 || curve_index >= geom_.layers())
    throw validation_error("curve index out of range");
  if (order < 0 || order > cfg_.max_dn_order)
    throw validation_error("normal-derivative order exceeds configured maximum");
  const StarCurve& c = geom_.interfaces[static_cast<size_t>(curve_index)];
  return phases_[static_cast<size_t>(curve_index)].normal_derivative(
      c.point(theta), c.normal(theta), order);
}

namespace {

struct PhaseLayout {
  std::vector<PhaseSeries> phases;
  std::vector<int> offsets;  // column offset per phase
  int columns = 0;
};

PhaseLayout make_phases(const LayeredGeometry& g, const SolverConfig& cfg) {
  PhaseLayout lay;
  const int m = g.layers();
  for (int i = 0; i < m; ++i) {
    // Annulus expansions are centered at the inner curve's center so the
    // singular terms stay inside the hole; scaling radii keep columns O(1).
    const bool annulus = i > 0;
    const Vec2 center = annulus ? g.interfaces[static_cast<size_t>(i) - 1].center()
                                : g.interfaces[0].center();
    const double rho_p = g.interfaces[static_cast<size_t>(i)].r0();
    const double rho_n = annulus ? g.interfaces[static_cast<size_t>(i) - 1].r0() : 1.0;
    lay.offsets.push_back(lay.columns);
    lay.phases.emplace_back(center, g.sigmas[static_cast<size_t>(i)], g.f0,
                            cfg.K, annulus, rho_p, rho_n);
    lay.columns += lay.phases.back().term_count();
  }
  return lay;
}

bool all_zero(const FourierField& f) {
  if (f.mean() != 0.0) return false;
  for (const auto& m : f.modes())
    if (m.a != 0.0 || m.b != 0.0) return false;
  return true;
}

}  // namespace

PiecewiseSolution solve(const LayeredGeometry& geometry,
                        const FourierField& dirichlet,
                        const std::vector<FourierField>& jumps,
                        const SolverConfig& config) {
  geometry.validate();
  config.validate();
  const int m = geometry.layers();
  if (!jumps.empty() && static_cast<int>(jumps.size()) != m - 1)
    throw validation_error("need one jump field per interior interface");
  // The grid must resolve the curves themselves, not just the K-mode series;
  // iterated perturbations routinely carry modes right up to K, so raise the
  // node count when the configured oversampling falls short.
  int M = config.nodes();
  for (const StarCurve& c : geometry.interfaces)
    M = std::max(M, 2 * (2 * c.truncation() + 1));

  PhaseLayout lay = make_phases(geometry, config);

  // Homogeneous problem short-circuits to the zero solution exactly.
  bool homogeneous = geometry.f0 == 0.0 && all_zero(dirichlet);
  for (const auto& j : jumps)
    if (!all_zero(j)) homogeneous = false;
  if (homogeneous)
    return PiecewiseSolution(geometry, std::move(lay.phases), config, 0.0, 1.0);

  const int rows = 2 * M * (m - 1) + M;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(rows, lay.columns);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(rows);

  int row = 0;
  for (int i = 0; i < m - 1; ++i) {
    const CollocationGrid grid =
        pullback_grid(geometry.interfaces[static_cast<size_t>(i)], M);
    const PhaseSeries& inner = lay.phases[static_cast<size_t>(i)];
    const PhaseSeries& outer = lay.phases[static_cast<size_t>(i) + 1];
    const double si = geometry.sigmas[static_cast<size_t>(i)];
    const double so = geometry.sigmas[static_cast<size_t>(i) + 1];
    for (int j = 0; j < M; ++j) {
      const Vec2 p = grid.points[static_cast<size_t>(j)];
      const Vec2 n = grid.normals[static_cast<size_t>(j)];
      // Value jump: outer - inner = prescribed.
      for (int t = 0; t < outer.term_count(); ++t)
        A(row, lay.offsets[static_cast<size_t>(i) + 1] + t) = outer.term_partial(t, p, 0, 0);
      for (int t = 0; t < inner.term_count(); ++t)
        A(row, lay.offsets[static_cast<size_t>(i)] + t) = -inner.term_partial(t, p, 0, 0);
      const double jump = jumps.empty()
                              ? 0.0
                              : jumps[static_cast<size_t>(i)].eval(grid.theta[static_cast<size_t>(j)]);
      b(row) = jump - (outer.particular(p) - inner.particular(p));
      ++row;
      // Flux jump: so dn(outer) - si dn(inner) = 0. The particular-term flux
      // sigma grad(part) = -f0 x / 2 is phase independent, so its jump is 0
      // in exact arithmetic; it is still assembled for robustness.
      for (int t = 0; t < outer.term_count(); ++t)
        A(row, lay.offsets[static_cast<size_t>(i) + 1] + t) =
            so * (n.x * outer.term_partial(t, p, 1, 0) + n.y * outer.term_partial(t, p, 0, 1));
      for (int t = 0; t < inner.term_count(); ++t)
        A(row, lay.offsets[static_cast<size_t>(i)] + t) =
            -si * (n.x * inner.term_partial(t, p, 1, 0) + n.y * inner.term_partial(t, p, 0, 1));
      b(row) = -(so * (n.x * outer.particular(p, 1, 0) + n.y * outer.particular(p, 0, 1)) -
                 si * (n.x * inner.particular(p, 1, 0) + n.y * inner.particular(p, 0, 1)));
      ++row;
    }
  }
  {
    const CollocationGrid grid =
        pullback_grid(geometry.interfaces[static_cast<size_t>(m) - 1], M);
    const PhaseSeries& outer = lay.phases[static_cast<size_t>(m) - 1];
    for (int j = 0; j < M; ++j) {
      const Vec2 p = grid.points[static_cast<size_t>(j)];
      for (int t = 0; t < outer.term_count(); ++t)
        A(row, lay.offsets[static_cast<size_t>(m) - 1] + t) = outer.term_partial(t, p, 0, 0);
      b(row) = dirichlet.eval(grid.theta[static_cast<size_t>(j)]) - outer.particular(p);
      ++row;
    }
  }

  // Column scaling, then QR; SVD fallback on rank deficiency.
  Eigen::VectorXd scale(lay.columns);
  for (int c = 0; c < lay.columns; ++c) {
    const double s = A.col(c).norm();
    scale(c) = s > 0.0 ? s : 1.0;
  }
  Eigen::MatrixXd As = A * scale.cwiseInverse().asDiagonal();
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(As);
  qr.setThreshold(config.svd_cutoff);
  Eigen::VectorXd x;
  double condition;
  if (qr.rank() == lay.columns) {
    x = qr.solve(b);
    const auto& R = qr.matrixR();
    double dmax = 0.0, dmin = std::numeric_limits<double>::infinity();
    for (int c = 0; c < lay.columns; ++c) {
      const double d = std::abs(R(c, c));
      dmax = std::max(dmax, d);
      dmin = std::min(dmin, d);
    }
    condition = dmin > 0.0 ? dmax / dmin : std::numeric_limits<double>::infinity();
  } else {
    Eigen::BDCSVD<Eigen::MatrixXd> svd(As, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(config.svd_cutoff);
    x = svd.solve(b);
    const auto& sv = svd.singularValues();
    condition = sv(0) / std::max(sv(sv.size() - 1), sv(0) * config.svd_cutoff);
  }
  x = scale.cwiseInverse().asDiagonal() * x;

  const double residual = (A * x - b).cwiseAbs().maxCoeff();
  if (!(residual <= config.residual_tol))
    throw convergence_error(
        "collocation residual " + std::to_string(residual) +
            " above tolerance " + std::to_string(config.residual_tol) +
            "; raise K or the tolerance",
        residual);

  for (int i = 0; i < m; ++i) {
    std::vector<double> coef(static_cast<size_t>(lay.phases[static_cast<size_t>(i)].term_count()));
    for (size_t t = 0; t < coef.size(); ++t)
      coef[t] = x(lay.offsets[static_cast<size_t>(i)] + static_cast<int>(t));
    lay.phases[static_cast<size_t>(i)].set_coefficients(std::move(coef));
  }
  return PiecewiseSolution(geometry, std::move(lay.phases), config, residual,
                           condition);
}

FourierField boundary_trace(const PiecewiseSolution& solution, int curve_index,
                            int order) {
  const SolverConfig& cfg = solution.config();
  if (order < 0 || order > cfg.max_dn_order)
    throw validation_error("normal-derivative order exceeds configured maximum");
  const int M = std::max(4 * cfg.K, 256);
  std::vector<double> samples(static_cast<size_t>(M));
  for (int j = 0; j < M; ++j)
    samples[static_cast<size_t>(j)] =
        solution.normal_derivative(curve_index, 2.0 * pi * j / M, order);
  return FourierField::project(samples, cfg.K);
}

double interior_residual(const PiecewiseSolution& solution,
                         const std::vector<Vec2>& probes) {
  const double margin = solution.config().probe_margin;
  double worst = 0.0;
  for (Vec2 p : probes) {
    for (const StarCurve& c : solution.geometry().interfaces) {
      const Vec2 d = p - c.center();
      const double theta = std::atan2(d.y, d.x);
      if (std::abs(norm(d) - c.radius(theta)) < margin)
        throw validation_error("probe too close to an interface");
    }
    const int i = solution.locate(p);
    worst = std::max(worst, std::abs(solution.phase(i).strong_residual(p)));
  }
  return worst;
}

}  // namespace mpt
