#include "oracles.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace oracle {

double fd_derivative(const std::function<double(double)>& f, double t,
                     int order, double h) {
  if (order == 1) return (f(t + h) - f(t - h)) / (2.0 * h);
  if (order == 2) return (f(t + h) - 2.0 * f(t) + f(t - h)) / (h * h);
  throw std::invalid_argument("fd_derivative supports orders 1 and 2");
}

namespace {

mpt::Vec2 fd_tangent(const std::function<mpt::Vec2(double)>& gamma, double t,
                     double h) {
  const mpt::Vec2 p = gamma(t + h), m = gamma(t - h);
  return {(p.x - m.x) / (2.0 * h), (p.y - m.y) / (2.0 * h)};
}

}  // namespace

double fd_curvature(const mpt::StarCurve& curve, double theta, double h) {
  auto x = [&](double t) { return curve.point(t).x; };
  auto y = [&](double t) { return curve.point(t).y; };
  const double xp = fd_derivative(x, theta, 1, h);
  const double yp = fd_derivative(y, theta, 1, h);
  const double xpp = fd_derivative(x, theta, 2, h);
  const double ypp = fd_derivative(y, theta, 2, h);
  const double speed = std::hypot(xp, yp);
  return (xp * ypp - yp * xpp) / (speed * speed * speed);
}

mpt::Vec2 fd_normal(const mpt::StarCurve& curve, double theta, double h) {
  const mpt::Vec2 t =
      fd_tangent([&](double s) { return curve.point(s); }, theta, h);
  const double len = std::hypot(t.x, t.y);
  // theta runs counterclockwise, so (t_y, -t_x) points outward.
  return {t.y / len, -t.x / len};
}

double fd_arclength_ratio(const mpt::FourierField& xi, double theta,
                          double h) {
  auto gamma = [&](double t) -> mpt::Vec2 {
    const double r = 1.0 + xi.eval(t);
    return {r * std::cos(t), r * std::sin(t)};
  };
  const mpt::Vec2 t = fd_tangent(gamma, theta, h);
  return std::hypot(t.x, t.y);
}

namespace {

double simpson_slice(const std::function<double(double)>& f, double a,
                     double fa, double b, double fb, double m, double fm,
                     double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return simpson_slice(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         simpson_slice(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol) {
  const double m = 0.5 * (a + b);
  const double fa = f(a), fb = f(b), fm = f(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_slice(f, a, fa, b, fb, m, fm, whole, tol, 40);
}

double perimeter_quadrature(const mpt::StarCurve& curve) {
  auto speed = [&](double t) {
    const mpt::Vec2 v =
        fd_tangent([&](double s) { return curve.point(s); }, t, 1e-5);
    return std::hypot(v.x, v.y);
  };
  return adaptive_simpson(speed, 0.0, 2.0 * mpt::pi, 1e-12);
}

double area_quadrature(const mpt::StarCurve& curve) {
  auto integrand = [&](double t) {
    const mpt::Vec2 p = curve.point(t);
    const mpt::Vec2 v =
        fd_tangent([&](double s) { return curve.point(s); }, t, 1e-5);
    return 0.5 * (p.x * v.y - p.y * v.x);
  };
  return adaptive_simpson(integrand, 0.0, 2.0 * mpt::pi, 1e-12);
}

double radial_value_quadrature(const mpt::PhaseConfig& config, double r) {
  config.validate();
  const int N = config.N;
  double total = 0.0;
  double lo = r;
  for (size_t k = 0; k < config.radii.size(); ++k) {
    const double hi = config.radii[k];
    if (hi <= lo) continue;
    const double sigma = config.sigmas[k];
    // Integrand s/(N sigma) is linear on the shell: Simpson is exact, the
    // subdivision just keeps the route honest.
    auto f = [&](double s) { return s / (N * sigma); };
    total += adaptive_simpson(f, lo, hi, 1e-14);
    lo = hi;
  }
  return total;
}

double radial_value_fd_bvp(const mpt::PhaseConfig& config, double r,
                           int cells_per_shell) {
  config.validate();
  const int N = config.N;
  const int m = config.layers();

  // Nodes: per-shell uniform grids meeting exactly at the interfaces, so
  // every flux face lies strictly inside one conductivity shell.
  std::vector<double> nodes{0.0};
  std::vector<double> sig_of_cell;  // conductivity on (nodes[i], nodes[i+1])
  double left = 0.0;
  for (int k = 0; k < m; ++k) {
    const double right = config.radii[static_cast<size_t>(k)];
    for (int i = 1; i <= cells_per_shell; ++i) {
      nodes.push_back(left + (right - left) * i / cells_per_shell);
      sig_of_cell.push_back(config.sigmas[static_cast<size_t>(k)]);
    }
    left = right;
  }
  const int n = static_cast<int>(nodes.size());  // unknowns u_0..u_{n-1}

  auto pow_face = [&](double s) { return std::pow(s, N - 1); };
  // Control volume around node i: [face_{i-1}, face_i] with faces at cell
  // midpoints; flux F = r^{N-1} sigma u' at faces, source integral of
  // -r^{N-1} over the volume. u_{n-1} = 0 is the Dirichlet condition.
  std::vector<double> lower(n, 0.0), diag(n, 0.0), upper(n, 0.0), rhs(n, 0.0);
  auto volume_source = [&](double a, double b) {
    return (std::pow(b, N) - std::pow(a, N)) / N;
  };
  for (int i = 0; i < n - 1; ++i) {
    const double h = nodes[i + 1] - nodes[i];
    const double face = 0.5 * (nodes[i] + nodes[i + 1]);
    const double cond = pow_face(face) * sig_of_cell[static_cast<size_t>(i)] / h;
    diag[i] += cond;
    upper[i] -= cond;
    if (i + 1 < n - 1) {
      diag[i + 1] += cond;
      lower[i + 1] -= cond;
    }
    const double lo_edge = i == 0 ? 0.0 : 0.5 * (nodes[i - 1] + nodes[i]);
    rhs[i] += volume_source(lo_edge, face);
  }
  diag[n - 1] = 1.0;
  rhs[n - 1] = 0.0;
  lower[n - 1] = 0.0;

  // Thomas elimination.
  for (int i = 1; i < n; ++i) {
    const double w = lower[i] / diag[i - 1];
    diag[i] -= w * upper[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  std::vector<double> u(static_cast<size_t>(n));
  u[static_cast<size_t>(n - 1)] = rhs[n - 1] / diag[n - 1];
  for (int i = n - 2; i >= 0; --i)
    u[static_cast<size_t>(i)] =
        (rhs[i] - upper[i] * u[static_cast<size_t>(i + 1)]) / diag[i];

  // Linear interpolation at r.
  if (r <= 0.0) return u[0];
  if (r >= nodes.back()) return 0.0;
  int i = 0;
  while (nodes[i + 1] < r) ++i;
  const double t = (r - nodes[i]) / (nodes[i + 1] - nodes[i]);
  return (1.0 - t) * u[static_cast<size_t>(i)] +
         t * u[static_cast<size_t>(i + 1)];
}

double transfer_matrix_mu(int k, double R, double sigma1, int N) {
  if (k == 0) return 0.0;
  const double tau = 2.0 - N - k;
  // Unknowns (c, a, b): w = c (r/R)^k inside, a r^k + b r^tau outside,
  // w = 1 on the unit circle.
  Eigen::Matrix3d A;
  Eigen::Vector3d rhs;
  A << 1.0, -std::pow(R, k), -std::pow(R, tau),                    // value at R
      sigma1 * k / R, -k * std::pow(R, k - 1), -tau * std::pow(R, tau - 1),
      0.0, 1.0, 1.0;                                               // data at 1
  rhs << 0.0, 0.0, 1.0;
  const Eigen::Vector3d sol = A.fullPivLu().solve(rhs);
  return sol[1] * k + sol[2] * tau;
}

double jump_gain_transfer(const mpt::PhaseConfig& config, int k) {
  if (config.layers() != 3)
    throw std::invalid_argument("jump_gain_transfer expects three layers");
  if (k < 1) throw std::invalid_argument("jump_gain_transfer needs k >= 1");
  const double R1 = config.radii[0], R2 = config.radii[1],
               R3 = config.radii[2];
  const double s1 = config.sigmas[0], s2 = config.sigmas[1],
               s3 = config.sigmas[2];
  const double tau = 2.0 - config.N - k;
  // Unknowns (a1, a2, b2, a3, b3): a1 r^k inside, a r^k + b r^tau on each
  // annulus; value jump 1 at R2, flux continuous, zero data at R3.
  Eigen::Matrix<double, 5, 5> A = Eigen::Matrix<double, 5, 5>::Zero();
  Eigen::Matrix<double, 5, 1> rhs = Eigen::Matrix<double, 5, 1>::Zero();
  auto v = [&](double r) { return std::pow(r, k); };
  auto vs = [&](double r) { return std::pow(r, tau); };
  auto d = [&](double r) { return k * std::pow(r, k - 1); };
  auto ds = [&](double r) { return tau * std::pow(r, tau - 1); };
  A(0, 0) = v(R1);
  A(0, 1) = -v(R1);
  A(0, 2) = -vs(R1);
  A(1, 0) = s1 * d(R1);
  A(1, 1) = -s2 * d(R1);
  A(1, 2) = -s2 * ds(R1);
  A(2, 3) = v(R2);
  A(2, 4) = vs(R2);
  A(2, 1) = -v(R2);
  A(2, 2) = -vs(R2);
  rhs(2) = 1.0;
  A(3, 3) = s3 * d(R2);
  A(3, 4) = s3 * ds(R2);
  A(3, 1) = -s2 * d(R2);
  A(3, 2) = -s2 * ds(R2);
  A(4, 3) = v(R3);
  A(4, 4) = vs(R3);
  const Eigen::Matrix<double, 5, 1> sol = A.fullPivLu().solve(rhs);
  return sol(3) * d(R3) + sol(4) * ds(R3);
}

double loglog_slope(const std::vector<double>& eps,
                    const std::vector<double>& err) {
  if (eps.size() != err.size() || eps.size() < 2)
    throw std::invalid_argument("loglog_slope needs matching samples");
  const int n = static_cast<int>(eps.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    const double x = std::log(eps[static_cast<size_t>(i)]);
    const double y = std::log(std::max(err[static_cast<size_t>(i)], 1e-300));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace oracle
