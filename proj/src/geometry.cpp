#include "mpt/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace mpt {

StarCurve::StarCurve(Vec2 center, double r0, std::vector<FourierMode> modes)
    : center_(center), r0_(r0) {
  FourierField f(0.0, modes);  // validates and sorts mode indices
  modes_ = f.modes();
  K_ = f.max_mode();
  min_radius_ = r0_;
  max_radius_ = r0_;
  const int grid = std::max(4 * K_, 16);
  for (int j = 0; j < grid; ++j) {
    const double r = radius(2.0 * pi * j / grid);
    min_radius_ = std::min(min_radius_, r);
    max_radius_ = std::max(max_radius_, r);
  }
  if (!(min_radius_ > 0.0))
    throw validation_error("star curve radius must stay positive");
}

StarCurve StarCurve::circle(double R, Vec2 center) {
  return StarCurve(center, R, {});
}

double StarCurve::radius(double theta, int deriv) const {
  double v = (deriv == 0) ? r0_ : 0.0;
  for (const auto& m : modes_) {
    const double kp = std::pow(static_cast<double>(m.k), deriv);
    const double c = std::cos(m.k * theta);
    const double s = std::sin(m.k * theta);
    switch (deriv % 4) {
      case 0: v += kp * (m.a * c + m.b * s); break;
      case 1: v += kp * (-m.a * s + m.b * c); break;
      case 2: v += kp * (-m.a * c - m.b * s); break;
      default: v += kp * (m.a * s - m.b * c); break;
    }
  }
  return v;
}

Vec2 StarCurve::point(double theta) const {
  const double r = radius(theta);
  return {center_.x + r * std::cos(theta), center_.y + r * std::sin(theta)};
}

Vec2 StarCurve::normal(double theta) const {
  const double r = radius(theta);
  const double rp = radius(theta, 1);
  const double c = std::cos(theta), s = std::sin(theta);
  // Tangent (r' cos - r sin, r' sin + r cos) rotated by -pi/2 and normalized.
  Vec2 n{rp * s + r * c, -rp * c + r * s};
  const double len = norm(n);
  return {n.x / len, n.y / len};
}

double StarCurve::curvature(double theta) const {
  const double r = radius(theta);
  const double rp = radius(theta, 1);
  const double rpp = radius(theta, 2);
  const double w2 = r * r + rp * rp;
  return (r * r + 2.0 * rp * rp - r * rpp) / (w2 * std::sqrt(w2));
}

double StarCurve::metric(double theta) const {
  const double r = radius(theta);
  const double rp = radius(theta, 1);
  return std::sqrt(r * r + rp * rp);
}

CurvePoint curve_eval(const StarCurve& curve, double theta) {
  if (!(curve.radius(theta) > 0.0))
    throw validation_error("curve radius not positive at requested angle");
  return {curve.point(theta), curve.normal(theta), curve.curvature(theta)};
}

double tangential_jacobian(const FourierField& xi, double theta) {
  const double v = 1.0 + xi.eval(theta);
  if (!(v > 0.0))
    throw validation_error("perturbation degenerates the unit circle: 1 + xi <= 0");
  const double vp = xi.eval(theta, 1);
  return std::sqrt(v * v + vp * vp);
}

CollocationGrid pullback_grid(const StarCurve& curve, int M) {
  if (M < 2 * (2 * curve.truncation() + 1))
    throw validation_error("collocation grid undersampled: M < 2(2K+1)");
  CollocationGrid g{curve, M, {}, {}, {}, {}};
  g.theta.reserve(static_cast<size_t>(M));
  g.points.reserve(static_cast<size_t>(M));
  g.normals.reserve(static_cast<size_t>(M));
  g.jacobians.reserve(static_cast<size_t>(M));
  for (int j = 0; j < M; ++j) {
    const double t = 2.0 * pi * j / M;
    g.theta.push_back(t);
    g.points.push_back(curve.point(t));
    g.normals.push_back(curve.normal(t));
    g.jacobians.push_back(curve.metric(t));
  }
  return g;
}

}  // namespace mpt
