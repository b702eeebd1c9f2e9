#pragma once

#include <vector>

#include "mpt/common.hpp"
#include "mpt/fourier.hpp"

namespace mpt {

// Star-shaped closed curve r(theta) = r0 + sum_k (a_k cos k theta + b_k sin k theta)
// about a fixed center. Invariant: r(theta) > 0 on a 4K-point grid.
class StarCurve {
 public:
  StarCurve(Vec2 center, double r0, std::vector<FourierMode> modes);
  static StarCurve circle(double R, Vec2 center = {0.0, 0.0});

  Vec2 center() const { return center_; }
  double r0() const { return r0_; }
  const std::vector<FourierMode>& modes() const { return modes_; }
  int truncation() const { return K_; }

  double radius(double theta, int deriv = 0) const;
  Vec2 point(double theta) const;
  // Outward unit normal; theta increases counterclockwise.
  Vec2 normal(double theta) const;
  double curvature(double theta) const;
  // Arclength factor w = sqrt(r^2 + r'^2); ds = w dtheta.
  double metric(double theta) const;

  double min_radius() const { return min_radius_; }
  double max_radius() const { return max_radius_; }

 private:
  Vec2 center_;
  double r0_;
  std::vector<FourierMode> modes_;
  int K_;
  double min_radius_, max_radius_;
};

struct CurvePoint {
  Vec2 point;
  Vec2 normal;
  double curvature = 0.0;
};

CurvePoint curve_eval(const StarCurve& curve, double theta);

// Arclength distortion of the normal-displacement map Id + xi*n from the unit
// circle: J_tau = sqrt((1+xi)^2 + xi'^2). Requires 1 + xi > 0.
double tangential_jacobian(const FourierField& xi, double theta);

// Cached equispaced collocation data. Invariant: M >= 2*(2*curve.K + 1).
struct CollocationGrid {
  StarCurve curve;
  int M = 0;
  std::vector<double> theta;
  std::vector<Vec2> points;
  std::vector<Vec2> normals;
  std::vector<double> jacobians;  // metric w(theta_j)
};

CollocationGrid pullback_grid(const StarCurve& curve, int M);

}  // namespace mpt
