#pragma once

#include <complex>
#include <vector>

#include "mpt/common.hpp"

namespace mpt {

// One harmonic basis term. Writing z = (x+iy) - center, each term is
// Re(c F(z)) for a holomorphic F, so every mixed partial is available as
// d_x^p d_y^q Re(F) = Re(i^q F^(p+q)):
//   taylor_cos k: F = (z/rho_p)^k          -> (r/rho_p)^k cos k theta
//   taylor_sin k: F = -i (z/rho_p)^k       -> (r/rho_p)^k sin k theta
//   laurent_cos k: F = (rho_n/z)^k         -> (rho_n/r)^k cos k theta
//   laurent_sin k: F = i (rho_n/z)^k       -> (rho_n/r)^k sin k theta
//   log_r:        Re(log z) = log|z|
// The scaling radii rho keep collocation columns O(1) on their annulus.
struct HarmonicTerm {
  enum Kind { constant, taylor_cos, taylor_sin, laurent_cos, laurent_sin, log_r };
  Kind kind;
  int k;
};

// Harmonic expansion of one conductivity phase plus the particular torsion
// term -f0 |x|^2 / (4 sigma) (dimension fixed to 2 in the numerics; |x| is
// measured from the global origin, not the expansion center).
class PhaseSeries {
 public:
  PhaseSeries(Vec2 center, double sigma, double f0, int K, bool annulus,
              double rho_p, double rho_n);

  int term_count() const { return static_cast<int>(terms_.size()); }
  const std::vector<HarmonicTerm>& terms() const { return terms_; }
  double sigma() const { return sigma_; }
  double f0() const { return f0_; }
  bool annulus() const { return annulus_; }

  // Mixed partial d_x^px d_y^py of basis term i at p (coefficient 1).
  double term_partial(int i, Vec2 p, int px, int py) const;
  double particular(Vec2 p, int px = 0, int py = 0) const;

  void set_coefficients(std::vector<double> coef);
  const std::vector<double>& coefficients() const { return coef_; }

  double value(Vec2 p) const { return partial(p, 0, 0); }
  Vec2 gradient(Vec2 p) const { return {partial(p, 1, 0), partial(p, 0, 1)}; }
  // Full field (harmonic sum + particular term) mixed partial.
  double partial(Vec2 p, int px, int py) const;
  // j-th normal derivative (n . grad)^j via the binomial expansion over
  // mixed partials; n need not be radial.
  double normal_derivative(Vec2 p, Vec2 n, int order) const;
  // sigma * Laplacian(u) + f0; identically zero for the ansatz up to round-off.
  double strong_residual(Vec2 p) const;

 private:
  std::complex<double> holo_derivative(const HarmonicTerm& t,
                                       std::complex<double> z, int j) const;

  Vec2 center_;
  double sigma_, f0_;
  int K_;
  bool annulus_;
  double rho_p_, rho_n_;
  std::vector<HarmonicTerm> terms_;
  std::vector<double> coef_;
};

}  // namespace mpt
