#include "mpt/series.hpp"

#include <cmath>

namespace mpt {

namespace {

// Binomial coefficients up to the max normal-derivative order ever used.
double binom(int n, int r) {
  double v = 1.0;
  for (int i = 1; i <= r; ++i) v = v * (n - r + i) / i;
  return v;
}

std::complex<double> ipow(int q) {
  switch (q % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

std::complex<double> zpow(std::complex<double> z, int n) {
  std::complex<double> v{1.0, 0.0};
  if (n >= 0) {
    for (int i = 0; i < n; ++i) v *= z;
    return v;
  }
  for (int i = 0; i < -n; ++i) v *= z;
  return 1.0 / v;
}

}  // namespace

PhaseSeries::PhaseSeries(Vec2 center, double sigma, double f0, int K,
                         bool annulus, double rho_p, double rho_n)
    : center_(center), sigma_(sigma), f0_(f0), K_(K), annulus_(annulus),
      rho_p_(rho_p), rho_n_(rho_n) {
  if (!(sigma > 0.0)) throw validation_error("phase conductivity must be positive");
  if (K < 1) throw validation_error("series truncation must be >= 1");
  terms_.push_back({HarmonicTerm::constant, 0});
  for (int k = 1; k <= K; ++k) {
    terms_.push_back({HarmonicTerm::taylor_cos, k});
    terms_.push_back({HarmonicTerm::taylor_sin, k});
  }
  if (annulus_) {
    terms_.push_back({HarmonicTerm::log_r, 0});
    for (int k = 1; k <= K; ++k) {
      terms_.push_back({HarmonicTerm::laurent_cos, k});
      terms_.push_back({HarmonicTerm::laurent_sin, k});
    }
  }
  coef_.assign(terms_.size(), 0.0);
}

std::complex<double> PhaseSeries::holo_derivative(const HarmonicTerm& t,
                                                  std::complex<double> z,
                                                  int j) const {
  switch (t.kind) {
    case HarmonicTerm::constant:
      return j == 0 ? std::complex<double>{1.0, 0.0} : std::complex<double>{0.0, 0.0};
    case HarmonicTerm::taylor_cos:
    case HarmonicTerm::taylor_sin: {
      if (j > t.k) return {0.0, 0.0};
      double fall = 1.0;  // k (k-1) ... (k-j+1)
      for (int i = 0; i < j; ++i) fall *= (t.k - i);
      std::complex<double> v = fall * zpow(z, t.k - j) / std::pow(rho_p_, t.k);
      return t.kind == HarmonicTerm::taylor_cos ? v : std::complex<double>{0.0, -1.0} * v;
    }
    case HarmonicTerm::laurent_cos:
    case HarmonicTerm::laurent_sin: {
      double rise = 1.0;  // k (k+1) ... (k+j-1), sign (-1)^j
      for (int i = 0; i < j; ++i) rise *= -(t.k + i);
      std::complex<double> v = rise * std::pow(rho_n_, t.k) * zpow(z, -t.k - j);
      return t.kind == HarmonicTerm::laurent_cos ? v : std::complex<double>{0.0, 1.0} * v;
    }
    case HarmonicTerm::log_r: {
      if (j == 0) return {std::log(std::abs(z)), 0.0};
      double fact = 1.0;  // (-1)^{j-1} (j-1)!
      for (int i = 1; i < j; ++i) fact *= -i;
      return fact * zpow(z, -j);
    }
  }
  return {0.0, 0.0};
}

double PhaseSeries::term_partial(int i, Vec2 p, int px, int py) const {
  const std::complex<double> z{p.x - center_.x, p.y - center_.y};
  const HarmonicTerm& t = terms_[static_cast<size_t>(i)];
  if (t.kind == HarmonicTerm::log_r && px == 0 && py == 0)
    return std::log(std::abs(z));
  return (ipow(py) * holo_derivative(t, z, px + py)).real();
}

double PhaseSeries::particular(Vec2 p, int px, int py) const {
  const double c = -f0_ / (4.0 * sigma_);
  const int j = px + py;
  if (j == 0) return c * (p.x * p.x + p.y * p.y);
  if (j == 1) return 2.0 * c * (px == 1 ? p.x : p.y);
  if (j == 2 && (px == 2 || py == 2)) return 2.0 * c;
  return 0.0;
}

void PhaseSeries::set_coefficients(std::vector<double> coef) {
  if (coef.size() != terms_.size())
    throw validation_error("coefficient count does not match term count");
  coef_ = std::move(coef);
}

double PhaseSeries::partial(Vec2 p, int px, int py) const {
  double v = particular(p, px, py);
  for (size_t i = 0; i < terms_.size(); ++i)
    if (coef_[i] != 0.0)
      v += coef_[i] * term_partial(static_cast<int>(i), p, px, py);
  return v;
}

double PhaseSeries::normal_derivative(Vec2 p, Vec2 n, int order) const {
  if (order == 0) return value(p);
  double v = 0.0;
  for (int px = 0; px <= order; ++px) {
    const int py = order - px;
    v += binom(order, px) * std::pow(n.x, px) * std::pow(n.y, py) *
         partial(p, px, py);
  }
  return v;
}

double PhaseSeries::strong_residual(Vec2 p) const {
  return sigma_ * (partial(p, 2, 0) + partial(p, 0, 2)) + f0_;
}

}  // namespace mpt
