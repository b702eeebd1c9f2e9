#pragma once

#include <vector>

#include "mpt/common.hpp"

namespace mpt {

struct FourierMode {
  int k = 0;
  double a = 0.0;  // cos k*theta coefficient
  double b = 0.0;  // sin k*theta coefficient
};

// Real function on a circle stored as mean + Fourier coefficients.
// Invariant: modes sorted by k, each k unique, k >= 1.
// Invariant: zero_mean() implies mean() == 0 exactly.
class FourierField {
 public:
  FourierField() = default;
  explicit FourierField(double mean) : mean_(mean) {}
  FourierField(double mean, std::vector<FourierMode> modes);

  static FourierField zero() { return FourierField(); }
  static FourierField cosine(int k, double amplitude);
  static FourierField sine(int k, double amplitude);

  double mean() const { return mean_; }
  const std::vector<FourierMode>& modes() const { return modes_; }
  bool zero_mean() const { return zero_mean_; }

  double coeff_a(int k) const;
  double coeff_b(int k) const;
  void set_mode(int k, double a, double b);
  void set_mean(double m);
  int max_mode() const;  // 0 when no modes present

  // deriv-th derivative in theta evaluated at theta.
  double eval(double theta, int deriv = 0) const;

  // L2 norm on the unit circle: sqrt(2*pi*mean^2 + pi*sum(a^2+b^2)).
  double norm_l2() const;
  // sup norm estimated by dense sampling (exact enough for guard checks).
  double sup_norm(int samples = 1024) const;

  FourierField truncated(int K) const;
  // Drops the mean and flags the invariant; the dropped value is returned
  // through *dropped_mean when non-null.
  FourierField zero_mean_part(double* dropped_mean = nullptr) const;

  FourierField& operator+=(const FourierField& other);
  FourierField& operator*=(double s);
  friend FourierField operator+(FourierField a, const FourierField& b) {
    a += b;
    return a;
  }
  friend FourierField operator-(FourierField a, FourierField b) {
    b *= -1.0;
    a += b;
    return a;
  }
  friend FourierField operator*(double s, FourierField a) {
    a *= s;
    return a;
  }

  // Exact pointwise product via coefficient convolution, truncated at out_K.
  FourierField multiply(const FourierField& other, int out_K) const;

  // Trapezoidal (= exact discrete) Fourier projection of equispaced samples
  // at theta_j = 2*pi*j/M onto modes k <= K. Requires M > 2K.
  static FourierField project(const std::vector<double>& samples, int K);

 private:
  double mean_ = 0.0;
  std::vector<FourierMode> modes_;
  bool zero_mean_ = false;
};

}  // namespace mpt
