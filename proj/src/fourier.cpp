#include "mpt/fourier.hpp"

#include <algorithm>
#include <cmath>

namespace mpt {

FourierField::FourierField(double mean, std::vector<FourierMode> modes)
    : mean_(mean) {
  for (const auto& m : modes) {
    if (m.k < 1) throw validation_error("Fourier mode index must be >= 1");
    set_mode(m.k, m.a, m.b);
  }
}

FourierField FourierField::cosine(int k, double amplitude) {
  FourierField f;
  f.set_mode(k, amplitude, 0.0);
  return f;
}

FourierField FourierField::sine(int k, double amplitude) {
  FourierField f;
  f.set_mode(k, 0.0, amplitude);
  return f;
}

double FourierField::coeff_a(int k) const {
  for (const auto& m : modes_)
    if (m.k == k) return m.a;
  return 0.0;
}

double FourierField::coeff_b(int k) const {
  for (const auto& m : modes_)
    if (m.k == k) return m.b;
  return 0.0;
}

void FourierField::set_mode(int k, double a, double b) {
  if (k < 1) throw validation_error("Fourier mode index must be >= 1");
  auto it = std::lower_bound(
      modes_.begin(), modes_.end(), k,
      [](const FourierMode& m, int kk) { return m.k < kk; });
  if (it != modes_.end() && it->k == k) {
    it->a = a;
    it->b = b;
  } else {
    modes_.insert(it, {k, a, b});
  }
}

void FourierField::set_mean(double m) {
  mean_ = m;
  if (m != 0.0) zero_mean_ = false;
}

int FourierField::max_mode() const {
  return modes_.empty() ? 0 : modes_.back().k;
}

double FourierField::eval(double theta, int deriv) const {
  double v = (deriv == 0) ? mean_ : 0.0;
  for (const auto& m : modes_) {
    const double kp = std::pow(static_cast<double>(m.k), deriv);
    // d/dtheta cycles (cos,sin) -> (-sin,cos) with period 4.
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

double FourierField::norm_l2() const {
  double sum = 2.0 * pi * mean_ * mean_;
  for (const auto& m : modes_) sum += pi * (m.a * m.a + m.b * m.b);
  return std::sqrt(sum);
}

double FourierField::sup_norm(int samples) const {
  double s = 0.0;
  for (int j = 0; j < samples; ++j)
    s = std::max(s, std::abs(eval(2.0 * pi * j / samples)));
  return s;
}

FourierField FourierField::truncated(int K) const {
  FourierField out(mean_);
  out.zero_mean_ = zero_mean_;
  for (const auto& m : modes_)
    if (m.k <= K) out.modes_.push_back(m);
  return out;
}

FourierField FourierField::zero_mean_part(double* dropped_mean) const {
  if (dropped_mean) *dropped_mean = mean_;
  FourierField out(0.0, {});
  out.modes_ = modes_;
  out.zero_mean_ = true;
  return out;
}

FourierField& FourierField::operator+=(const FourierField& other) {
  mean_ += other.mean_;
  for (const auto& m : other.modes_)
    set_mode(m.k, coeff_a(m.k) + m.a, coeff_b(m.k) + m.b);
  zero_mean_ = zero_mean_ && other.zero_mean_;
  return *this;
}

FourierField& FourierField::operator*=(double s) {
  mean_ *= s;
  for (auto& m : modes_) {
    m.a *= s;
    m.b *= s;
  }
  return *this;
}

FourierField FourierField::multiply(const FourierField& other, int out_K) const {
  // Product-to-sum identities; sin(-n) = -sin(n), cos(-n) = cos(n).
  const int K1 = max_mode(), K2 = other.max_mode();
  std::vector<double> a(static_cast<size_t>(K1 + K2) + 1, 0.0);
  std::vector<double> b(static_cast<size_t>(K1 + K2) + 1, 0.0);
  auto add = [&](int k, double ca, double cb) {
    if (k < 0) {
      k = -k;
      cb = -cb;
    }
    a[static_cast<size_t>(k)] += ca;
    b[static_cast<size_t>(k)] += cb;
  };
  add(0, mean_ * other.mean_, 0.0);
  for (const auto& m : modes_) add(m.k, other.mean_ * m.a, other.mean_ * m.b);
  for (const auto& m : other.modes_) add(m.k, mean_ * m.a, mean_ * m.b);
  for (const auto& p : modes_) {
    for (const auto& q : other.modes_) {
      // cos*cos, sin*sin -> cos(k-l), cos(k+l); cross terms -> sines.
      add(p.k - q.k, 0.5 * (p.a * q.a + p.b * q.b), 0.5 * (p.b * q.a - p.a * q.b));
      add(p.k + q.k, 0.5 * (p.a * q.a - p.b * q.b), 0.5 * (p.b * q.a + p.a * q.b));
    }
  }
  FourierField out(a[0]);
  for (int k = 1; k <= std::min(out_K, K1 + K2); ++k)
    if (a[static_cast<size_t>(k)] != 0.0 || b[static_cast<size_t>(k)] != 0.0)
      out.set_mode(k, a[static_cast<size_t>(k)], b[static_cast<size_t>(k)]);
  return out;
}

FourierField FourierField::project(const std::vector<double>& samples, int K) {
  const int M = static_cast<int>(samples.size());
  if (M <= 2 * K)
    throw validation_error("Fourier projection needs more than 2K samples");
  double mean = 0.0;
  for (double v : samples) mean += v;
  mean /= M;
  FourierField out(mean);
  for (int k = 1; k <= K; ++k) {
    double a = 0.0, b = 0.0;
    for (int j = 0; j < M; ++j) {
      const double t = 2.0 * pi * j * k / M;
      a += samples[static_cast<size_t>(j)] * std::cos(t);
      b += samples[static_cast<size_t>(j)] * std::sin(t);
    }
    a *= 2.0 / M;
    b *= 2.0 / M;
    if (a != 0.0 || b != 0.0) out.set_mode(k, a, b);
  }
  return out;
}

}  // namespace mpt
