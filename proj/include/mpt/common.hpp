#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace mpt {

inline constexpr double pi = 3.14159265358979323846;

// Bad user input: invalid geometry, out-of-domain parameters, malformed config.
// CLI maps this to exit code 2.
struct validation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Iteration or least-squares residual failed to reach its tolerance.
// CLI maps this to exit code 3.
struct convergence_error : std::runtime_error {
  double residual = 0.0;
  convergence_error(const std::string& msg, double res)
      : std::runtime_error(msg), residual(res) {}
};

// File system / serialization failure. CLI maps this to exit code 1.
struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

}  // namespace mpt
