#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <vector>

#include "doctest.h"
#include "mpt/dtn.hpp"
#include "mpt/shape.hpp"
#include "oracles.hpp"

using mpt::ConstructParams;
using mpt::FourierField;
using mpt::ShapeDerivative;

namespace {

ConstructParams benchmark_params() {
  ConstructParams p;
  p.config.radii = {0.5, 1.0, 1.5};
  p.config.sigmas = {2.0, 1.0, 3.0};
  p.config.N = 2;
  return p;
}

}  // namespace

TEST_CASE("zero perturbation has a zero derivative") {
  const ShapeDerivative sd =
      mpt::shape_derivative(FourierField::zero(), 0.5, 2.0, 3.0);
  CHECK(sd.neumann.norm_l2() == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  CHECK(sd.c_bc == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("the derivative state carries Dirichlet data c_bc * xi") {
  const FourierField xi = FourierField::cosine(2, 1.0);
  const ShapeDerivative sd = mpt::shape_derivative(xi, 0.5, 2.0, 3.0);
  const FourierField trace = mpt::boundary_trace(sd.solution, 1, 0);
  CHECK(trace.coeff_a(2) == doctest::Approx(1.0 / 3.0).epsilon(1e-11));
  CHECK(std::abs(trace.mean()) < 1e-11);
}

TEST_CASE("neumann response is diagonal with closed-form gains") {
  // a_1 = c_bc * mu_1 = (1/3)(13/11).
  const ShapeDerivative sd =
      mpt::shape_derivative(FourierField::cosine(1, 1.0), 0.5, 2.0, 3.0);
  CHECK(sd.neumann.coeff_a(1) ==
        doctest::Approx((1.0 / 3.0) * (13.0 / 11.0)).epsilon(1e-10));
  for (int k = 1; k <= 8; ++k) {
    const ShapeDerivative mode =
        mpt::shape_derivative(FourierField::cosine(k, 1.0), 0.5, 2.0, 3.0);
    const double expected =
        (1.0 / 3.0) * mpt::dtn_eigenvalue(k, 0.5, 2.0);
    CHECK(mode.neumann.coeff_a(k) ==
          doctest::Approx(expected).epsilon(1e-8));
    // Off-diagonal content is round-off.
    for (int j = 1; j <= 8; ++j) {
      if (j != k) CHECK(std::abs(mode.neumann.coeff_a(j)) < 1e-9);
      CHECK(std::abs(mode.neumann.coeff_b(j)) < 1e-9);
    }
  }
}

TEST_CASE("finite differences confirm the linearization at second order") {
  const ConstructParams params = benchmark_params();
  const std::vector<double> eps{1e-2, 5e-3, 2.5e-3};
  const mpt::FdReport report = mpt::fd_validate(
      FourierField::cosine(2, 1.0), FourierField::zero(), eps, params);
  REQUIRE(report.errors.size() == 3);
  CHECK(report.order > 1.7);
  CHECK(report.order < 2.3);
  CHECK(report.errors[1] < report.errors[0]);
  CHECK(report.errors[2] < report.errors[1]);
  // Reference is the closed-form diagonal response.
  CHECK(report.reference.coeff_a(2) ==
        doctest::Approx((1.0 / 3.0) *
                        mpt::dtn_eigenvalue(2, 0.5, 2.0))
            .epsilon(1e-10));
}

TEST_CASE("constant xi differencing is exact up to round-off") {
  // Psi is stationary in the constant direction at eta = 0 (pure dilation
  // enters only through mu_0 = 0), so the quotient collapses to round-off.
  const ConstructParams params = benchmark_params();
  const std::vector<double> eps{1e-2, 5e-3};
  const mpt::FdReport report =
      mpt::fd_validate(FourierField(1.0), FourierField::zero(), eps, params);
  CHECK(report.errors[0] < 1e-9);
  CHECK(report.errors[1] < 1e-9);
  CHECK(report.reference.norm_l2() ==
        doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
}

TEST_CASE("the reference map is linear in xi") {
  const ConstructParams params = benchmark_params();
  const std::vector<double> eps{1e-2, 5e-3};
  FourierField xi1 = FourierField::cosine(1, 0.4);
  FourierField xi2 = FourierField::sine(3, -0.2);
  const FourierField combined =
      mpt::fd_validate(xi1 + xi2, FourierField::zero(), eps, params).reference;
  const FourierField split =
      mpt::fd_validate(xi1, FourierField::zero(), eps, params).reference +
      mpt::fd_validate(xi2, FourierField::zero(), eps, params).reference;
  CHECK(combined.coeff_a(1) ==
        doctest::Approx(split.coeff_a(1)).epsilon(1e-10));
  CHECK(combined.coeff_b(3) ==
        doctest::Approx(split.coeff_b(3)).epsilon(1e-10));
}

TEST_CASE("parameter domain is enforced") {
  CHECK_THROWS_AS(
      mpt::shape_derivative(FourierField::zero(), 1.5, 2.0, 3.0),
      mpt::validation_error);
  CHECK_THROWS_AS(
      mpt::shape_derivative(FourierField::zero(), 0.5, -1.0, 3.0),
      mpt::validation_error);
  const ConstructParams params = benchmark_params();
  CHECK_THROWS_AS(mpt::fd_validate(FourierField::cosine(1, 1.0),
                                   FourierField::zero(),
                                   std::vector<double>{}, params),
                  mpt::validation_error);
  CHECK_THROWS_AS(mpt::fd_validate(FourierField::cosine(1, 1.0),
                                   FourierField::zero(),
                                   std::vector<double>{1e-2, -5e-3}, params),
                  mpt::validation_error);
  CHECK_THROWS_AS(mpt::fd_validate(FourierField::cosine(17, 1.0),
                                   FourierField::zero(),
                                   std::vector<double>{1e-2, 5e-3}, params),
                  mpt::validation_error);
}
