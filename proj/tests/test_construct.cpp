#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "mpt/construct.hpp"
#include "oracles.hpp"

using mpt::ConstructionResult;
using mpt::ConstructParams;
using mpt::FourierField;
using mpt::pi;

namespace {

ConstructParams benchmark_params() {
  ConstructParams p;
  p.config.radii = {0.5, 1.0, 1.5};
  p.config.sigmas = {2.0, 1.0, 3.0};
  p.config.N = 2;
  return p;
}

FourierField rotated(const FourierField& f, double phi) {
  FourierField out(f.mean());
  for (const mpt::FourierMode& m : f.modes()) {
    const double c = std::cos(m.k * phi), s = std::sin(m.k * phi);
    out.set_mode(m.k, m.a * c - m.b * s, m.a * s + m.b * c);
  }
  return out;
}

}  // namespace

TEST_CASE("parameter validation") {
  ConstructParams p = benchmark_params();
  CHECK_NOTHROW(p.validate());
  CHECK(p.c_bc() == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

  ConstructParams scaled = benchmark_params();
  scaled.config.radii = {0.55, 1.1, 1.65};
  CHECK_THROWS_WITH_AS(scaled.validate(),
                       doctest::Contains("rescale"), mpt::validation_error);

  ConstructParams thin = benchmark_params();
  thin.config.radii = {0.5, 1.0};
  thin.config.sigmas = {2.0, 1.0};
  CHECK_THROWS_AS(thin.validate(), mpt::validation_error);

  ConstructParams flat = benchmark_params();
  flat.config.sigmas = {2.0, 1.0, 1.0};
  CHECK_THROWS_AS(flat.validate(), mpt::validation_error);

  ConstructParams general = benchmark_params();
  general.config.sigmas = {4.0, 2.0, 3.0};
  CHECK(general.c_bc() == doctest::Approx(1.0 / 12.0).epsilon(1e-14));
}

TEST_CASE("the concentric configuration is a zero of the map") {
  const ConstructParams p = benchmark_params();
  const mpt::PsiEvaluation eval =
      mpt::psi_map(FourierField::zero(), FourierField::zero(), p);
  CHECK(eval.residual.norm_l2() < 1e-12);
  CHECK(std::abs(eval.raw_mean) < 1e-12);
}

TEST_CASE("a pure dilation of the middle interface stays a zero") {
  // Constant xi changes both fluxes identically at first order; the
  // residual remains at solver accuracy.
  const ConstructParams p = benchmark_params();
  const mpt::PsiEvaluation eval =
      mpt::psi_map(FourierField(0.01), FourierField::zero(), p);
  CHECK(eval.residual.norm_l2() < 1e-10);
}

TEST_CASE("an inner wobble excites a genuine residual") {
  const ConstructParams p = benchmark_params();
  const mpt::PsiEvaluation eval = mpt::psi_map(
      FourierField::zero(), FourierField::cosine(3, 0.01), p);
  const double l2 = eval.residual.norm_l2();
  CHECK(l2 > 1e-6);
  CHECK(l2 < FourierField::cosine(3, 0.01).norm_l2());
}

TEST_CASE("the raw mean vanishes for random small perturbations") {
  const ConstructParams p = benchmark_params();
  std::mt19937 rng(12345u);
  std::uniform_real_distribution<double> amp(-0.01, 0.01);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    FourierField xi, eta;
    for (int k = 1; k <= 5; ++k) {
      xi.set_mode(k, amp(rng) / k, amp(rng) / k);
      eta.set_mode(k, amp(rng) / k, amp(rng) / k);
    }
    const mpt::PsiEvaluation eval = mpt::psi_map(xi, eta, p);
    worst = std::max(worst, std::abs(eval.raw_mean));
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("perturbations that break nesting are rejected") {
  const ConstructParams p = benchmark_params();
  CHECK_THROWS_AS(mpt::psi_map(FourierField::cosine(2, 0.6),
                               FourierField::zero(), p),
                  mpt::validation_error);
}

TEST_CASE("benchmark construction converges onto a non-radial zero") {
  const ConstructParams p = benchmark_params();
  const ConstructionResult result =
      mpt::construct(FourierField::cosine(3, 0.03), p);
  CHECK(result.converged);
  CHECK_FALSE(result.used_full_newton);
  CHECK(result.warnings.empty());
  REQUIRE(!result.newton_residuals.empty());
  CHECK(result.newton_residuals.size() <= 31);
  CHECK(result.newton_residuals.back() <= 1e-10);
  for (size_t i = 0; i + 1 < result.newton_residuals.size(); ++i) {
    CHECK(result.newton_residuals[i + 1] < result.newton_residuals[i]);
  }
  const FourierField& xi = result.xi;
  CHECK(xi.mean() == 0.0);
  CHECK(xi.sup_norm() > 1e-4);
  CHECK(xi.sup_norm() < 0.1);
  // The response is dominated by the harmonic of the driving mode.
  const double a3 = std::abs(xi.coeff_a(3));
  CHECK(a3 > 1e-3);
  for (const mpt::FourierMode& m : xi.modes()) {
    if (m.k == 3) continue;
    CHECK(std::abs(m.a) < a3 / 10.0);
    CHECK(std::abs(m.b) < a3 / 10.0);
  }
  // Frozen leading coefficient of the constructed boundary.
  CHECK(xi.coeff_a(3) ==
        doctest::Approx(1.8734045164366206e-3).epsilon(1e-6));
}

TEST_CASE("zero eta needs no correction at all") {
  const ConstructParams p = benchmark_params();
  const ConstructionResult result = mpt::construct(FourierField::zero(), p);
  CHECK(result.converged);
  CHECK(result.newton_residuals.size() == 1);
  CHECK(result.xi.max_mode() == 0);
  CHECK(result.xi.mean() == 0.0);
}

TEST_CASE("construction is equivariant under rotations") {
  const ConstructParams p = benchmark_params();
  const double phi = 0.7;
  const FourierField eta = FourierField::cosine(3, 0.03);
  const ConstructionResult base = mpt::construct(eta, p);
  const ConstructionResult turned = mpt::construct(rotated(eta, phi), p);
  const FourierField expected = rotated(base.xi, phi);
  for (int k = 1; k <= p.solver.K; ++k) {
    CHECK(turned.xi.coeff_a(k) ==
          doctest::Approx(expected.coeff_a(k)).scale(1.0).epsilon(1e-8));
    CHECK(turned.xi.coeff_b(k) ==
          doctest::Approx(expected.coeff_b(k)).scale(1.0).epsilon(1e-8));
  }
}

TEST_CASE("amplitude guards reject oversized eta") {
  const ConstructParams p = benchmark_params();
  CHECK_THROWS_AS(mpt::construct(FourierField::cosine(2, 0.2), p),
                  mpt::validation_error);
  // Inside the cap but swallowing the inner layer: R_1/2 = 0.25 with a
  // loosened cap still throws through the layer guard.
  ConstructParams loose = benchmark_params();
  loose.amplitude_cap = 0.4;
  CHECK_THROWS_WITH_AS(mpt::construct(FourierField::cosine(2, 0.3), loose),
                       doctest::Contains("inner layer"),
                       mpt::validation_error);
}

TEST_CASE("high eta modes are dropped with a warning") {
  const ConstructParams p = benchmark_params();
  FourierField eta = FourierField::cosine(3, 0.03);
  eta.set_mode(19, 1e-3, 0.0);
  const ConstructionResult result = mpt::construct(eta, p);
  REQUIRE(!result.warnings.empty());
  CHECK(result.warnings[0].find("truncation") != std::string::npos);
  CHECK(result.eta.max_mode() <= p.solver.K);
  CHECK(result.converged);
}

TEST_CASE("equal inner conductivities warn about the trivial solution") {
  ConstructParams p = benchmark_params();
  p.config.sigmas = {1.0, 1.0, 3.0};
  const ConstructionResult result =
      mpt::construct(FourierField::cosine(3, 0.02), p);
  bool mentioned = false;
  for (const std::string& w : result.warnings)
    mentioned = mentioned || w.find("sigma_1 == sigma_2") != std::string::npos;
  CHECK(mentioned);
  // No contrast, no correction: xi stays at round-off scale.
  CHECK(result.xi.sup_norm() < 1e-8);
}

TEST_CASE("unreachable tolerance ends in a convergence error") {
  ConstructParams p = benchmark_params();
  p.newton_tol = 1e-16;
  p.max_iterations = 7;
  try {
    mpt::construct(FourierField::cosine(3, 0.03), p);
    FAIL("expected a convergence error");
  } catch (const mpt::convergence_error& e) {
    // The iteration floors at solver accuracy, far below the benchmark tol
    // but above the impossible request.
    CHECK(e.residual > 1e-16);
    CHECK(e.residual < 1e-9);
  }
}

TEST_CASE("glue composes the counterexample and reports tiny jumps") {
  const ConstructParams p = benchmark_params();
  const ConstructionResult result =
      mpt::construct(FourierField::cosine(3, 0.03), p);
  const mpt::GluedSystem glued = mpt::glue(result, p);
  REQUIRE(glued.geometry.layers() == 3);
  CHECK(glued.geometry.sigmas[0] == 2.0);
  CHECK(glued.geometry.sigmas[1] == 1.0);
  CHECK(glued.geometry.sigmas[2] == 3.0);
  // Outermost interface stays the concentric circle.
  CHECK(glued.geometry.interfaces[2].modes().empty());
  CHECK(glued.geometry.interfaces[2].r0() == doctest::Approx(1.5));
  // The middle interface carries the constructed xi.
  CHECK(glued.geometry.interfaces[1].modes().size() ==
        result.xi.modes().size());
  CHECK(glued.value_jump_sup <= 1e-9);
  CHECK(glued.flux_jump_sup <= 1e-9);
  // The outer profile is the merged radial solution.
  CHECK(glued.outer.value(1.5) == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
  CHECK(glued.outer.value(0.0) == doctest::Approx(0.1875).epsilon(1e-12));

  ConstructionResult broken = result;
  broken.converged = false;
  CHECK_THROWS_AS(mpt::glue(broken, p), mpt::validation_error);
}
