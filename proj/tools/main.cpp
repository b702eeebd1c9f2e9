#include <chrono>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mpt/construct.hpp"
#include "mpt/dtn.hpp"
#include "mpt/io.hpp"
#include "mpt/radial.hpp"
#include "mpt/shape.hpp"
#include "mpt/solver.hpp"
#include "mpt/verify.hpp"

namespace {

using mpt::io::json;

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

void log_line(const std::string& msg) { std::cerr << "[mpt] " << msg << "\n"; }

void emit(const json& summary, bool as_json, const std::string& human) {
  if (as_json)
    std::cout << summary.dump(2) << "\n";
  else
    std::cout << human << "\n";
}

mpt::LayeredGeometry geometry_from_config(const json& cfg) {
  if (cfg.contains("geometry_file"))
    return mpt::io::geometry_from_json(
        mpt::io::load_json(cfg.at("geometry_file").get<std::string>()));
  if (cfg.contains("geometry"))
    return mpt::io::geometry_from_json(cfg.at("geometry"));
  return mpt::io::geometry_from_json(cfg);
}

int run_solve(const std::string& config_path, bool as_json,
              const std::string& trace_out, int trace_curve, int trace_order,
              const std::string& meta_out) {
  const json cfg = mpt::io::load_json(config_path);
  const mpt::LayeredGeometry geometry = geometry_from_config(cfg);
  const mpt::FourierField dirichlet =
      cfg.contains("dirichlet") ? mpt::io::field_from_json(cfg.at("dirichlet"))
                                : mpt::FourierField::zero();
  std::vector<mpt::FourierField> jumps;
  if (cfg.contains("jumps"))
    for (const json& j : cfg.at("jumps"))
      jumps.push_back(mpt::io::field_from_json(j));
  const mpt::SolverConfig solver = mpt::io::solver_from_json(
      cfg.value("solver", json::object()), mpt::SolverConfig{});

  Timer timer;
  const mpt::PiecewiseSolution sol = solve(geometry, dirichlet, jumps, solver);
  log_line("solve: residual=" + mpt::io::format_number(sol.residual()) +
           " condition=" + mpt::io::format_number(sol.condition_estimate()) +
           " elapsed=" + std::to_string(timer.seconds()) + "s");

  const json meta = {{"residual", sol.residual()},
                     {"condition", sol.condition_estimate()},
                     {"K", solver.K},
                     {"nodes", solver.nodes()},
                     {"layers", geometry.layers()}};
  if (!meta_out.empty()) mpt::io::save_json(meta_out, meta);
  if (!trace_out.empty()) {
    const int curve =
        trace_curve < 0 ? geometry.layers() - 1 : trace_curve;
    const int M = std::max(4 * solver.K, 256);
    std::vector<std::vector<double>> rows;
    rows.reserve(static_cast<size_t>(M));
    for (int j = 0; j < M; ++j) {
      const double theta = 2.0 * mpt::pi * j / M;
      rows.push_back(
          {theta, sol.normal_derivative(curve, theta, trace_order)});
    }
    mpt::io::write_csv(trace_out, {"theta", "value"}, rows);
  }
  emit(meta, as_json,
       "residual " + mpt::io::format_number(sol.residual()) + ", condition " +
           mpt::io::format_number(sol.condition_estimate()));
  return 0;
}

int run_spectrum(double R, double sigma1, int kmax, bool numerical, int K,
                 bool as_json, const std::string& out,
                 const std::string& gains_config,
                 const std::string& gains_out, int gains_kmax) {
  if (kmax < 1 || kmax > 64)
    throw mpt::validation_error("kmax must lie in 1..64");
  Timer timer;
  mpt::SolverConfig solver;
  solver.K = K;
  std::vector<std::vector<double>> rows;
  json mu_list = json::array();
  for (int k = 0; k <= kmax; ++k) {
    const double mu = mpt::dtn_eigenvalue(k, R, sigma1, 2);
    double nu = 0.0, rel = 0.0;
    if (numerical) {
      nu = mpt::numerical_dtn(R, sigma1, k, solver);
      rel = k == 0 ? std::abs(nu) : std::abs(mu - nu) / std::abs(mu);
    }
    rows.push_back({static_cast<double>(k), mu, nu, rel});
    mu_list.push_back(mu);
  }
  log_line("spectrum: kmax=" + std::to_string(kmax) +
           " elapsed=" + std::to_string(timer.seconds()) + "s");
  if (!out.empty())
    mpt::io::write_csv(out, {"k", "mu_closed_form", "mu_numerical", "rel_err"},
                       rows);

  json summary = {{"R", R}, {"sigma1", sigma1}, {"mu", mu_list}};
  if (!gains_out.empty() || !gains_config.empty()) {
    if (gains_config.empty())
      throw mpt::validation_error("jump gains need --gains-config");
    const json gcfg = mpt::io::load_json(gains_config);
    const mpt::PhaseConfig config = mpt::io::phase_config_from_json(gcfg);
    const mpt::SolverConfig gsolver = mpt::io::solver_from_json(
        gcfg.value("solver", json::object()), mpt::SolverConfig{});
    const std::vector<double> gains =
        mpt::jump_mode_gains(config, gains_kmax, gsolver);
    std::vector<std::vector<double>> grows;
    for (size_t i = 0; i < gains.size(); ++i)
      grows.push_back({static_cast<double>(i + 1), gains[i]});
    if (!gains_out.empty())
      mpt::io::write_csv(gains_out, {"k", "g_k"}, grows);
    summary["jump_gains"] = gains;
  }
  emit(summary, as_json,
       "mu_1 = " + mpt::io::format_number(mu_list[1].get<double>()) +
           (out.empty() ? "" : ", spectrum written to " + out));
  return 0;
}

int run_derive_check(const std::string& config_path, bool as_json,
                     const std::string& out) {
  const json cfg = mpt::io::load_json(config_path);
  const mpt::ConstructParams params =
      mpt::io::construct_params_from_json(cfg);
  const mpt::FourierField xi =
      cfg.contains("xi") ? mpt::io::field_from_json(cfg.at("xi"))
                         : mpt::FourierField::cosine(2, 1.0);
  const mpt::FourierField eta =
      cfg.contains("eta") ? mpt::io::field_from_json(cfg.at("eta"))
                          : mpt::FourierField::zero();
  std::vector<double> eps{1e-2, 5e-3, 2.5e-3};
  if (cfg.contains("eps")) eps = cfg.at("eps").get<std::vector<double>>();

  Timer timer;
  const mpt::FdReport report = fd_validate(xi, eta, eps, params);
  log_line("derive-check: order=" + std::to_string(report.order) +
           " elapsed=" + std::to_string(timer.seconds()) + "s");
  const json j = mpt::io::report_to_json(report);
  if (!out.empty()) mpt::io::save_json(out, j);
  emit(j, as_json, "observed order " + std::to_string(report.order));
  return 0;
}

int run_construct(const std::string& config_path, bool as_json,
                  const std::string& prefix) {
  const json cfg = mpt::io::load_json(config_path);
  const mpt::ConstructParams params =
      mpt::io::construct_params_from_json(cfg);
  if (!cfg.contains("eta"))
    throw mpt::validation_error("construct config needs an \"eta\" field");
  const mpt::FourierField eta = mpt::io::field_from_json(cfg.at("eta"));

  Timer timer;
  const mpt::ConstructionResult result = construct(eta, params);
  const mpt::GluedSystem glued = glue(result, params);
  log_line("construct: iterations=" +
           std::to_string(result.newton_residuals.size() - 1) + " residual=" +
           mpt::io::format_number(result.newton_residuals.back()) +
           " elapsed=" + std::to_string(timer.seconds()) + "s");
  for (const std::string& w : result.warnings) log_line("warning: " + w);

  json summary = mpt::io::result_to_json(result);
  summary["value_jump_sup"] = glued.value_jump_sup;
  summary["flux_jump_sup"] = glued.flux_jump_sup;
  if (!prefix.empty()) {
    mpt::io::save_json(prefix + "_result.json", summary);
    mpt::io::save_json(prefix + "_geometry.json",
                       mpt::io::geometry_to_json(glued.geometry));
    const mpt::StarCurve& middle = glued.geometry.interfaces[1];
    const double s2 = params.config.sigmas[1];
    const double s3 = params.config.sigmas[2];
    const int M = std::max(4 * params.solver.K, 256);
    std::vector<std::vector<double>> rows;
    for (int j = 0; j < M; ++j) {
      const double theta = 2.0 * mpt::pi * j / M;
      const double r = middle.radius(theta);
      const mpt::Vec2 p = middle.point(theta);
      const mpt::Vec2 n = middle.normal(theta);
      rows.push_back({theta, glued.inner.value(p),
                      s2 * glued.inner.normal_derivative(1, theta, 1),
                      s3 * glued.outer.deriv(r, 1) * dot(p, n) / r});
    }
    mpt::io::write_csv(prefix + "_trace.csv",
                       {"theta", "v", "flux_inner", "flux_outer"}, rows);
  }
  emit(summary, as_json,
       "converged in " + std::to_string(result.newton_residuals.size() - 1) +
           " iterations, final residual " +
           mpt::io::format_number(result.newton_residuals.back()));
  return 0;
}

int run_verify(const std::string& config_path, bool as_json,
               const std::string& out, const std::string& trace_out,
               bool witness, int decompose_curve) {
  const json cfg = mpt::io::load_json(config_path);
  const mpt::LayeredGeometry geometry = geometry_from_config(cfg);
  std::vector<int> orders{1, 2};
  if (cfg.contains("orders")) orders = cfg.at("orders").get<std::vector<int>>();
  const mpt::SolverConfig solver = mpt::io::solver_from_json(
      cfg.value("solver", json::object()), mpt::perturbed_defaults());

  Timer timer;
  const mpt::OverdeterminedReport report =
      check_overdetermined(geometry, orders, solver);
  json j = mpt::io::report_to_json(report);

  std::optional<mpt::PiecewiseSolution> sol;
  auto solved = [&]() -> const mpt::PiecewiseSolution& {
    if (!sol)
      sol.emplace(solve(geometry, mpt::FourierField::zero(), {}, solver));
    return *sol;
  };
  if (witness)
    j["witness"] = mpt::io::report_to_json(
        rigidity_witness(geometry, cfg.value("condition_tol", 1e-8),
                         cfg.value("curvature_tol", 1e-8), solver));
  if (decompose_curve >= 0)
    j["decomposition_residual"] =
        laplacian_decomposition_residual(solved(), decompose_curve);
  log_line("verify: solve_residual=" +
           mpt::io::format_number(report.solve_residual) +
           " elapsed=" + std::to_string(timer.seconds()) + "s");

  if (!trace_out.empty()) {
    const int M = std::max(4 * solver.K, 256);
    const int outer = geometry.layers() - 1;
    std::vector<std::string> header{"theta"};
    for (int k : orders) header.push_back("dn" + std::to_string(k) + "_u");
    std::vector<std::vector<double>> rows;
    for (int i = 0; i < M; ++i) {
      const double theta = 2.0 * mpt::pi * i / M;
      std::vector<double> row{theta};
      for (int k : orders)
        row.push_back(solved().normal_derivative(outer, theta, k));
      rows.push_back(std::move(row));
    }
    mpt::io::write_csv(trace_out, header, rows);
  }
  if (!out.empty()) mpt::io::save_json(out, j);

  std::string human;
  for (size_t i = 0; i < report.orders.size(); ++i)
    human += (i ? "; " : "") + ("c_" + std::to_string(report.orders[i])) +
             " = " + mpt::io::format_number(report.constants[i]) + ", dev " +
             mpt::io::format_number(report.deviations[i]);
  emit(j, as_json, human);
  return 0;
}

int run_collapse(const std::string& config_path, bool as_json,
                 const std::string& out, const std::string& profile_out) {
  const json cfg = mpt::io::load_json(config_path);
  mpt::PhaseConfig config = mpt::io::phase_config_from_json(cfg);
  const mpt::RadialProfile original = radial_solution(config);

  if (!profile_out.empty()) {
    const int samples = 512;
    const double Rm = config.radii.back();
    std::vector<std::vector<double>> rows;
    for (int i = 0; i <= samples; ++i) {
      const double r = Rm * i / samples;
      rows.push_back({r, original.value(r), original.deriv(r, 1),
                      static_cast<double>(original.shell_of(r))});
    }
    mpt::io::write_csv(profile_out, {"r", "u", "du_dr", "phase"}, rows);
  }

  mpt::RadialProfile profile = original;
  json stages = json::array();
  while (profile.config().layers() > 1) {
    const mpt::PhaseConfig& c = profile.config();
    const double alpha1 = profile.value(c.radii[0]);
    const double ratio = c.sigmas[0] / c.sigmas[1];
    const mpt::RadialProfile collapsed = phase_collapse(profile, alpha1);
    // Independent sup check of the affine transform against the closed form.
    double sup = 0.0;
    const int samples = 512;
    for (int i = 0; i <= samples; ++i) {
      const double r = c.radii.back() * i / samples;
      const double u = profile.value(r);
      const double tilde =
          r <= c.radii[0] ? ratio * (u - alpha1) + alpha1 : u;
      sup = std::max(sup, std::abs(tilde - collapsed.value(r)));
    }
    stages.push_back({{"layers", c.layers()}, {"sup_error", sup}});
    profile = collapsed;
  }
  const json j = {{"stages", stages},
                  {"final_layers", 1},
                  {"value_at_origin", profile.value(0.0)}};
  if (!out.empty()) mpt::io::save_json(out, j);
  emit(j, as_json,
       std::to_string(stages.size()) + " collapse stages verified");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-phase torsion workbench: spectral transmission solves, "
               "two-phase DtN spectra, and overdetermined-boundary "
               "construction/verification on perturbed layered disks"};
  app.require_subcommand(1);

  bool as_json = false;
  std::string config_path, out, trace_out, meta_out, prefix, profile_out;
  std::string gains_config, gains_out;
  int trace_curve = -1, trace_order = 1, decompose_curve = -1;
  int kmax = 8, K = 16, gains_kmax = 10;
  double R = 0.5, sigma1 = 2.0;
  bool no_numerical = false, witness = false;

  auto add_common = [&](CLI::App* sc) {
    sc->add_flag("--json", as_json, "machine-readable stdout summary");
  };

  CLI::App* solve_cmd =
      app.add_subcommand("solve", "solve one transmission problem");
  solve_cmd->add_option("--config", config_path, "JSON config")->required();
  solve_cmd->add_option("--trace-out", trace_out, "boundary trace CSV path");
  solve_cmd->add_option("--curve", trace_curve,
                        "trace curve index (default: outer)");
  solve_cmd->add_option("--order", trace_order,
                        "normal-derivative order for the trace (0 = value)");
  solve_cmd->add_option("--meta-out", meta_out, "metadata JSON path");
  add_common(solve_cmd);

  CLI::App* spectrum_cmd = app.add_subcommand(
      "spectrum", "two-phase Dirichlet-to-Neumann eigenvalues");
  spectrum_cmd->alias("dtn-spectrum");
  spectrum_cmd->add_option("--R", R, "inclusion radius in (0,1)");
  spectrum_cmd->add_option("--sigma1", sigma1, "inclusion conductivity");
  spectrum_cmd->add_option("--kmax", kmax, "highest mode");
  spectrum_cmd->add_option("--K", K, "collocation truncation");
  spectrum_cmd->add_flag("--no-numerical", no_numerical,
                         "skip the collocation cross-check column");
  spectrum_cmd->add_option("--out", out, "spectrum CSV path");
  spectrum_cmd->add_option("--gains-config", gains_config,
                           "JSON with radii/sigmas for jump-mode gains");
  spectrum_cmd->add_option("--gains-out", gains_out, "jump gains CSV path");
  spectrum_cmd->add_option("--gains-kmax", gains_kmax,
                           "highest jump-gain mode");
  add_common(spectrum_cmd);

  CLI::App* derive_cmd = app.add_subcommand(
      "derive-check", "finite-difference check of the shape derivative");
  derive_cmd->add_option("--config", config_path, "JSON config")->required();
  derive_cmd->add_option("--out", out, "report JSON path");
  add_common(derive_cmd);

  CLI::App* construct_cmd = app.add_subcommand(
      "construct", "build a non-radial overdetermined configuration");
  construct_cmd->add_option("--config", config_path, "JSON config")
      ->required();
  construct_cmd->add_option("--out-prefix", prefix,
                            "prefix for result/geometry/trace outputs");
  add_common(construct_cmd);

  CLI::App* verify_cmd = app.add_subcommand(
      "verify", "re-solve a geometry and check boundary conditions");
  verify_cmd->add_option("--config", config_path, "JSON config")->required();
  verify_cmd->add_option("--out", out, "report JSON path");
  verify_cmd->add_option("--trace-out", trace_out, "per-node trace CSV path");
  verify_cmd->add_flag("--witness", witness,
                       "include the two-condition rigidity witness (m = 2)");
  verify_cmd->add_option("--decompose-curve", decompose_curve,
                         "include the Laplacian decomposition residual");
  add_common(verify_cmd);

  CLI::App* collapse_cmd = app.add_subcommand(
      "collapse", "iterated phase merging of a radial configuration");
  collapse_cmd->add_option("--config", config_path, "JSON config")->required();
  collapse_cmd->add_option("--out", out, "report JSON path");
  collapse_cmd->add_option("--profile-out", profile_out,
                           "radial profile CSV path");
  add_common(collapse_cmd);

  try {
    app.parse(argc, argv);
    if (solve_cmd->parsed())
      return run_solve(config_path, as_json, trace_out, trace_curve,
                       trace_order, meta_out);
    if (spectrum_cmd->parsed())
      return run_spectrum(R, sigma1, kmax, !no_numerical, K, as_json, out,
                          gains_config, gains_out, gains_kmax);
    if (derive_cmd->parsed()) return run_derive_check(config_path, as_json, out);
    if (construct_cmd->parsed())
      return run_construct(config_path, as_json, prefix);
    if (verify_cmd->parsed())
      return run_verify(config_path, as_json, out, trace_out, witness,
                        decompose_curve);
    if (collapse_cmd->parsed())
      return run_collapse(config_path, as_json, out, profile_out);
    return 2;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const mpt::validation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const mpt::convergence_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const mpt::io_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: config: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
