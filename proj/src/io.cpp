#include "mpt/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace mpt::io {

namespace {

const json& require(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end())
    throw validation_error(std::string("missing config key \"") + key + "\"");
  return *it;
}

std::vector<double> number_list(const json& j, const char* key) {
  const json& arr = require(j, key);
  if (!arr.is_array())
    throw validation_error(std::string("config key \"") + key +
                           "\" must be an array of numbers");
  return arr.get<std::vector<double>>();
}

std::vector<FourierMode> modes_from_json(const json& j) {
  std::vector<FourierMode> modes;
  for (const json& m : j) {
    if (!m.is_array() || m.size() != 3)
      throw validation_error("each mode must be a [k, a, b] triple");
    modes.push_back({m[0].get<int>(), m[1].get<double>(), m[2].get<double>()});
  }
  return modes;
}

json modes_to_json(const std::vector<FourierMode>& modes) {
  json out = json::array();
  for (const FourierMode& m : modes) out.push_back({m.k, m.a, m.b});
  return out;
}

}  // namespace

json field_to_json(const FourierField& f) {
  return {{"mean", f.mean()}, {"modes", modes_to_json(f.modes())}};
}

FourierField field_from_json(const json& j) {
  if (!j.is_object()) throw validation_error("a field must be a JSON object");
  if (j.contains("mode"))
    return FourierField::cosine(j.at("mode").get<int>(),
                                j.value("amplitude", 0.0));
  FourierField f(j.value("mean", 0.0));
  if (j.contains("modes"))
    f = FourierField(j.value("mean", 0.0), modes_from_json(j.at("modes")));
  return f;
}

json curve_to_json(const StarCurve& c) {
  return {{"center", {c.center().x, c.center().y}},
          {"r0", c.r0()},
          {"modes", modes_to_json(c.modes())}};
}

StarCurve curve_from_json(const json& j) {
  Vec2 center{0.0, 0.0};
  if (j.contains("center")) {
    const json& c = j.at("center");
    if (!c.is_array() || c.size() != 2)
      throw validation_error("curve center must be [x, y]");
    center = {c[0].get<double>(), c[1].get<double>()};
  }
  std::vector<FourierMode> modes;
  if (j.contains("modes")) modes = modes_from_json(j.at("modes"));
  return StarCurve(center, require(j, "r0").get<double>(), std::move(modes));
}

json geometry_to_json(const LayeredGeometry& g) {
  json curves = json::array();
  for (const StarCurve& c : g.interfaces) curves.push_back(curve_to_json(c));
  return {{"interfaces", curves}, {"sigmas", g.sigmas}, {"f0", g.f0}};
}

LayeredGeometry geometry_from_json(const json& j) {
  LayeredGeometry g;
  g.sigmas = number_list(j, "sigmas");
  g.f0 = j.value("f0", 1.0);
  if (j.contains("interfaces")) {
    for (const json& c : j.at("interfaces"))
      g.interfaces.push_back(curve_from_json(c));
  } else {
    for (double r : number_list(j, "radii"))
      g.interfaces.push_back(StarCurve::circle(r));
  }
  return g;
}

json phase_config_to_json(const PhaseConfig& c) {
  return {{"radii", c.radii}, {"sigmas", c.sigmas}, {"N", c.N}};
}

PhaseConfig phase_config_from_json(const json& j) {
  PhaseConfig c;
  c.radii = number_list(j, "radii");
  c.sigmas = number_list(j, "sigmas");
  c.N = j.value("N", 2);
  return c;
}

SolverConfig solver_from_json(const json& j, SolverConfig base) {
  base.K = j.value("K", base.K);
  base.M = j.value("M", base.M);
  base.residual_tol = j.value("residual_tol", base.residual_tol);
  base.svd_cutoff = j.value("svd_cutoff", base.svd_cutoff);
  base.max_dn_order = j.value("max_dn_order", base.max_dn_order);
  base.probe_margin = j.value("probe_margin", base.probe_margin);
  return base;
}

ConstructParams construct_params_from_json(const json& j) {
  ConstructParams p;
  p.config = phase_config_from_json(j);
  if (j.contains("solver")) p.solver = solver_from_json(j.at("solver"), p.solver);
  p.newton_tol = j.value("newton_tol", p.newton_tol);
  p.max_iterations = j.value("max_iterations", p.max_iterations);
  p.mean_tol = j.value("mean_tol", p.mean_tol);
  p.amplitude_cap = j.value("amplitude_cap", p.amplitude_cap);
  return p;
}

json report_to_json(const OverdeterminedReport& r) {
  json per_order = json::array();
  for (size_t i = 0; i < r.orders.size(); ++i)
    per_order.push_back({{"order", r.orders[i]},
                         {"c_k", r.constants[i]},
                         {"dev_k", r.deviations[i]}});
  return {{"orders", per_order},
          {"nonradiality", r.nonradiality},
          {"solve_residual", r.solve_residual},
          {"condition", r.condition}};
}

json report_to_json(const FdReport& r) {
  return {{"eps", r.eps},
          {"errors", r.errors},
          {"order", r.order},
          {"reference", field_to_json(r.reference)}};
}

json report_to_json(const RigidityReport& r) {
  return {{"c1", r.c1},
          {"c2", r.c2},
          {"dev1", r.dev1},
          {"dev2", r.dev2},
          {"mean_curvature", r.mean_curvature},
          {"curvature_variation", r.curvature_variation},
          {"identity_error", r.identity_error},
          {"condition_tol", r.condition_tol},
          {"curvature_tol", r.curvature_tol},
          {"conditions_hold", r.conditions_hold},
          {"curvature_constant", r.curvature_constant},
          {"witness", r.witness}};
}

json result_to_json(const ConstructionResult& r) {
  return {{"converged", r.converged},
          {"iterations", r.newton_residuals.size() - 1},
          {"newton_residuals", r.newton_residuals},
          {"used_full_newton", r.used_full_newton},
          {"warnings", r.warnings},
          {"raw_mean", r.final_state.raw_mean},
          {"final_residual_l2", r.newton_residuals.back()},
          {"solve_residual", r.final_state.state.residual()},
          {"eta", field_to_json(r.eta)},
          {"xi", field_to_json(r.xi)}};
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot open " + path + " for writing");
  for (size_t i = 0; i < header.size(); ++i)
    out << (i ? "," : "") << header[i];
  out << "\n";
  for (const auto& row : rows) {
    if (row.size() != header.size())
      throw io_error("csv row width does not match the header");
    for (size_t i = 0; i < row.size(); ++i)
      out << (i ? "," : "") << format_number(row[i]);
    out << "\n";
  }
  if (!out) throw io_error("write failed for " + path);
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw validation_error("malformed JSON in " + path + ": " + e.what());
  }
  return j;
}

void save_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot open " + path + " for writing");
  out << j.dump(2) << "\n";
  if (!out) throw io_error("write failed for " + path);
}

}  // namespace mpt::io
