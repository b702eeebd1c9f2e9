#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "mpt/construct.hpp"
#include "mpt/fourier.hpp"
#include "mpt/geometry.hpp"
#include "mpt/radial.hpp"
#include "mpt/shape.hpp"
#include "mpt/solver.hpp"
#include "mpt/verify.hpp"

// Serialization boundary: JSON for configs and reports, CSV for field data.
// File-system failures throw io_error; malformed content throws
// validation_error so the CLI exit codes distinguish the two.
namespace mpt::io {

using json = nlohmann::json;

json field_to_json(const FourierField& f);
// Accepts {mean?, modes: [[k,a,b],...]} or the shorthand
// {mode: k, amplitude: a} for a single cosine.
FourierField field_from_json(const json& j);

json curve_to_json(const StarCurve& c);
StarCurve curve_from_json(const json& j);

json geometry_to_json(const LayeredGeometry& g);
// Accepts {interfaces: [curve...], sigmas, f0?} or the concentric shorthand
// {radii: [...], sigmas, f0?}.
LayeredGeometry geometry_from_json(const json& j);

json phase_config_to_json(const PhaseConfig& c);
PhaseConfig phase_config_from_json(const json& j);

// Missing keys keep the values already present in base.
SolverConfig solver_from_json(const json& j, SolverConfig base);

// Reads {radii, sigmas, N?, solver?, newton_tol?, max_iterations?,
// mean_tol?, amplitude_cap?}.
ConstructParams construct_params_from_json(const json& j);

json report_to_json(const OverdeterminedReport& r);
json report_to_json(const FdReport& r);
json report_to_json(const RigidityReport& r);
json result_to_json(const ConstructionResult& r);

// Deterministic scientific formatting with 17 significant digits; the same
// doubles always produce the same bytes.
std::string format_number(double v);
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

json load_json(const std::string& path);
void save_json(const std::string& path, const json& j);

}  // namespace mpt::io
