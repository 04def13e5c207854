#pragma once

// JSON and CSV exports for solutions, residual reports, trajectories and
// front meshes.

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "twave/closed_form.hpp"
#include "twave/front_geometry.hpp"
#include "twave/nbody_reference.hpp"
#include "twave/residual_lab.hpp"

namespace twave::io {

/// %.17g: round-trips every double.
std::string format_double(double x);

/// {provenance, exponent: "2/3", blocks: [{alpha, S: [x, y, z]}], domain: [a, b]}.
/// Infinite domain ends are written as the strings "inf" / "-inf".
nlohmann::json to_json(const PowerLawSolution& sol);
PowerLawSolution solution_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ResidualReport& rep);

nlohmann::json front_header(const FrontSurface& s, const std::string& vertex_file);

void write_text(const std::filesystem::path& path, const std::string& text);
void write_json(const std::filesystem::path& path, const nlohmann::json& j);
nlohmann::json read_json(const std::filesystem::path& path);

/// Columns h, max_abs, max_rel, order; order is between a row and the previous one.
std::string sweep_csv(const ResidualReport& rep);

/// (t, r1x, r1y, r1z, r2x, ..., v2z) for two-body states,
/// (t, dx, dy, dz, dvx, dvy, dvz) for relative ones.
std::string trajectory_csv(const std::vector<PhaseState>& traj);

/// Vertex list (x, y, z) in Psi-space.
std::string vertex_csv(const FrontSurface& s);

}  // namespace twave::io
