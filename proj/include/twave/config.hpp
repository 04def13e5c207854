#pragma once

// Run configuration, read from an INI-style file (";" or "#" after a space
// starts a comment):
//
//   [body]      G, m1, m2
//   [wave]      mu, c, v = x, y, z, lambda_sq | lambda1_sq, lambda2_sq
//   [solution]  scenario = rel2body | twobody | ncme-collision,
//               direction = x, y, z, domain = a, b
//   [verify]    checks = ode, pde, linear-wave, rk4; w_grid = lo, hi, n;
//               spacings; r_lo, r_hi, t_range, lattice_points;
//               rk4_t0, rk4_t_end, rk4_h; solution_file
//   [front]     chart, times, mesh = rows x cols, directions
//   [run]       output_dir, seed

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "twave/closed_form.hpp"
#include "twave/core_model.hpp"
#include "twave/front_geometry.hpp"
#include "twave/residual_lab.hpp"

namespace twave {

enum class CheckKind { Ode, Pde, LinearWave, Rk4 };

const char* to_string(CheckKind kind);

struct VerifyOptions {
    std::vector<CheckKind> checks = {CheckKind::Ode, CheckKind::Pde, CheckKind::Rk4};
    double w_lo = 0.5;
    double w_hi = 5.0;
    std::size_t w_points = 51;
    std::vector<double> spacings = {1e-2, 5e-3};
    /// When absent, a box around the origin is placed where w stays inside the domain.
    std::optional<Lattice> lattice;
    double rk4_t0 = 1.0;
    double rk4_t_end = 2.0;
    double rk4_h = 1e-3;
    std::optional<std::filesystem::path> solution_file;
};

struct FrontOptions {
    CoordinateChart chart;
    std::vector<double> times;
    std::optional<MeshResolution> mesh;
    std::size_t directions = 16;
};

struct RunConfig {
    BodyConfig body{1.0, 1.0, 1.0};
    WaveParams wave = WaveParams::spatial3(1.0, 0.0, Vec3{}, std::vector<double>{1.0});
    Vec3 direction{1.0, 0.0, 0.0};
    Provenance scenario = Provenance::Relative2Body;
    WDomain domain;
    VerifyOptions verify;
    std::optional<FrontOptions> front;
    std::filesystem::path output_dir = "out";
    std::uint64_t seed = 0;
};

RunConfig parse_run_config(const std::string& text);
RunConfig load_run_config(const std::filesystem::path& path);

}  // namespace twave
