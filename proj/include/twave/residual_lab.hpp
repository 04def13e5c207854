#pragma once

// Residual checks for traveling-wave solutions: analytic ODE residuals of the
// reduced system in w, and central-difference residuals of the companion
// wave equation and of the linear wave equation on an (r, t) lattice.

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "twave/closed_form.hpp"
#include "twave/core_model.hpp"

namespace twave {

enum class EquationId { CompanionOde, CompanionPde, LinearWave, NcmeOde };

const char* to_string(EquationId id);

struct ResidualLevel {
    double h = 0.0;
    double max_abs = 0.0;
    double max_rel = 0.0;
    /// Estimated rounding-error level of the stencil at this h.
    double roundoff_floor = 0.0;
};

struct ResidualReport {
    EquationId equation_id = EquationId::CompanionOde;
    std::string grid;
    std::size_t sample_count = 0;
    /// Maxima over the grid (finest spacing for lattice runs).
    double max_abs_residual = 0.0;
    double max_rel_residual = 0.0;
    /// Per-block maxima of the relative residual (ODE runs).
    std::vector<double> block_max_rel;
    /// One entry per spacing, in the order given (lattice runs).
    std::vector<ResidualLevel> levels;
    /// log(res_1 / res_2) / log(h_1 / h_2) over the last two spacings; absent
    /// with fewer than two spacings or when the residual is at rounding level.
    std::optional<double> estimated_order;
};

/// True when two or more spacings were run and the finest residual is within
/// rounding noise of the stencil, so no convergence order can be measured.
bool residual_at_roundoff(const ResidualReport& rep);

/// Psi(r, t) sampled on the lattice.
using Field = std::function<StackedVector(std::span<const double> r_tilde, double t)>;
/// Right-hand side f(Psi) of the companion equation.
using ForceField = std::function<StackedVector(const StackedVector& psi)>;

/// Axis-aligned box in (r, t) sampled with points_per_axis points along each
/// of the space_dim + 1 axes. The stencil of spacing h is centered on every
/// sample point.
struct Lattice {
    std::vector<double> r_lo;
    std::vector<double> r_hi;
    double t_lo = 0.0;
    double t_hi = 0.0;
    std::size_t points_per_axis = 3;
    /// Reject boxes that come within 10 h (|v| + |mu|) of w = 0.
    bool guard_singular_hyperplane = true;
    unsigned threads = 1;

    std::size_t point_count() const;
};

std::vector<double> uniform_grid(double a, double b, std::size_t n);

/// The wave parameters under which the companion system is NCME itself:
/// v = 0, mu = -1, c = 0, so w = t.
WaveParams newtonian_time_params(std::size_t q);

/// f(Psi) for a solution kind: the relative inverse-square force for one
/// block, the mutual two-body forces for two.
ForceField gravity_force(Provenance provenance, const BodyConfig& body);

/// Psi(r, t) = sol(w(r, t)).
Field traveling_field(const PowerLawSolution& sol, const WaveParams& params);

/// Per block: (mu^2 - lambda_j^2 |v|^2) Psi_j'' - f_j(Psi), using the exact
/// second derivative of the power law.
ResidualReport ode_residual(const PowerLawSolution& sol, const BodyConfig& body, const WaveParams& params,
                            std::span<const double> w_grid);

/// Psi_tt - lambda^2 Laplacian(Psi) - f(Psi) by second-order central
/// differences, once per spacing.
ResidualReport companion_pde_residual(const Field& field, const WaveParams& params, const Lattice& lattice,
                                      std::span<const double> spacings, const ForceField& force);

ResidualReport companion_pde_residual(const PowerLawSolution& sol, const BodyConfig& body,
                                      const WaveParams& params, const Lattice& lattice,
                                      std::span<const double> spacings);

/// |v|^2 Psi_tt - mu^2 Laplacian(Psi) by second-order central differences.
/// Throws Inapplicable when v = 0.
ResidualReport linear_wave_residual(const Field& field, const WaveParams& params, const Lattice& lattice,
                                    std::span<const double> spacings);

}  // namespace twave
