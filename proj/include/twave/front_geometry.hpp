#pragma once

// Wave fronts: the locus w = 0 where the space-time gradient of a power-law
// traveling wave blows up, in Cartesian, spherical and cylindrical charts.
//
// The spherical and cylindrical charts are relabelings of the coordinates fed
// to w: (x, y, z) -> (rho, theta, phi) or (q, theta, z), with no metric
// factors. With v = (1, 0, 0) and c = 0 the front is rho = mu t (a sphere) or
// q = mu t (a z-axis cylinder).

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "twave/closed_form.hpp"
#include "twave/core_model.hpp"

namespace twave {

enum class ChartKind { Cartesian, Spherical, Cylindrical };

struct CoordinateChart {
    ChartKind kind = ChartKind::Cartesian;

    /// Names of the three abstract coordinates in this chart.
    std::array<std::string, 3> labels() const;
};

const char* to_string(ChartKind kind);
ChartKind chart_from_string(const std::string& s);

/// Hessian normal form {x : normal . x = offset}, |normal| = 1.
struct Plane {
    Vec3 normal;
    double offset = 0.0;

    double signed_distance(const Vec3& x) const { return dot(normal, x) - offset; }
};

struct TangentPlane {
    Plane plane;
    Vec3 tangency_point;
};

enum class FrontShape { TangentPlaneFamily, Sphere, Cylinder };

const char* to_string(FrontShape shape);

struct MeshResolution {
    std::size_t rows = 64;
    std::size_t cols = 128;
};

struct FrontSurface {
    CoordinateChart chart;
    double time = 0.0;
    double mu = 0.0;
    FrontShape shape = FrontShape::Sphere;
    /// mu * t. Planes of the family sit at this distance from the origin.
    double radius = 0.0;
    /// Tangent-plane family only.
    std::vector<TangentPlane> planes;
    /// Mesh vertices in Psi-space, row-major; tangency points for the family.
    std::vector<Vec3> samples;
    std::size_t rows = 0;
    std::size_t cols = 0;
};

/// (d/dx, d/dy, d/dz, d/dt) of component `component` (0..2) of block `block`:
/// (2/3) sign(w) |w|^(-1/3) (v1, v2, v3, -mu) s_j.
std::array<double, 4> gradient_vector(const PowerLawSolution& sol, const WaveParams& params, double w,
                                      std::size_t component, std::size_t block = 0);

double gradient_magnitude(const PowerLawSolution& sol, const WaveParams& params, double w,
                          std::size_t component, std::size_t block = 0);

/// w evaluated at chart coordinates; radial coordinates must be >= 0.
double chart_wave_argument(const CoordinateChart& chart, const WaveParams& params, const Vec3& coords, double t);

/// The plane v . r = mu t - c.
Plane front_locus_time(const WaveParams& params, double t);

FrontSurface tangent_plane_family(double mu, double t, const std::vector<Vec3>& directions);

/// Spherical and cylindrical charts require v = (1, 0, 0) and c = 0.
/// Cartesian delegates to tangent_plane_family over `directions`.
/// Default meshes: 64 x 128 latitude-longitude for spheres, 64 heights x 64
/// angles for cylinders with z in [-2 mu t, 2 mu t].
FrontSurface front_surface_chart(const CoordinateChart& chart, double mu, double t, const Vec3& v, double c,
                                 const std::optional<MeshResolution>& mesh = std::nullopt,
                                 const std::vector<Vec3>& directions = {});

/// Least-squares slope of log(y) against log(x).
double fit_loglog_slope(std::span<const double> x, std::span<const double> y);

/// Slope of log |gradient| against log |w| over the sample points.
double gradient_blowup_exponent(const PowerLawSolution& sol, const WaveParams& params,
                                std::span<const double> w_samples, std::size_t component, std::size_t block = 0);

/// Indices where a sampled gradient magnitude exceeds the threshold. The default
/// threshold is 1e6 times the magnitude at |w| = 1.
std::vector<std::size_t> detect_front_samples(std::span<const double> magnitudes, double threshold);
double default_front_threshold(const PowerLawSolution& sol, const WaveParams& params, std::size_t component,
                               std::size_t block = 0);

struct FrontEquivalenceReport {
    bool same_locus = false;
    double slope_block1 = 0.0;
    double slope_block2 = 0.0;
    /// |grad Psi_1| / |grad Psi_2|, constant in w: |theta1 / theta2|.
    double magnitude_ratio = 0.0;
    double ratio_spread = 0.0;
    /// Absent when v = 0.
    std::optional<Plane> front;
    std::string description;
};

/// Both blocks of a two-body pair blow up on the same hyperplane w = 0.
FrontEquivalenceReport two_body_front_equivalence(const PowerLawSolution& pair, const WaveParams& params,
                                                  double t = 1.0);

/// n unit vectors drawn from mt19937_64; the bit-to-double mapping is fixed so
/// the output is identical on every platform.
std::vector<Vec3> random_unit_directions(std::size_t n, std::uint64_t seed);

}  // namespace twave
