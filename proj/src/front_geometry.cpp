#include "twave/front_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace twave {

namespace {

constexpr double kUnitTol = 1e-12;

void require_space3(const WaveParams& params) {
    if (params.space_dim() != 3) throw Error(ErrorKind::RejectedInput, "front geometry needs a 3-dimensional v");
}

void require_unit_direction(const Vec3& u) {
    if (!is_finite(u) || std::abs(norm(u) - 1.0) > kUnitTol) {
        throw Error(ErrorKind::RejectedInput, "front directions must be unit vectors");
    }
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

FrontSurface sphere_mesh(double mu, double t, const MeshResolution& mesh) {
    if (mesh.rows < 2 || mesh.cols < 1) throw Error(ErrorKind::RejectedInput, "sphere mesh needs rows >= 2");
    FrontSurface s;
    s.chart = {ChartKind::Spherical};
    s.time = t;
    s.mu = mu;
    s.shape = FrontShape::Sphere;
    s.radius = mu * t;
    s.rows = mesh.rows;
    s.cols = mesh.cols;
    s.samples.reserve(mesh.rows * mesh.cols);
    for (std::size_t i = 0; i < mesh.rows; ++i) {
        const double polar = std::numbers::pi * static_cast<double>(i) / static_cast<double>(mesh.rows - 1);
        for (std::size_t k = 0; k < mesh.cols; ++k) {
            const double azimuth = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(mesh.cols);
            s.samples.push_back(s.radius * Vec3{std::sin(polar) * std::cos(azimuth),
                                                std::sin(polar) * std::sin(azimuth), std::cos(polar)});
        }
    }
    return s;
}

FrontSurface cylinder_mesh(double mu, double t, const MeshResolution& mesh) {
    if (mesh.rows < 2 || mesh.cols < 1) throw Error(ErrorKind::RejectedInput, "cylinder mesh needs rows >= 2");
    FrontSurface s;
    s.chart = {ChartKind::Cylindrical};
    s.time = t;
    s.mu = mu;
    s.shape = FrontShape::Cylinder;
    s.radius = mu * t;
    s.rows = mesh.rows;
    s.cols = mesh.cols;
    const double half_height = 2.0 * std::abs(s.radius);
    s.samples.reserve(mesh.rows * mesh.cols);
    for (std::size_t i = 0; i < mesh.rows; ++i) {
        const double z =
            -half_height + 2.0 * half_height * static_cast<double>(i) / static_cast<double>(mesh.rows - 1);
        for (std::size_t k = 0; k < mesh.cols; ++k) {
            const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(mesh.cols);
            s.samples.push_back({s.radius * std::cos(angle), s.radius * std::sin(angle), z});
        }
    }
    return s;
}

}  // namespace

std::array<std::string, 3> CoordinateChart::labels() const {
    switch (kind) {
        case ChartKind::Cartesian: return {"x", "y", "z"};
        case ChartKind::Spherical: return {"rho", "theta", "phi"};
        case ChartKind::Cylindrical: return {"q", "theta", "z"};
    }
    return {"", "", ""};
}

const char* to_string(ChartKind kind) {
    switch (kind) {
        case ChartKind::Cartesian: return "cartesian";
        case ChartKind::Spherical: return "spherical";
        case ChartKind::Cylindrical: return "cylindrical";
    }
    return "unknown";
}

ChartKind chart_from_string(const std::string& s) {
    if (s == "cartesian") return ChartKind::Cartesian;
    if (s == "spherical") return ChartKind::Spherical;
    if (s == "cylindrical") return ChartKind::Cylindrical;
    throw Error(ErrorKind::RejectedInput, "unknown chart '" + s + "'");
}

const char* to_string(FrontShape shape) {
    switch (shape) {
        case FrontShape::TangentPlaneFamily: return "tangent-plane-family";
        case FrontShape::Sphere: return "sphere";
        case FrontShape::Cylinder: return "cylinder";
    }
    return "unknown";
}

std::array<double, 4> gradient_vector(const PowerLawSolution& sol, const WaveParams& params, double w,
                                      std::size_t component, std::size_t block) {
    require_space3(params);
    if (component > 2) throw Error(ErrorKind::RejectedInput, "component index must be 0, 1 or 2");
    if (w == 0.0) throw Error(ErrorKind::SingularFront, "gradient is unbounded on the front w = 0");
    const double s = sol.coefficient(block)[static_cast<int>(component)];
    const double a = std::cbrt(w * w);
    const double factor = (2.0 / 3.0) * w / (a * a) * s;
    const auto v = params.v();
    return {factor * v[0], factor * v[1], factor * v[2], -factor * params.mu()};
}

double gradient_magnitude(const PowerLawSolution& sol, const WaveParams& params, double w, std::size_t component,
                          std::size_t block) {
    const auto g = gradient_vector(sol, params, w, component, block);
    return std::sqrt(g[0] * g[0] + g[1] * g[1] + g[2] * g[2] + g[3] * g[3]);
}

double chart_wave_argument(const CoordinateChart& chart, const WaveParams& params, const Vec3& coords, double t) {
    require_space3(params);
    if (chart.kind != ChartKind::Cartesian && coords.x < 0.0) {
        throw Error(ErrorKind::RejectedInput, std::string(to_string(chart.kind)) + " radial coordinate must be >= 0");
    }
    return compute_wave_argument(params, coords, t);
}

Plane front_locus_time(const WaveParams& params, double t) {
    require_space3(params);
    const Vec3 v = params.v3();
    const double vn = norm(v);
    if (vn == 0.0) {
        std::ostringstream os;
        os << "v = 0: no spatial front, the singularity is the instant t = " << params.c() / params.mu();
        throw Error(ErrorKind::NoSpatialFront, os.str());
    }
    return {v / vn, (params.mu() * t - params.c()) / vn};
}

FrontSurface tangent_plane_family(double mu, double t, const std::vector<Vec3>& directions) {
    if (!(t >= 0.0)) throw Error(ErrorKind::RejectedInput, "front time must be >= 0");
    if (mu == 0.0 || !std::isfinite(mu)) throw Error(ErrorKind::RejectedInput, "mu must be nonzero");
    FrontSurface s;
    s.chart = {ChartKind::Cartesian};
    s.time = t;
    s.mu = mu;
    s.shape = FrontShape::TangentPlaneFamily;
    s.radius = mu * t;
    s.rows = directions.size();
    s.cols = 1;
    for (const Vec3& u : directions) {
        require_unit_direction(u);
        const Vec3 touch = s.radius * u;
        if (std::abs(dot(u, touch) - s.radius) > 1e-12 * std::max(1.0, std::abs(s.radius))) {
            throw Error(ErrorKind::RejectedInput, "tangency check failed for a front direction");
        }
        s.planes.push_back({{u, s.radius}, touch});
        s.samples.push_back(touch);
    }
    return s;
}

FrontSurface front_surface_chart(const CoordinateChart& chart, double mu, double t, const Vec3& v, double c,
                                 const std::optional<MeshResolution>& mesh, const std::vector<Vec3>& directions) {
    if (chart.kind == ChartKind::Cartesian) {
        if (directions.empty()) {
            throw Error(ErrorKind::RejectedInput, "cartesian front needs at least one direction");
        }
        return tangent_plane_family(mu, t, directions);
    }
    if (!(v == Vec3{1.0, 0.0, 0.0}) || c != 0.0) {
        throw Error(ErrorKind::NotImplemented, std::string(to_string(chart.kind)) +
                                                   " front is only constructed for v = (1, 0, 0) and c = 0");
    }
    if (!(t >= 0.0)) throw Error(ErrorKind::RejectedInput, "front time must be >= 0");
    if (mu == 0.0 || !std::isfinite(mu)) throw Error(ErrorKind::RejectedInput, "mu must be nonzero");
    if (chart.kind == ChartKind::Spherical) return sphere_mesh(mu, t, mesh.value_or(MeshResolution{64, 128}));
    return cylinder_mesh(mu, t, mesh.value_or(MeshResolution{64, 64}));
}

double fit_loglog_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw Error(ErrorKind::RejectedInput, "slope fit needs at least two matching samples");
    }
    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw Error(ErrorKind::RejectedInput, "log-log fit needs positive samples");
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw Error(ErrorKind::RejectedInput, "slope fit needs distinct abscissae");
    return (n * sxy - sx * sy) / denom;
}

double gradient_blowup_exponent(const PowerLawSolution& sol, const WaveParams& params,
                                std::span<const double> w_samples, std::size_t component, std::size_t block) {
    std::vector<double> xs, ys;
    for (double w : w_samples) {
        xs.push_back(std::abs(w));
        ys.push_back(gradient_magnitude(sol, params, w, component, block));
    }
    return fit_loglog_slope(xs, ys);
}

std::vector<std::size_t> detect_front_samples(std::span<const double> magnitudes, double threshold) {
    std::vector<std::size_t> hits;
    for (std::size_t i = 0; i < magnitudes.size(); ++i) {
        if (!(magnitudes[i] <= threshold)) hits.push_back(i);  // NaN/inf count as unbounded
    }
    return hits;
}

double default_front_threshold(const PowerLawSolution& sol, const WaveParams& params, std::size_t component,
                               std::size_t block) {
    return 1e6 * gradient_magnitude(sol, params, 1.0, component, block);
}

FrontEquivalenceReport two_body_front_equivalence(const PowerLawSolution& pair, const WaveParams& params, double t) {
    if (pair.q() != 2) throw Error(ErrorKind::RejectedInput, "front equivalence needs a two-block solution");
    require_space3(params);

    // Largest component of the shared direction; both blocks are parallel.
    const Vec3 s2 = pair.coefficient(1);
    std::size_t comp = 0;
    for (std::size_t j = 1; j < 3; ++j) {
        if (std::abs(s2[static_cast<int>(j)]) > std::abs(s2[static_cast<int>(comp)])) comp = j;
    }

    const std::vector<double> ws = {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
    FrontEquivalenceReport rep;
    rep.slope_block1 = gradient_blowup_exponent(pair, params, ws, comp, 0);
    rep.slope_block2 = gradient_blowup_exponent(pair, params, ws, comp, 1);

    double rmin = std::numeric_limits<double>::infinity();
    double rmax = -rmin;
    for (double w : {1e-6, 1e-3, 0.5, 1.0, 2.0, 10.0, -1.0}) {
        const double r = gradient_magnitude(pair, params, w, comp, 0) / gradient_magnitude(pair, params, w, comp, 1);
        rmin = std::min(rmin, r);
        rmax = std::max(rmax, r);
    }
    rep.magnitude_ratio = 0.5 * (rmin + rmax);
    rep.ratio_spread = (rmax - rmin) / rep.magnitude_ratio;

    const double third = -1.0 / 3.0;
    rep.same_locus = std::abs(rep.slope_block1 - third) <= 0.01 && std::abs(rep.slope_block2 - third) <= 0.01 &&
                     rep.ratio_spread <= 1e-12;

    std::ostringstream os;
    os.precision(17);
    if (params.v_norm_sq() > 0.0) {
        rep.front = front_locus_time(params, t);
        os << "both blocks blow up on the plane n . r = " << rep.front->offset << " with n = (" << rep.front->normal.x
           << ", " << rep.front->normal.y << ", " << rep.front->normal.z << ") at t = " << t;
    } else {
        os << "v = 0: both blocks blow up at the instant t = " << params.c() / params.mu();
    }
    rep.description = os.str();
    return rep;
}

std::vector<Vec3> random_unit_directions(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Vec3> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double z = 2.0 * uniform01(rng) - 1.0;
        const double az = 2.0 * std::numbers::pi * uniform01(rng);
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        const Vec3 u{r * std::cos(az), r * std::sin(az), z};
        out.push_back(u / norm(u));
    }
    return out;
}

}  // namespace twave
