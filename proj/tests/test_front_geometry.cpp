#include <cmath>

#include "doctest.h"

#include "twave/closed_form.hpp"
#include "twave/front_geometry.hpp"

using namespace twave;

namespace {

const Vec3 kX{1.0, 0.0, 0.0};

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::Config;
}

WaveParams params(double mu, const Vec3& v, double c = 0.0) {
    return WaveParams::spatial3(mu, c, v, std::vector<double>{0.25});
}

PowerLawSolution unit_solution() { return PowerLawSolution(Provenance::Relative2Body, {{1.0, {1.0, 0.0, 0.0}}}); }

}  // namespace

TEST_CASE("gradient magnitude at w = 1") {
    const auto p = params(1.0, kX);
    const auto g = gradient_vector(unit_solution(), p, 1.0, 0);
    CHECK(g[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(g[1] == 0.0);
    CHECK(g[3] == doctest::Approx(-2.0 / 3.0).epsilon(1e-15));
    CHECK(gradient_magnitude(unit_solution(), p, 1.0, 0) == doctest::Approx(2.0 / 3.0 * std::sqrt(2.0)).epsilon(1e-15));
    CHECK(gradient_magnitude(unit_solution(), p, 1.0, 0) == doctest::Approx(0.942809).epsilon(1e-6));
    // Components with s_j = 0 have no front.
    CHECK(gradient_magnitude(unit_solution(), p, 1.0, 1) == 0.0);
}

TEST_CASE("gradient magnitude follows |w|^(-1/3)") {
    const auto p = params(1.0, kX);
    const double m1 = gradient_magnitude(unit_solution(), p, 1.0, 0);
    const double m8 = gradient_magnitude(unit_solution(), p, 8.0, 0);
    CHECK(m8 / m1 == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(gradient_magnitude(unit_solution(), p, -8.0, 0) == doctest::Approx(m8).epsilon(1e-15));

    std::vector<double> ws;
    for (int k = 1; k <= 6; ++k) ws.push_back(std::pow(10.0, -k));
    CHECK(std::abs(gradient_blowup_exponent(unit_solution(), p, ws, 0) + 1.0 / 3.0) <= 0.01);
}

TEST_CASE("gradient is singular on the front") {
    CHECK(kind_of([] { gradient_vector(unit_solution(), params(1.0, kX), 0.0, 0); }) == ErrorKind::SingularFront);
}

TEST_CASE("log-log slope fit") {
    const std::vector<double> x{1.0, 2.0, 4.0, 8.0};
    std::vector<double> y;
    for (double xi : x) y.push_back(3.0 * std::pow(xi, -0.75));
    CHECK(fit_loglog_slope(x, y) == doctest::Approx(-0.75).epsilon(1e-12));
    CHECK_THROWS_AS(fit_loglog_slope(std::vector<double>{1.0}, std::vector<double>{1.0}), Error);
}

TEST_CASE("front plane") {
    const auto plane = front_locus_time(params(2.0, kX), 3.0);
    CHECK(plane.normal == kX);
    CHECK(plane.offset == 6.0);
    CHECK(plane.signed_distance({6.0, 0.0, 0.0}) == 0.0);

    const Vec3 u = Vec3{2.0, -1.0, 2.0} / 3.0;
    const auto pu = front_locus_time(params(1.5, u), 2.0);
    CHECK(std::abs(pu.offset) == doctest::Approx(3.0).epsilon(1e-15));

    CHECK(kind_of([] { front_locus_time(params(1.0, {}), 1.0); }) == ErrorKind::NoSpatialFront);
}

TEST_CASE("points on the front plane have w = 0") {
    const Vec3 v{0.3, -1.2, 0.5};
    const auto p = params(1.7, v, 0.4);
    const double t = 2.3;
    const auto plane = front_locus_time(p, t);
    const auto dirs = random_unit_directions(50, 9);
    for (const Vec3& d : dirs) {
        // Project an arbitrary point onto the plane.
        const Vec3 x = 3.0 * d - plane.signed_distance(3.0 * d) * plane.normal;
        CHECK(std::abs(compute_wave_argument(p, x, t)) <= 1e-12);
    }
}

TEST_CASE("tangent planes") {
    const auto fam = tangent_plane_family(1.0, 5.0, {{0.0, 0.0, 1.0}});
    REQUIRE(fam.planes.size() == 1);
    CHECK(fam.planes[0].plane.normal == Vec3{0.0, 0.0, 1.0});
    CHECK(fam.planes[0].plane.offset == 5.0);
    CHECK(fam.planes[0].tangency_point == Vec3{0.0, 0.0, 5.0});
    CHECK(fam.shape == FrontShape::TangentPlaneFamily);

    const auto zero = tangent_plane_family(1.0, 0.0, random_unit_directions(10, 1));
    for (const auto& tp : zero.planes) {
        CHECK(tp.plane.offset == 0.0);
        CHECK(tp.plane.signed_distance({}) == 0.0);
    }

    CHECK(kind_of([] { tangent_plane_family(1.0, 1.0, {{1.0, 1.0, 0.0}}); }) == ErrorKind::RejectedInput);
}

TEST_CASE("tangent plane touches the sphere once, at mu t U") {
    const double mu = 1.3, t = 2.0, R = mu * t;
    for (const auto& tp : tangent_plane_family(mu, t, random_unit_directions(200, 5)).planes) {
        // Closest point of the plane to the origin.
        const Vec3 closest = tp.plane.offset * tp.plane.normal;
        CHECK(norm(closest) == doctest::Approx(R).epsilon(1e-14));
        CHECK(norm(closest - tp.tangency_point) <= 1e-14 * R);
        // Any other plane point lies outside the sphere.
        Vec3 e = cross(tp.plane.normal, kX);
        if (norm(e) < 0.1) e = cross(tp.plane.normal, {0.0, 1.0, 0.0});
        e = e / norm(e);
        CHECK(norm(closest + 0.1 * e) > R);
    }
}

TEST_CASE("spherical front") {
    const auto s = front_surface_chart({ChartKind::Spherical}, 2.0, 1.0, kX, 0.0);
    CHECK(s.shape == FrontShape::Sphere);
    CHECK(s.rows == 64);
    CHECK(s.cols == 128);
    CHECK(s.samples.size() == 64 * 128);
    CHECK(s.radius == 2.0);
    for (const auto& x : s.samples) CHECK(std::abs(dot(x, x) - 4.0) <= 1e-12 * 4.0);
}

TEST_CASE("cylindrical front") {
    const auto s = front_surface_chart({ChartKind::Cylindrical}, 1.0, 3.0, kX, 0.0);
    CHECK(s.shape == FrontShape::Cylinder);
    CHECK(s.samples.size() == 64 * 64);
    CHECK(s.radius == 3.0);
    double zmin = 1e300, zmax = -1e300;
    for (const auto& x : s.samples) {
        CHECK(std::abs(x.x * x.x + x.y * x.y - 9.0) <= 1e-12 * 9.0);
        zmin = std::min(zmin, x.z);
        zmax = std::max(zmax, x.z);
    }
    CHECK(zmin == doctest::Approx(-6.0));
    CHECK(zmax == doctest::Approx(6.0));

    const auto c2 = front_surface_chart({ChartKind::Cylindrical}, 2.0, 1.0, kX, 0.0, MeshResolution{4, 6});
    CHECK(c2.radius == 2.0);
    CHECK(c2.samples.size() == 24);
}

TEST_CASE("curved charts need v = (1, 0, 0) and c = 0") {
    CHECK(kind_of([] { front_surface_chart({ChartKind::Spherical}, 1.0, 1.0, {0.0, 1.0, 0.0}, 0.0); }) ==
          ErrorKind::NotImplemented);
    CHECK(kind_of([] { front_surface_chart({ChartKind::Cylindrical}, 1.0, 1.0, kX, 0.5); }) ==
          ErrorKind::NotImplemented);
}

TEST_CASE("cartesian chart is the tangent plane family") {
    const auto dirs = random_unit_directions(16, 42);
    const auto s = front_surface_chart({ChartKind::Cartesian}, 1.0, 2.0, kX, 0.0, std::nullopt, dirs);
    CHECK(s.shape == FrontShape::TangentPlaneFamily);
    CHECK(s.planes.size() == 16);
}

TEST_CASE("radius grows linearly in t") {
    for (ChartKind k : {ChartKind::Spherical, ChartKind::Cylindrical, ChartKind::Cartesian}) {
        const auto dirs = random_unit_directions(3, 0);
        auto r = [&](double t) {
            return front_surface_chart({k}, 1.5, t, kX, 0.0, MeshResolution{2, 3}, dirs).radius;
        };
        CHECK(r(2.0) - r(1.0) == doctest::Approx(1.5).epsilon(1e-15));
        CHECK(r(3.0) - r(1.0) == 1.5 * 2.0);
    }
}

TEST_CASE("chart wave argument is a relabeling") {
    const auto p = params(1.0, kX);
    CHECK(chart_wave_argument({ChartKind::Spherical}, p, {2.0, 0.3, 1.1}, 0.5) == 1.5);
    CHECK(chart_wave_argument({ChartKind::Cylindrical}, p, {2.0, 0.3, 1.1}, 0.5) == 1.5);
    CHECK(kind_of([&] { chart_wave_argument({ChartKind::Spherical}, p, {-1.0, 0.0, 0.0}, 0.5); }) ==
          ErrorKind::RejectedInput);
}

TEST_CASE("chart labels and strings") {
    CHECK(CoordinateChart{ChartKind::Spherical}.labels()[0] == "rho");
    CHECK(CoordinateChart{ChartKind::Cylindrical}.labels()[0] == "q");
    CHECK(CoordinateChart{ChartKind::Cartesian}.labels()[2] == "z");
    for (ChartKind k : {ChartKind::Cartesian, ChartKind::Spherical, ChartKind::Cylindrical}) {
        CHECK(chart_from_string(to_string(k)) == k);
    }
    CHECK_THROWS_AS(chart_from_string("polar"), Error);
    CHECK(std::string(to_string(FrontShape::TangentPlaneFamily)) == "tangent-plane-family");
}

TEST_CASE("front detector") {
    const auto p = params(1.0, kX);
    const double thr = default_front_threshold(unit_solution(), p, 0);
    CHECK(thr == doctest::Approx(1e6 * 2.0 / 3.0 * std::sqrt(2.0)));
    std::vector<double> mags;
    for (double w : {1.0, 1e-3, 1e-17, 1e-21}) mags.push_back(gradient_magnitude(unit_solution(), p, w, 0));
    mags.push_back(std::numeric_limits<double>::infinity());
    mags.push_back(std::numeric_limits<double>::quiet_NaN());
    CHECK(detect_front_samples(mags, thr) == std::vector<std::size_t>{3, 4, 5});
}

TEST_CASE("pair blocks share one front") {
    const BodyConfig body{1.0, 1.0, 3.0};
    const Vec3 v = Vec3{1.0, 1.0, 1.0} / std::sqrt(3.0);
    const auto p = WaveParams::spatial3(1.5, 0.0, v, std::vector<double>{0.8, 0.8});
    const auto pair = two_body_pair_solution(body, p, kX);
    const auto rep = two_body_front_equivalence(pair, p, 1.0);
    CHECK(rep.same_locus);
    CHECK(std::abs(rep.slope_block1 + 1.0 / 3.0) <= 0.01);
    CHECK(std::abs(rep.slope_block2 + 1.0 / 3.0) <= 0.01);
    // theta1 / theta2 = m2 / m1 when lambda1 = lambda2
    CHECK(rep.magnitude_ratio == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(rep.ratio_spread <= 1e-12);
    REQUIRE(rep.front.has_value());
    CHECK(std::abs(rep.front->offset) == doctest::Approx(1.5).epsilon(1e-15));
}

TEST_CASE("pair front without spatial dependence") {
    const BodyConfig body{1.0, 1.0, 2.0};
    const auto p = WaveParams::spatial3(1.0, 0.0, {}, std::vector<double>{1.0, 1.0});
    const auto rep = two_body_front_equivalence(two_body_pair_solution(body, p, kX), p);
    CHECK(rep.same_locus);
    CHECK_FALSE(rep.front.has_value());
}

TEST_CASE("random directions are unit and reproducible") {
    const auto a = random_unit_directions(100, 7);
    const auto b = random_unit_directions(100, 7);
    const auto c = random_unit_directions(100, 8);
    CHECK(a == b);
    CHECK(a != c);
    for (const auto& d : a) CHECK(std::abs(norm(d) - 1.0) <= 1e-15);
}
