#include <cmath>
#include <numbers>

#include "doctest.h"

#include "twave/closed_form.hpp"
#include "twave/nbody_reference.hpp"
#include "twave/residual_lab.hpp"

using namespace twave;

namespace {

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::Config;
}

PhaseState collision_ics(const BodyConfig& body, const Vec3& U, double t0) {
    const double s = std::cbrt(4.5 * body.G * body.total_mass());
    PhaseState st;
    st.t = t0;
    st.positions = {std::pow(t0, 2.0 / 3.0) * s * U};
    st.velocities = {(2.0 / 3.0) * std::pow(t0, -1.0 / 3.0) * s * U};
    return st;
}

double max_deviation(const std::vector<PhaseState>& traj, const BodyConfig& body, const Vec3& U) {
    const double s = std::cbrt(4.5 * body.G * body.total_mass());
    double dev = 0.0;
    for (const auto& st : traj) dev = std::max(dev, norm(st.positions[0] - std::pow(st.t, 2.0 / 3.0) * s * U));
    return dev;
}

}  // namespace

TEST_CASE("two-body accelerations") {
    const BodyConfig body{1.0, 1.0, 1.0};
    const auto a = ncme_rhs(Vec3{}, Vec3{1.0, 0.0, 0.0}, body);
    CHECK(a[0] == Vec3{1.0, 0.0, 0.0});
    CHECK(a[1] == Vec3{-1.0, 0.0, 0.0});
    const auto b = ncme_rhs(Vec3{}, Vec3{2.0, 0.0, 0.0}, body);
    CHECK(b[0] == 0.25 * a[0]);
    CHECK(b[1] == 0.25 * a[1]);
    CHECK(kind_of([&] { ncme_rhs(Vec3{1, 2, 3}, Vec3{1, 2, 3}, body); }) == ErrorKind::CollisionSingularity);
}

TEST_CASE("relative acceleration") {
    const BodyConfig body{1.0, 1.0, 1.0};
    CHECK(relative_rhs({1.0, 0.0, 0.0}, body) == Vec3{-2.0, 0.0, 0.0});
    CHECK(relative_rhs({0.0, 2.0, 0.0}, body) == Vec3{0.0, -0.5, 0.0});
    CHECK(kind_of([&] { relative_rhs({}, body); }) == ErrorKind::CollisionSingularity);
}

TEST_CASE("relative acceleration is the difference of the two-body accelerations") {
    const BodyConfig body{1.3, 0.7, 2.9};
    const Vec3 r1{0.3, -1.0, 2.0}, r2{-0.4, 0.5, 1.1};
    const auto a = ncme_rhs(r1, r2, body);
    const Vec3 rel = relative_rhs(r1 - r2, body);
    CHECK(norm((a[0] - a[1]) - rel) <= 1e-14 * norm(rel));
}

TEST_CASE("RK4 follows the collision orbit") {
    const BodyConfig body{1.0, 1.0, 1.0};
    const Vec3 U{1.0, 0.0, 0.0};
    const auto traj = rk4_integrate(collision_ics(body, U, 1.0), body, 2.0, 1e-3);
    CHECK(traj.size() == 1001);
    CHECK(traj.front().t == 1.0);
    CHECK(traj.back().t == 2.0);
    CHECK(max_deviation(traj, body, U) <= 1e-6);
    for (const auto& st : traj) {
        CHECK(std::abs(relative_energy(st.positions[0], st.velocities[0], body)) <= 1e-8);
        CHECK(norm(relative_angular_momentum(st.positions[0], st.velocities[0])) <= 1e-10);
    }
}

TEST_CASE("RK4 global error is fourth order") {
    const BodyConfig body{1.0, 1.0, 1.0};
    const Vec3 U{0.0, 0.0, 1.0};
    // Large steps so truncation dominates rounding.
    const auto coarse = rk4_integrate(collision_ics(body, U, 1.0), body, 2.0, 0.1);
    const auto fine = rk4_integrate(collision_ics(body, U, 1.0), body, 2.0, 0.05);
    const double s = std::cbrt(9.0);
    const double ec = norm(coarse.back().positions[0] - std::pow(2.0, 2.0 / 3.0) * s * U);
    const double ef = norm(fine.back().positions[0] - std::pow(2.0, 2.0 / 3.0) * s * U);
    CHECK(ec / ef == doctest::Approx(16.0).epsilon(0.1));
}

TEST_CASE("RK4 circular orbit keeps its radius") {
    const BodyConfig body{1.0, 0.6, 0.4};
    const double w = std::sqrt(body.G * body.total_mass());
    PhaseState st;
    st.t = 0.0;
    st.positions = {{1.0, 0.0, 0.0}};
    st.velocities = {{0.0, w, 0.0}};
    const double period = 2.0 * std::numbers::pi / w;
    const auto traj = rk4_integrate(st, body, period, 1e-3);
    for (const auto& s : traj) CHECK(std::abs(norm(s.positions[0]) - 1.0) <= 1e-6);
    CHECK(norm(traj.back().positions[0] - Vec3{1.0, 0.0, 0.0}) <= 1e-6);
}

TEST_CASE("full two-body integration matches the relative integration") {
    const BodyConfig body{1.0, 1.0, 3.0};
    const Vec3 U = Vec3{1.0, 2.0, 2.0} / 3.0;
    const auto sol = ncme_collision_solution(body, U);
    PhaseState st;
    st.t = 1.0;
    const auto x = evaluate(sol, 1.0), v = d1(sol, 1.0);
    st.positions = {x.block3(0), x.block3(1)};
    st.velocities = {v.block3(0), v.block3(1)};
    const auto full = rk4_integrate(st, body, 2.0, 1e-3);
    const auto rel = rk4_integrate(to_relative(st), body, 2.0, 1e-3);
    REQUIRE(full.size() == rel.size());
    double diff = 0.0, dev = 0.0;
    for (std::size_t i = 0; i < full.size(); ++i) {
        diff = std::max(diff, norm(to_relative(full[i]).positions[0] - rel[i].positions[0]));
        const auto exact = evaluate(sol, full[i].t);
        dev = std::max(dev, norm(full[i].positions[1] - exact.block3(1)));
    }
    CHECK(diff <= 1e-8);
    CHECK(dev <= 1e-6);
}

TEST_CASE("last step lands on t_end") {
    const BodyConfig body{1.0, 1.0, 1.0};
    const auto traj = rk4_integrate(collision_ics(body, {1.0, 0.0, 0.0}, 1.0), body, 1.25, 0.1);
    REQUIRE(traj.size() == 4);
    CHECK(traj[2].t == doctest::Approx(1.2));
    CHECK(traj.back().t == 1.25);
}

TEST_CASE("integration toward the collision aborts with the last valid state") {
    const BodyConfig body{1.0, 1.0, 1.0};
    PhaseState st = collision_ics(body, {1.0, 0.0, 0.0}, 1.0);
    st.velocities[0] = -st.velocities[0];  // time-reversed: falls in at t = 2
    try {
        rk4_integrate(st, body, 3.0, 1e-3);
        FAIL("expected collision proximity");
    } catch (const CollisionProximityError& e) {
        CHECK(e.kind() == ErrorKind::CollisionProximity);
        CHECK(norm(e.last_valid().positions[0]) >= kCollisionProximity);
        CHECK(e.last_valid().t < 2.0 + 1e-3);
        CHECK(e.last_valid().t > 1.9);
    }
}

TEST_CASE("integrator input validation") {
    const BodyConfig body{1.0, 1.0, 1.0};
    const PhaseState st = collision_ics(body, {1.0, 0.0, 0.0}, 1.0);
    CHECK_THROWS_AS(rk4_integrate(st, body, 2.0, 0.0), Error);
    CHECK_THROWS_AS(rk4_integrate(st, body, 2.0, -1e-3), Error);
    PhaseState bad = st;
    bad.velocities.clear();
    CHECK_THROWS_AS(rk4_integrate(bad, body, 2.0, 1e-3), Error);
}

TEST_CASE("energy and angular momentum of the closed form vanish") {
    const BodyConfig body{2.0, 0.5, 4.0};
    const auto sol = relative_2body_solution(body, newtonian_time_params(1), Vec3{0.0, 1.0, 0.0});
    for (double t : {0.1, 1.0, 7.0}) {
        const Vec3 x = evaluate(sol, t).block3(0), v = d1(sol, t).block3(0);
        CHECK(std::abs(relative_energy(x, v, body)) <= 1e-12 * body.G * body.total_mass() / norm(x));
        CHECK(norm(relative_angular_momentum(x, v)) == 0.0);
    }
}
