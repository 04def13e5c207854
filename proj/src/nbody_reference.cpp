#include "twave/nbody_reference.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace twave {

namespace {

using Derivative = std::pair<std::vector<Vec3>, std::vector<Vec3>>;

Derivative derivative(const std::vector<Vec3>& pos, const std::vector<Vec3>& vel, const BodyConfig& body) {
    if (pos.size() == 1) return {vel, {relative_rhs(pos[0], body)}};
    const auto a = ncme_rhs(pos[0], pos[1], body);
    return {vel, {a[0], a[1]}};
}

std::vector<Vec3> axpy(const std::vector<Vec3>& x, double s, const std::vector<Vec3>& d) {
    std::vector<Vec3> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + s * d[i];
    return out;
}

Vec3 relative_position(const std::vector<Vec3>& pos) { return pos.size() == 1 ? pos[0] : pos[0] - pos[1]; }

double separation(const PhaseState& s) { return norm(relative_position(s.positions)); }

// Closest approach of the chord a -> b to the origin. A fixed step can carry a
// head-on orbit straight through the singularity with both ends far from it.
double chord_distance(const Vec3& a, const Vec3& b) {
    const Vec3 d = b - a;
    const double dd = dot(d, d);
    if (dd == 0.0) return norm(a);
    const double s = std::clamp(-dot(a, d) / dd, 0.0, 1.0);
    return norm(a + s * d);
}

void validate(const PhaseState& s) {
    if ((s.q() != 1 && s.q() != 2) || s.velocities.size() != s.q()) {
        throw Error(ErrorKind::RejectedInput, "phase state must hold 1 (relative) or 2 bodies");
    }
    for (std::size_t i = 0; i < s.q(); ++i) {
        if (!is_finite(s.positions[i]) || !is_finite(s.velocities[i])) {
            throw Error(ErrorKind::RejectedInput, "phase state has non-finite components");
        }
    }
    if (!std::isfinite(s.t)) throw Error(ErrorKind::RejectedInput, "phase state time is not finite");
}

// min_sep receives the smallest separation seen at any stage.
PhaseState rk4_step(const PhaseState& s, const BodyConfig& body, double h, double& min_sep) {
    const auto& x = s.positions;
    const auto& u = s.velocities;
    auto stage = [&](const std::vector<Vec3>& xs, const std::vector<Vec3>& us) {
        min_sep = std::min(min_sep, norm(relative_position(xs)));
        return derivative(xs, us, body);
    };
    const auto k1 = stage(x, u);
    const auto k2 = stage(axpy(x, h / 2, k1.first), axpy(u, h / 2, k1.second));
    const auto k3 = stage(axpy(x, h / 2, k2.first), axpy(u, h / 2, k2.second));
    const auto k4 = stage(axpy(x, h, k3.first), axpy(u, h, k3.second));
    PhaseState next{x, u, s.t + h};
    for (std::size_t i = 0; i < x.size(); ++i) {
        next.positions[i] += (h / 6.0) * (k1.first[i] + 2.0 * k2.first[i] + 2.0 * k3.first[i] + k4.first[i]);
        next.velocities[i] +=
            (h / 6.0) * (k1.second[i] + 2.0 * k2.second[i] + 2.0 * k3.second[i] + k4.second[i]);
    }
    return next;
}

}  // namespace

std::array<Vec3, 2> ncme_rhs(const Vec3& r1, const Vec3& r2, const BodyConfig& body) {
    const Vec3 d = r2 - r1;
    const double r = norm(d);
    if (r == 0.0) throw Error(ErrorKind::CollisionSingularity, "bodies coincide");
    const double inv_r3 = 1.0 / (r * r * r);
    return {(body.G * body.m2 * inv_r3) * d, (-body.G * body.m1 * inv_r3) * d};
}

std::array<Vec3, 2> ncme_rhs(const PhaseState& state, const BodyConfig& body) {
    if (state.q() != 2) throw Error(ErrorKind::RejectedInput, "ncme_rhs needs a two-body state");
    return ncme_rhs(state.positions[0], state.positions[1], body);
}

Vec3 relative_rhs(const Vec3& delta, const BodyConfig& body) {
    const double r = norm(delta);
    if (r == 0.0) throw Error(ErrorKind::CollisionSingularity, "relative separation is zero");
    return (-body.G * body.total_mass() / (r * r * r)) * delta;
}

std::vector<PhaseState> rk4_integrate(const PhaseState& initial, const BodyConfig& body, double t_end,
                                      double h) {
    validate(initial);
    if (!(h > 0.0) || !std::isfinite(h)) throw Error(ErrorKind::RejectedInput, "step h must be positive");
    if (!(t_end >= initial.t)) throw Error(ErrorKind::RejectedInput, "t_end must not precede the initial time");
    if (separation(initial) < kCollisionProximity) {
        throw CollisionProximityError("initial separation below collision threshold", initial);
    }

    const double span = t_end - initial.t;
    const auto steps = static_cast<std::size_t>(std::ceil(span / h - 1e-9));
    std::vector<PhaseState> traj;
    traj.reserve(steps + 1);
    traj.push_back(initial);
    for (std::size_t k = 1; k <= steps; ++k) {
        const PhaseState& prev = traj.back();
        const double t_next = k == steps ? t_end : initial.t + static_cast<double>(k) * h;
        double min_sep = separation(prev);
        PhaseState next;
        try {
            next = rk4_step(prev, body, t_next - prev.t, min_sep);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::CollisionSingularity) throw;
            min_sep = 0.0;
        }
        next.t = t_next;
        if (min_sep >= kCollisionProximity) {
            min_sep = std::min(min_sep, chord_distance(relative_position(prev.positions),
                                                       relative_position(next.positions)));
        }
        if (min_sep < kCollisionProximity || !is_finite(next.positions[0])) {
            throw CollisionProximityError("separation fell below " + std::to_string(kCollisionProximity) +
                                              " at t = " + std::to_string(t_next),
                                          prev);
        }
        traj.push_back(std::move(next));
    }
    return traj;
}

double relative_energy(const Vec3& delta, const Vec3& delta_dot, const BodyConfig& body) {
    return 0.5 * dot(delta_dot, delta_dot) - body.G * body.total_mass() / norm(delta);
}

Vec3 relative_angular_momentum(const Vec3& delta, const Vec3& delta_dot) { return cross(delta, delta_dot); }

PhaseState to_relative(const PhaseState& two_body) {
    if (two_body.q() != 2) throw Error(ErrorKind::RejectedInput, "to_relative needs a two-body state");
    return {{two_body.positions[0] - two_body.positions[1]},
            {two_body.velocities[0] - two_body.velocities[1]},
            two_body.t};
}

}  // namespace twave
