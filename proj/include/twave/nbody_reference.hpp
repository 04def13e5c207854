#pragma once

// Newtonian reference: two-body and relative right-hand sides and a
// fixed-step classical RK4 used to cross-check the closed-form orbits.

#include <array>
#include <vector>

#include "twave/core_model.hpp"

namespace twave {

/// q = 2: full two-body state (r1, r2). q = 1: relative state Delta = r1 - r2.
struct PhaseState {
    std::vector<Vec3> positions;
    std::vector<Vec3> velocities;
    double t = 0.0;

    std::size_t q() const noexcept { return positions.size(); }
};

/// Abort threshold on |r1 - r2| during integration.
inline constexpr double kCollisionProximity = 1e-8;

std::array<Vec3, 2> ncme_rhs(const Vec3& r1, const Vec3& r2, const BodyConfig& body);
std::array<Vec3, 2> ncme_rhs(const PhaseState& state, const BodyConfig& body);

/// -G (m1 + m2) Delta / |Delta|^3.
Vec3 relative_rhs(const Vec3& delta, const BodyConfig& body);

/// Thrown when the separation drops below kCollisionProximity; carries the
/// last state that was still above it.
class CollisionProximityError : public Error {
public:
    CollisionProximityError(const std::string& what, PhaseState last_valid)
        : Error(ErrorKind::CollisionProximity, what), last_valid_(std::move(last_valid)) {}

    const PhaseState& last_valid() const noexcept { return last_valid_; }

private:
    PhaseState last_valid_;
};

/// Classical RK4 with step h from initial.t to t_end. The returned
/// trajectory holds the initial state and every step; the final step is
/// shortened to land exactly on t_end. Proximity is checked at every stage
/// and along the chord between consecutive states.
std::vector<PhaseState> rk4_integrate(const PhaseState& initial, const BodyConfig& body, double t_end,
                                      double h);

/// Specific orbital energy 0.5 |Delta'|^2 - G (m1 + m2) / |Delta|.
double relative_energy(const Vec3& delta, const Vec3& delta_dot, const BodyConfig& body);
Vec3 relative_angular_momentum(const Vec3& delta, const Vec3& delta_dot);

/// Relative view (Delta, Delta') of a two-body state.
PhaseState to_relative(const PhaseState& two_body);

}  // namespace twave
