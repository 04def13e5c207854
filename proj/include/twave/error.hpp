#pragma once

#include <stdexcept>
#include <string>

namespace twave {

enum class ErrorKind {
    RejectedInput,
    DegenerateWaveSpeed,    // mu^2 == lambda_j^2 |v|^2
    SignInconsistency,      // mu^2 - lambda_12^2 |v|^2 < 0 for the relative system
    InadmissibleParameters, // theta1 + theta2 <= 0
    Domain,                 // evaluation at w = 0 or outside the solution interval
    SingularLattice,        // FD stencil reaches the w = 0 hyperplane
    Inapplicable,           // check does not apply (e.g. linear wave with v = 0)
    CollisionSingularity,   // coincident bodies
    CollisionProximity,     // integrator came closer than the abort threshold
    SingularFront,          // gradient requested on the front itself
    NoSpatialFront,         // v = 0: the front is a time instant, not a plane
    NotImplemented,
    Config,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace twave
